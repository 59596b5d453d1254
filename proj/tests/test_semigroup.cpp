#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "linlab/semigroup.hpp"

using namespace linlab;

namespace {

// Independent membership oracle: straightforward DP over the generators.
std::vector<bool> brute_force(const std::vector<std::uint64_t>& gens,
                              std::uint64_t up_to) {
    std::vector<bool> in(up_to + 1, false);
    for (std::uint64_t g : gens)
        if (g <= up_to) in[g] = true;
    for (std::uint64_t m = 1; m <= up_to; ++m)
        for (std::uint64_t g : gens)
            if (g < m && in[m - g]) in[m] = true;
    return in;
}

}  // namespace

TEST_CASE("generators {3,5}") {
    NumericalSemigroup sg({3, 5});
    CHECK(sg.gcd() == 1);
    CHECK(sg.threshold() == 8);
    auto oracle = brute_force({3, 5}, 500);
    for (std::uint64_t m = 1; m <= 500; ++m)
        CHECK(sg.contains(m) == oracle[m]);
    CHECK_FALSE(sg.contains(7));  // Frobenius number
    CHECK(sg.contains(8));
}

TEST_CASE("generators {4,6}") {
    NumericalSemigroup sg({4, 6});
    CHECK(sg.gcd() == 2);
    CHECK(sg.threshold() == 4);
    auto oracle = brute_force({4, 6}, 500);
    for (std::uint64_t m = 1; m <= 500; ++m)
        CHECK(sg.contains(m) == oracle[m]);
    CHECK_FALSE(sg.contains(2));
    CHECK_FALSE(sg.contains(5));
    CHECK(sg.contains(498));
}

TEST_CASE("degenerate generator sets") {
    NumericalSemigroup one({1});
    CHECK(one.threshold() == 1);
    for (std::uint64_t m = 1; m <= 100; ++m) CHECK(one.contains(m));
    CHECK_FALSE(one.contains(0));

    NumericalSemigroup two({2});
    CHECK(two.gcd() == 2);
    CHECK(two.threshold() == 2);
    CHECK(two.contains(2));
    CHECK_FALSE(two.contains(3));

    NumericalSemigroup wide({7, 11});
    auto oracle = brute_force({7, 11}, 200);
    for (std::uint64_t m = 1; m <= 200; ++m)
        CHECK(wide.contains(m) == oracle[m]);
    CHECK(wide.threshold() == 60);  // Frobenius 7*11-7-11 = 59
}

TEST_CASE("membership far past the horizon") {
    NumericalSemigroup sg({4, 6});
    CHECK(sg.contains(10'000'000));     // even, huge
    CHECK_FALSE(sg.contains(10'000'001));  // odd
    NumericalSemigroup sg2({3, 5});
    CHECK(sg2.contains(123'456'789));
}

TEST_CASE("decompositions reproduce their input") {
    NumericalSemigroup sg({3, 5});
    CHECK(sg.decompose(8) == std::vector<std::uint64_t>{1, 1});
    CHECK(sg.decompose(3) == std::vector<std::uint64_t>{1, 0});
    CHECK(sg.decompose(5) == std::vector<std::uint64_t>{0, 1});
    CHECK_THROWS_AS(sg.decompose(7), DomainError);
    CHECK_THROWS_AS(sg.decompose(0), DomainError);
    for (std::uint64_t m = 3; m <= 400; ++m) {
        if (!sg.contains(m)) continue;
        auto p = sg.decompose(m);
        REQUIRE(p.size() == 2);
        CHECK(p[0] * 3 + p[1] * 5 == m);
    }
}

TEST_CASE("coarse threshold dominates the exact one") {
    for (auto gens : {std::vector<std::uint64_t>{3, 5},
                      std::vector<std::uint64_t>{4, 6},
                      std::vector<std::uint64_t>{5, 7, 9}}) {
        NumericalSemigroup sg(gens);
        CHECK(sg.threshold_coarse() >= sg.threshold());
        // Everything at or past the coarse threshold (and divisible by d)
        // must indeed be a member.
        for (std::uint64_t m = sg.threshold_coarse();
             m < sg.threshold_coarse() + 50; ++m)
            if (m % sg.gcd() == 0) CHECK(sg.contains(m));
    }
}

TEST_CASE("difference closure") {
    for (auto gens : {std::vector<std::uint64_t>{3, 5},
                      std::vector<std::uint64_t>{4, 6},
                      std::vector<std::uint64_t>{7, 11}}) {
        auto report =
            NumericalSemigroup(gens, 1000).difference_closure_check(500);
        CHECK(report.pass);
        CHECK(report.pairs_checked > 0);
    }
}

TEST_CASE("invalid generator lists are rejected") {
    CHECK_THROWS_AS(NumericalSemigroup({}), DomainError);
    CHECK_THROWS_AS(NumericalSemigroup({0, 3}), DomainError);
    CHECK_THROWS_AS(NumericalSemigroup({3, 3}), DomainError);
}
