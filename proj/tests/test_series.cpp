#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linlab/series.hpp"

using namespace linlab;

namespace {

Real rel_err(const Complex& got, const Complex& want) {
    Real scale = want.abs();
    if (scale.is_zero()) return got.abs();
    return (got - want).abs() / scale;
}

Frequency golden() { return Frequency::parse("surd:-1,+1,5,2"); }

}  // namespace

TEST_CASE("engine matches the direct-expansion oracle") {
    const unsigned bits = 256;
    Real tol = ldexp(Real(1), -70);
    SUBCASE("single mode, golden frequency") {
        TrigPolynomial poly = TrigPolynomial::parse("1:0+1i", bits);
        auto fast = linearize(poly, golden(), 12, bits);
        auto slow = linearize_oracle(poly, golden(), 12, bits);
        for (unsigned long l = 1; l <= 12; ++l)
            CHECK(rel_err(fast.phi[l], slow.phi[l]) < tol);
    }
    SUBCASE("modes {3,5}, sqrt(2)-1") {
        Frequency f = Frequency::parse("surd:-1,+1,2,1");
        TrigPolynomial poly = TrigPolynomial::parse("3:0+1i,5:2+0.5i", bits);
        auto fast = linearize(poly, f, 16, bits);
        auto slow = linearize_oracle(poly, f, 16, bits);
        for (unsigned long l = 1; l <= 16; ++l)
            CHECK(rel_err(fast.phi[l], slow.phi[l]) < tol);
    }
}

TEST_CASE("first coefficient of the single-mode map is explicit") {
    // psi_{1,1} = i^2 a_1 = -i a_1... for a_1 = i: psi = i^2 * i = -i,
    // phi_1 = -i / D_1.
    const unsigned bits = 192;
    ScopedPrecision guard(bits);
    TrigPolynomial poly = TrigPolynomial::parse("1:0+1i", bits);
    auto s = linearize(poly, golden(), 4, bits);
    Real d1 = s.divisors->divisor(1);
    CHECK(abs(s.phi[1].re) < ldexp(Real(1), -150));
    CHECK(abs(s.phi[1].im - (-1 / d1)) < ldexp(Real(1), -150) * abs(1 / d1));
}

TEST_CASE("exponential series inverse identity") {
    const unsigned bits = 192;
    ScopedPrecision guard(bits);
    const std::size_t n = 40;
    std::vector<Complex> f(n + 1);
    for (std::size_t k = 1; k <= n; ++k)
        f[k] = Complex(Real(1) / Real(k * k + 1), Real(k % 5) / 7);
    auto g = exp_series(f);
    std::vector<Complex> mf(n + 1);
    for (std::size_t k = 0; k <= n; ++k) mf[k] = -f[k];
    auto h = exp_series(mf);
    // Convolution g*h must be the constant series 1.
    for (std::size_t m = 0; m <= n; ++m) {
        Complex conv;
        for (std::size_t k = 0; k <= m; ++k) conv.add_mul(g[k], h[m - k]);
        Real want = m == 0 ? 1 : 0;
        CHECK(abs(conv.re - want) < ldexp(Real(1), -150));
        CHECK(abs(conv.im) < ldexp(Real(1), -150));
    }
}

TEST_CASE("support laws give exact zeros") {
    const unsigned bits = 128;
    SUBCASE("monomial of order 4") {
        TrigPolynomial poly = TrigPolynomial::parse("4:1+2i", bits);
        auto s = linearize(poly, golden(), 200, bits);
        for (unsigned long l = 1; l <= 200; ++l) {
            if (l % 4 == 0)
                CHECK_FALSE(s.phi[l].is_zero());
            else
                CHECK(s.phi[l].is_zero());  // exact, not just small
        }
    }
    SUBCASE("modes {3,5}") {
        TrigPolynomial poly = TrigPolynomial::parse("3:0+1i,5:0+1i", bits);
        auto s = linearize(poly, golden(), 200, bits);
        NumericalSemigroup sg({3, 5});
        for (unsigned long l = 1; l <= 200; ++l)
            CHECK(s.phi[l].is_zero() == !sg.contains(l));
    }
}

TEST_CASE("majorant closed form for the single-mode map") {
    // w = z e^w gives sigma_n = n^{n-1}/n!.
    const unsigned bits = 192;
    ScopedPrecision guard(bits);
    auto maj = majorant_series({1}, 30, bits);
    Real fact(1);
    for (unsigned long n = 1; n <= 30; ++n) {
        fact *= n;
        Real want = pow(Real(n), static_cast<int>(n) - 1) / fact;
        CHECK(abs(maj.sigma[n] - want) < ldexp(Real(1), -150) * want);
    }
}

TEST_CASE("majorant radius approaches 1/e") {
    const unsigned bits = 128;
    ScopedPrecision guard(bits);
    auto maj = majorant_series({1}, 400, bits);
    Real inv_e = exp(Real(-1));
    CHECK(abs(maj.radius_estimate - inv_e) < Real(1) / 50);
    CHECK(abs(majorant_radius(maj, 350, 400) - inv_e) < Real(1) / 50);
}

TEST_CASE("residual check on a correct series") {
    const unsigned bits = 256;
    ScopedPrecision guard(bits);
    TrigPolynomial poly = TrigPolynomial::parse("1:0+1i", bits);
    auto s = linearize(poly, golden(), 80, bits);
    auto res = residual_check(s);
    Real tol = ldexp(Real(1), -120);
    CHECK(res.max_relative < tol);
    CHECK(res.max_relative_conjugacy < tol);
    CHECK(res.checked_to > 70);
}

TEST_CASE("residual check flags a perturbed coefficient") {
    const unsigned bits = 256;
    ScopedPrecision guard(bits);
    TrigPolynomial poly = TrigPolynomial::parse("1:0+1i", bits);
    auto s = linearize(poly, golden(), 40, bits);
    s.phi[17] = s.phi[17] * Real(Real(11) / 10);  // 10% error at order 17
    auto res = residual_check(s);
    CHECK(res.max_relative > Real(1) / 1000);
}

TEST_CASE("argument rigidity of the coefficients") {
    const unsigned bits = 256;
    ScopedPrecision guard(bits);
    SUBCASE("purely imaginary coefficients mean theta = 0") {
        TrigPolynomial poly = TrigPolynomial::parse("1:0+1i", bits);
        auto s = linearize(poly, golden(), 60, bits);
        auto audit = argument_audit(s, Real(0), 60);
        CHECK(audit.max_deviation < ldexp(Real(1), -120));
        CHECK(audit.checked > 0);
    }
    SUBCASE("monomials are rigid for the induced theta") {
        TrigPolynomial poly = TrigPolynomial::parse("4:2+3i", bits);
        auto s = linearize(poly, golden(), 60, bits);
        Real theta = (poly.modes()[0].a.arg() - pi_value() / 2) / 4;
        auto audit = argument_audit(s, theta, 60);
        CHECK(audit.max_deviation < ldexp(Real(1), -120));
    }
    SUBCASE("a misaligned mode breaks rigidity") {
        TrigPolynomial poly = TrigPolynomial::parse("1:0+1i,2:1+1i", bits);
        auto s = linearize(poly, golden(), 20, bits);
        auto audit = argument_audit(s, Real(0), 20);
        CHECK(audit.max_deviation > Real(1) / 10);
    }
}

TEST_CASE("radius estimate basics") {
    const unsigned bits = 192;
    ScopedPrecision guard(bits);
    TrigPolynomial poly = TrigPolynomial::parse("1:0+1i", bits);
    auto s = linearize(poly, golden(), 120, bits);
    auto est = radius_estimate(s, 60, 120);
    CHECK(est.rho > 0);
    CHECK(est.rho < 1);
    CHECK(est.nonzero_count >= 10);
    CHECK(est.curve.size() == est.nonzero_count);
    // The max-based estimate cannot exceed the mean-based one.
    CHECK(est.rho <= est.rho_mean);
    CHECK_THROWS_AS(radius_estimate(s, 118, 120), DomainError);
}

TEST_CASE("series rejects bad inputs") {
    const unsigned bits = 128;
    TrigPolynomial poly = TrigPolynomial::parse("1:0+1i", bits);
    Frequency rational = Frequency::parse("cf:[0;2,2]");
    CHECK_THROWS_AS(linearize(poly, rational, 10, bits), DomainError);
    CHECK_THROWS_AS(TrigPolynomial::parse("", bits), DomainError);
    CHECK_THROWS_AS(TrigPolynomial::parse("0:1+0i", bits), DomainError);
    CHECK_THROWS_AS(TrigPolynomial::parse("3:0+0i", bits), DomainError);
}
