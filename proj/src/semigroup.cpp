#include "linlab/semigroup.hpp"

#include <algorithm>
#include <numeric>

namespace linlab {

namespace {

std::vector<bool> membership_table(const std::vector<std::uint64_t>& gens,
                                   std::uint64_t horizon) {
    std::vector<bool> member(horizon + 1, false);
    for (std::uint64_t g : gens)
        if (g <= horizon) member[g] = true;
    for (std::uint64_t m = 1; m <= horizon; ++m) {
        if (member[m]) continue;
        for (std::uint64_t g : gens) {
            if (g < m && member[m - g]) {
                member[m] = true;
                break;
            }
        }
    }
    return member;
}

}  // namespace

NumericalSemigroup::NumericalSemigroup(std::vector<std::uint64_t> generators,
                                       std::uint64_t horizon)
    : gens_(std::move(generators)) {
    if (gens_.empty()) throw DomainError("semigroup: empty generator set");
    if (gens_.size() > 32) throw DomainError("semigroup: more than 32 generators");
    std::sort(gens_.begin(), gens_.end());
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i] < 1) throw DomainError("semigroup: generators must be >= 1");
        if (i > 0 && gens_[i] == gens_[i - 1])
            throw DomainError("semigroup: duplicate generator");
    }
    d_ = gens_[0];
    for (std::uint64_t g : gens_) d_ = std::gcd(d_, g);

    std::uint64_t kmax = gens_.back();
    horizon_ = horizon ? horizon : std::max<std::uint64_t>(4 * kmax * kmax / d_,
                                                           2 * kmax);
    // The threshold scan below needs every d-multiple in the last window of
    // length kappa_0 to be a member; extend the horizon until that holds.
    for (;;) {
        member_ = membership_table(gens_, horizon_);
        bool tail_full = true;
        for (std::uint64_t m = horizon_ - gens_[0] + 1; m <= horizon_; ++m)
            if (m % d_ == 0 && !member_[m]) tail_full = false;
        if (tail_full) break;
        horizon_ *= 2;
    }

    // Smallest threshold past which every d-multiple is a member: one past
    // the largest non-member multiple of d (or d itself if there is none).
    threshold_ = d_;
    for (std::uint64_t m = horizon_; m >= d_; --m) {
        if (m % d_ == 0 && !member_[m]) {
            threshold_ = m + d_;
            break;
        }
        if (m == d_) break;
    }

    // Coarse bound from iterating the full generator sum kappa_0/d times.
    std::uint64_t sum = std::accumulate(gens_.begin(), gens_.end(),
                                        std::uint64_t{0});
    threshold_coarse_ = (gens_[0] / d_) * sum;
    if (threshold_coarse_ < threshold_) threshold_coarse_ = threshold_;
}

bool NumericalSemigroup::contains(std::uint64_t m) const {
    if (m == 0) return false;
    if (m <= horizon_) return member_[m];
    return m % d_ == 0;  // past the horizon the threshold rule applies
}

std::vector<std::uint64_t> NumericalSemigroup::decompose(std::uint64_t m) const {
    if (!contains(m)) throw DomainError("decompose: not a member");
    std::vector<std::uint64_t> coeff(gens_.size(), 0);
    // Greedy from the largest generator down, backtracking on dead ends;
    // the first solution found is the lexicographically largest in the
    // reversed coefficient order, hence deterministic.
    std::vector<std::uint64_t> best;
    auto rec = [&](auto&& self, std::size_t idx, std::uint64_t rest) -> bool {
        if (rest == 0) {
            for (std::uint64_t c : coeff)
                if (c > 0) return true;
            return false;  // the all-zero decomposition is not allowed
        }
        if (idx == gens_.size()) return false;
        std::size_t gi = gens_.size() - 1 - idx;
        std::uint64_t g = gens_[gi];
        for (std::uint64_t p = rest / g + 1; p-- > 0;) {
            coeff[gi] = p;
            if (self(self, idx + 1, rest - p * g)) return true;
        }
        coeff[gi] = 0;
        return false;
    };
    if (!rec(rec, 0, m)) throw DomainError("decompose: not a member");
    return coeff;
}

NumericalSemigroup::ClosureReport
NumericalSemigroup::difference_closure_check(std::uint64_t horizon) const {
    if (horizon > horizon_)
        throw DomainError("closure check: horizon beyond membership table");
    ClosureReport rep;
    for (std::uint64_t a = 1; a <= horizon; ++a) {
        if (!member_[a]) continue;
        for (std::uint64_t b = 1; b < a; ++b) {
            if (!member_[b]) continue;
            std::uint64_t diff = a - b;
            if (diff < threshold_) continue;
            ++rep.pairs_checked;
            if (!contains(diff)) {
                rep.pass = false;
                rep.bad_a = a;
                rep.bad_b = b;
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace linlab
