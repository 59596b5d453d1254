#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linlab/precision.hpp"

namespace linlab {

// Additive semigroup generated by the mode indices kappa_0 < ... < kappa_N:
// all sums sum p_i kappa_i with p_i >= 0, not all zero.
class NumericalSemigroup {
public:
    // Generators must be distinct positive integers; at most 32 of them.
    // horizon = 0 picks the default 4*max^2/gcd.
    explicit NumericalSemigroup(std::vector<std::uint64_t> generators,
                                std::uint64_t horizon = 0);

    const std::vector<std::uint64_t>& generators() const { return gens_; }
    std::uint64_t gcd() const { return d_; }

    // Smallest threshold such that every multiple of d that is >= threshold
    // is a member. Equals 1 when the smallest generator is 1.
    std::uint64_t threshold() const { return threshold_; }

    // Non-minimal threshold from iterating the generator sum: p * (sum of
    // generators) with p = (smallest generator)/d steps covers all residues.
    std::uint64_t threshold_coarse() const { return threshold_coarse_; }

    std::uint64_t horizon() const { return horizon_; }

    // Membership; indices past the horizon are answered via the threshold.
    bool contains(std::uint64_t m) const;

    // One decomposition m = sum p_i * gens_[i], deterministic: greedy from
    // the largest generator down. Throws DomainError for non-members.
    std::vector<std::uint64_t> decompose(std::uint64_t m) const;

    struct ClosureReport {
        std::uint64_t pairs_checked = 0;
        bool pass = true;
        std::uint64_t bad_a = 0, bad_b = 0;  // first counterexample, if any
    };

    // Checks that a - b is a member whenever a, b are members with
    // a - b >= threshold, for all member pairs up to `horizon`.
    ClosureReport difference_closure_check(std::uint64_t horizon) const;

private:
    std::vector<std::uint64_t> gens_;
    std::uint64_t d_ = 1;
    std::uint64_t threshold_ = 1;
    std::uint64_t threshold_coarse_ = 1;
    std::uint64_t horizon_ = 0;
    std::vector<bool> member_;  // index m -> m in M, for m <= horizon_
};

}  // namespace linlab
