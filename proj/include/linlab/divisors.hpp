#pragma once

#include <vector>

#include "linlab/frequency.hpp"
#include "linlab/precision.hpp"

namespace linlab {

// Distance from l*alpha to the nearest integer, in (0, 1/2]. Computed with
// guard bits beyond `bits`; if the result cannot be separated from zero the
// precision is raised and the computation retried, up to a hard cap.
Real norm_dist(unsigned long l, const Frequency& freq, unsigned bits);

// D_l = -4 sin^2(pi * l * alpha), always in [-4, 0) for irrational alpha.
Real small_divisor(unsigned long l, const Frequency& freq, unsigned bits);

// Big-integer index variants for indices past 2^64 (subsequence denominators
// grow doubly exponentially). Working precision scales with the bit length
// of l so the reduction mod 1 keeps `bits` good bits.
Real norm_dist(const BigInt& l, const Frequency& freq, unsigned bits);
Real small_divisor(const BigInt& l, const Frequency& freq, unsigned bits);

// Precomputed ||l alpha|| and D_l for l = 1..n_max. A single high-precision
// value of alpha is folded mod 1 incrementally, so building the table costs
// one multiplication per index.
class SmallDivisorTable {
public:
    SmallDivisorTable(const Frequency& freq, unsigned long n_max, unsigned bits);

    unsigned long n_max() const { return n_max_; }
    unsigned bits() const { return bits_; }
    const Frequency& frequency() const { return freq_; }

    // 1-based index l.
    const Real& dist(unsigned long l) const { return dist_.at(l - 1); }
    const Real& divisor(unsigned long l) const { return div_.at(l - 1); }

    // Smallest |D_l| in the table: reported so callers can judge whether the
    // working precision was adequate.
    const Real& min_abs_divisor() const { return min_abs_div_; }
    unsigned long min_abs_divisor_index() const { return min_index_; }

private:
    Frequency freq_;
    unsigned long n_max_;
    unsigned bits_;
    std::vector<Real> dist_;
    std::vector<Real> div_;
    Real min_abs_div_;
    unsigned long min_index_ = 0;
};

}  // namespace linlab
