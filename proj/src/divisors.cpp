#include "linlab/divisors.hpp"

namespace linlab {

namespace {

// ||x|| for x already reduced to [0, 1).
Real dist_to_integer(const Real& frac) {
    if (frac <= Real(0.5)) return frac;
    return 1 - frac;
}

constexpr unsigned kGuardBits = 64;
constexpr unsigned kMaxBits = 1u << 20;

}  // namespace

Real norm_dist(unsigned long l, const Frequency& freq, unsigned bits) {
    if (l < 1) throw DomainError("norm_dist: l must be >= 1");
    if (freq.is_rational())
        throw DomainError("norm_dist: rational frequency rejected");
    // Retry with more precision until the distance clearly exceeds the
    // rounding error of l*alpha, which is below 2^-(work-guard) once alpha
    // carries `work` good bits and l < 2^guard.
    for (unsigned work = bits + kGuardBits; work <= kMaxBits; work *= 2) {
        ScopedPrecision guard(work);
        Real alpha = freq.value(work);
        Real frac = fractional_part(Real(l) * alpha);
        Real d = dist_to_integer(frac);
        Real floor_err = ldexp(Real(1), -static_cast<long>(work - kGuardBits));
        if (d > floor_err) {
            Real::default_precision(digits10_for_bits(bits));
            return Real(d);
        }
    }
    throw PrecisionError("norm_dist: precision exhausted at l=" +
                         std::to_string(l));
}

Real small_divisor(unsigned long l, const Frequency& freq, unsigned bits) {
    // sin(pi*x) with x = ||l alpha|| in (0, 1/2]: no cancellation, the norm
    // distance already carries the delicate subtraction.
    Real d = norm_dist(l, freq, bits + 8);
    ScopedPrecision guard(bits + kGuardBits);
    Real s = sin(pi_value() * d);
    Real out = -4 * s * s;
    Real::default_precision(digits10_for_bits(bits));
    return Real(out);
}

Real norm_dist(const BigInt& l, const Frequency& freq, unsigned bits) {
    if (l < 1) throw DomainError("norm_dist: l must be >= 1");
    if (freq.is_rational())
        throw DomainError("norm_dist: rational frequency rejected");
    unsigned lbits = static_cast<unsigned>(
        mpz_sizeinbase(l.backend().data(), 2));
    for (unsigned work = bits + lbits + kGuardBits; work <= kMaxBits + lbits;
         work *= 2) {
        ScopedPrecision guard(work);
        Real alpha = freq.value(work);
        Real frac = fractional_part(Real(l) * alpha);
        Real d = dist_to_integer(frac);
        Real floor_err =
            ldexp(Real(1), -static_cast<long>(work - lbits - kGuardBits / 2));
        if (d > floor_err) {
            Real::default_precision(digits10_for_bits(bits));
            return Real(d);
        }
    }
    throw PrecisionError("norm_dist: precision exhausted (big index)");
}

Real small_divisor(const BigInt& l, const Frequency& freq, unsigned bits) {
    Real d = norm_dist(l, freq, bits + 8);
    ScopedPrecision guard(bits + kGuardBits);
    Real s = sin(pi_value() * d);
    Real out = -4 * s * s;
    Real::default_precision(digits10_for_bits(bits));
    return Real(out);
}

SmallDivisorTable::SmallDivisorTable(const Frequency& freq, unsigned long n_max,
                                     unsigned bits)
    : freq_(freq), n_max_(n_max), bits_(bits), min_abs_div_(0) {
    if (n_max < 1) throw DomainError("divisor table: n_max must be >= 1");
    if (freq.is_rational())
        throw DomainError("divisor table: rational frequency rejected");
    unsigned work = bits + kGuardBits;
    // Incremental accumulation l*alpha mod 1 loses at most lg(n_max) bits;
    // pad the working precision accordingly.
    unsigned pad = 0;
    while ((1ull << pad) < n_max) ++pad;
    work += pad + 8;
    ScopedPrecision guard(work);
    Real alpha = fractional_part(freq.value(work));
    Real pi = pi_value();
    Real floor_err = ldexp(Real(1), -static_cast<long>(bits + kGuardBits / 2));
    dist_.reserve(n_max);
    div_.reserve(n_max);
    Real acc = 0;
    for (unsigned long l = 1; l <= n_max; ++l) {
        acc += alpha;
        if (acc >= 1) acc -= 1;
        Real d = acc <= Real(0.5) ? acc : Real(1 - acc);
        if (d <= floor_err) {
            // Incremental value too coarse; fall back to the adaptive path.
            d = norm_dist(l, freq, bits);
        }
        Real s = sin(pi * d);
        Real div = -4 * s * s;
        if (min_index_ == 0 || -div < min_abs_div_) {
            min_abs_div_ = -div;
            min_index_ = l;
        }
        dist_.push_back(d);
        div_.push_back(div);
    }
}

}  // namespace linlab
