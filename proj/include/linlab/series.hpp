#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "linlab/divisors.hpp"
#include "linlab/frequency.hpp"
#include "linlab/precision.hpp"
#include "linlab/semigroup.hpp"
#include "linlab/trig_polynomial.hpp"

namespace linlab {

// Coefficients of the formal linearization Phi(z) = sum phi_l z^l together
// with the per-mode partial series psi_{K,l} = D_l-weighted contributions.
struct LinearizationSeries {
    TrigPolynomial poly;
    Frequency freq;
    unsigned long n_max = 0;
    unsigned bits = 0;
    std::shared_ptr<NumericalSemigroup> semigroup;
    std::shared_ptr<SmallDivisorTable> divisors;

    // phi[l] for l = 0..n_max; exact zeros off the semigroup.
    std::vector<Complex> phi;
    // psi[m][l] for the m-th mode of the polynomial.
    std::vector<std::vector<Complex>> psi;

    const Complex& phi_at(unsigned long l) const { return phi.at(l); }
};

// Divisor-free companion series with unit coefficient moduli: sigma_n >= 0
// dominates |phi_n| up to the arithmetic weight (checked in the bound
// audits). radius_estimate is 1/limsup sigma_n^(1/n) over the tail window.
struct MajorantSeries {
    std::vector<Real> sigma;  // sigma[n], n = 0..n_max
    unsigned long n_max = 0;
    Real radius_estimate;
};

// Finite-n proxy for rho = 1/limsup |phi_l|^{1/l}.
struct RadiusEstimate {
    Real rho;       // exp(-max of ln|phi_l|/l over the window)
    Real rho_mean;  // exp(-mean of ln|phi_l|/l), diagnostic
    unsigned long window_lo = 0, window_hi = 0;
    std::size_t nonzero_count = 0;
    // Diagnostics per nonzero index: (l, ln|phi_l|/l) and the running max.
    std::vector<std::pair<unsigned long, Real>> curve;
    std::vector<Real> running_max;
};

// Computes phi and psi by the order-n recurrence
//   (n-K) psi_{K,n} = K sum_{k=1}^{n-1} k phi_k psi_{K,n-k},
//   psi_{K,K} = i^{K+1} a_K,   phi_n = (sum_K psi_{K,n}) / D_n.
// O(N * n_max^2) scalar work; indices off the semigroup are skipped so their
// coefficients are exact zeros.
LinearizationSeries linearize(const TrigPolynomial& poly, const Frequency& freq,
                              unsigned long n_max, unsigned bits);

// Reference implementation by direct expansion of
//   phi_l = (1/D_l) sum_K i^{K+1} a_K [z^{l-K}] e^{K Phi(z)}
// with the exponential expanded as a literal sum of powers Phi^p/p!.
// Exponential cost; capped at n_small <= 25.
LinearizationSeries linearize_oracle(const TrigPolynomial& poly,
                                     const Frequency& freq,
                                     unsigned long n_small, unsigned bits);

// e^f of a truncated series with f[0] = 0, via n g_n = sum k f_k g_{n-k}.
std::vector<Complex> exp_series(const std::vector<Complex>& f);

// The phi recurrence with every a_K replaced by a unit and every divisor by
// one. For modes {1} this is w = z e^w, sigma_n = n^{n-1}/n!.
MajorantSeries majorant_series(const std::vector<std::uint64_t>& modes,
                               unsigned long n_max, unsigned bits);

// Tail-max limsup proxy over window [lo, hi]; requires at least min_nonzero
// nonzero coefficients in the window.
RadiusEstimate radius_estimate(const LinearizationSeries& series,
                               unsigned long lo, unsigned long hi,
                               std::size_t min_nonzero = 10);

// Majorant analogue of radius_estimate (used for the companion radius R).
Real majorant_radius(const MajorantSeries& maj, unsigned long lo,
                     unsigned long hi);

struct ResidualReport {
    Real max_relative;          // functional equation, coefficient-wise
    Real max_relative_conjugacy;  // composition identity for both components
    unsigned long checked_to = 0;
};

// Rebuilds both sides of the functional equation
//   sum_K i a_K (iz)^K e^{K Phi(z)} = Phi(lambda^{-1}z) + Phi(lambda z)
//                                     - 2 Phi(z)
// from the computed phi (left side via exp_series, independently of the
// engine's recurrence) and reports the max relative coefficient deviation.
// Also verifies the conjugacy F(H(z)) = H(lambda z) componentwise with
// h(z) = iz e^{Phi(z)}, h2(z) = h(z)/h(lambda^{-1}z).
ResidualReport residual_check(const LinearizationSeries& series);

struct ArgumentAudit {
    Real max_deviation;  // radians
    unsigned long worst_index = 0;
    std::size_t checked = 0;
};

// Checks arg phi_l = l(theta + pi/2) and arg psi_{K,l} = l(theta+pi/2) + pi
// (mod 2 pi) over all nonzero coefficients up to l_max.
ArgumentAudit argument_audit(const LinearizationSeries& series,
                             const Real& theta, unsigned long l_max);

}  // namespace linlab
