#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linlab/divisors.hpp"
#include "linlab/frequency.hpp"
#include "linlab/precision.hpp"
#include "linlab/semigroup.hpp"
#include "linlab/series.hpp"

namespace linlab {

// Partial Brjuno sum sum_{k<depth} ln(q_{k+1})/q_k of a continued fraction,
// with a rigorous geometric tail bound when all future partial quotients are
// bounded (periodic expansions).
struct BrjunoSum {
    std::size_t depth = 0;
    Real partial;
    Real tail_bound;
    bool tail_certified = false;
};

BrjunoSum brjuno_sum(const ContinuedFraction& cf, std::size_t depth);

// Indices n_0 < n_1 < ... of the continued fraction of d*alpha where the
// denominators grow at least quadratically step-to-step:
//   q_{n_0} >= max(N_M + 2, 1 + kappa_max(2 + 1/d)) > q_{n_0 - 1},
//   q_{n_k + 1} >= q_{n_k}^2 + zeta q_{n_k} + eta   (k >= 1).
struct FastSubsequence {
    std::vector<std::size_t> indices;
    std::uint64_t zeta = 0, eta = 0;
    BigInt threshold;
    std::uint64_t n_m = 0, kappa_max = 0, d = 1;
};

FastSubsequence fast_subsequence(const ContinuedFraction& cf_dalpha,
                                 std::uint64_t n_m, std::uint64_t kappa_max,
                                 std::uint64_t d);

// The recursive lower-bound function on {q_{n_k}}:
//   F(q_{n_0}) = 0,
//   F(q_{n_k}) = sum_{i<k} p_i^k (|ln|D_{d q_{n_i}}|| + F(q_{n_i}))
// with p_i^k, r_0^k from the euclidean division chain on d q_{n_k} - kappa_max.
struct LowerBoundF {
    std::vector<Real> values;            // F(q_{n_k})
    std::vector<std::vector<BigInt>> p;  // p[k][i] for i < k
    std::vector<BigInt> r0;              // final remainders r_0^k
    std::vector<Real> log_div;           // |ln |D_{d q_{n_k}}||
    std::vector<Real> ratio;             // F(q_{n_k}) / q_{n_k}
};

LowerBoundF lower_bound_F(const FastSubsequence& sub,
                          const ContinuedFraction& cf_dalpha,
                          const Frequency& alpha, unsigned bits);

// Divisor band of level k: indices d q_k <= j <= n, divisible by d, with
// 1/(6 q_{k+1}) <= |D_j|^{1/2} < 1/(6 q_k).
struct DavieSets {
    std::size_t k = 0;
    BigInt dqk, dqk1;  // d q_k and d q_{k+1}
    Real E;            // max(d q_k, d q_{k+1} / 4)
    std::vector<std::uint64_t> members;
};

DavieSets davie_sets(const SmallDivisorTable& table,
                     const ContinuedFraction& cf_dalpha, std::uint64_t d,
                     std::size_t k, std::uint64_t n);

// Superadditive counting weight over the band: the pointwise-largest integer
// function with g(0) = 0 that jumps by one at each member and is closed
// under g(m) + g(n-m) <= g(n). Returns g(0..n).
std::vector<std::uint64_t> davie_g(const DavieSets& sets, std::uint64_t n);

// All the named constants of the bound machinery.
struct ConstantsBundle {
    Real C0, C1;          // convergent-sum constants over Fibonacci bounds
    Real C2, C2p;         // bracket constants for the extracted divisor sum
    Real C4;              // F-versus-Brjuno constant
    Real C_prop;          // constant of the coefficient lower-bound recursion
    Real C_M;             // upper-theorem constant, C4/d + C_prop
    Real C_lower_proof;   // lower-theorem constant as derived (uses R)
    Real C_lower_stmt;    // lower-theorem constant as stated (r omitted)
    Real R;               // majorant radius estimate used above
    std::uint64_t zeta = 0, eta = 0;
};

ConstantsBundle constants_bundle(const TrigPolynomial& A,
                                 const NumericalSemigroup& sg,
                                 const Real& majorant_radius, unsigned bits);

// Checks that sum_l |ln|D_{d q_{n_l}}|| / (2 q_{n_l}) over the subsequence
// lies in [B_partial - C2, B_partial + C2p], with B_partial the Brjuno
// partial sum over the covered depth.
struct DivisorSumBracket {
    Real sum;
    Real b_partial;
    Real lower, upper;
    bool pass = false;
};

DivisorSumBracket divisor_sum_bracket(const Frequency& alpha,
                                      const ContinuedFraction& cf_dalpha,
                                      const FastSubsequence& sub,
                                      const ConstantsBundle& cb, unsigned bits);

// theta such that every a_k has argument k*theta + pi/2, or nullopt with the
// first violating mode reported.
std::optional<Real> hypothesis_theta(const TrigPolynomial& A, unsigned bits,
                                     std::uint64_t* bad_mode = nullptr);

// ln rho >= -(2/d) B(d alpha) - C_lower (always) and
// ln rho <= -(2/d) B(d alpha) + C_M (only under the argument hypothesis).
struct TheoremBounds {
    Real ln_lower;
    bool has_upper = false;
    Real ln_upper;
    Real b_partial, b_tail;
};

TheoremBounds theorem_bounds(const BrjunoSum& b_dalpha,
                             const ConstantsBundle& cb, std::uint64_t d,
                             bool hypothesis_holds);

struct AuditRecord {
    std::string lemma;
    BigInt index;
    Real lhs, rhs;   // inequality lhs >= rhs (log scale where noted)
    bool pass = false;
};

struct AuditReport {
    std::vector<AuditRecord> records;
    std::size_t checked = 0;
    std::size_t failed = 0;
    bool pass = true;
};

// Coefficient lower-bound ledger under the argument hypothesis: the crude
// per-index bound, the power-iteration bound at multiples, the subsequence
// product bound, and the F-versus-coefficient inequality.
AuditReport coefficient_bound_audit(const LinearizationSeries& series,
                                    const FastSubsequence& sub,
                                    const ContinuedFraction& cf_dalpha,
                                    const LowerBoundF& f,
                                    const ConstantsBundle& cb);

// |phi_j| <= sigma_j e^{g(j)} for every j <= n_max, with
//   g(j) = sum_{l<=k(j)} 2 g_l(j) ln q_{l+1}
//          + j ln|a_kappa_max| [only if > 1] + 36 j,
// k(j) the largest l with q_l <= j.
struct UpperBoundAudit {
    bool pass = true;
    std::size_t checked = 0;
    Real min_margin;  // min over j of ln sigma_j + g(j) - ln|phi_j|
    std::uint64_t min_margin_index = 0;
};

UpperBoundAudit upper_bound_audit(
    const LinearizationSeries& series, const MajorantSeries& maj,
    const ContinuedFraction& cf_dalpha,
    const std::vector<std::vector<std::uint64_t>>& g_tables,
    const ConstantsBundle& cb);

// Builds the per-level weights g_l for every l with q_l <= n_max, each over
// [0, n_max], from a shared divisor table.
std::vector<std::vector<std::uint64_t>> davie_g_tables(
    const SmallDivisorTable& table, const ContinuedFraction& cf_dalpha,
    std::uint64_t d, unsigned long n_max);

}  // namespace linlab
