#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "linlab/precision.hpp"

namespace linlab {

// Quadratic surd (p + sign*sqrt(d)) / q with integer p, q != 0, d > 0 not a
// perfect square. Normalized so that q divides d - p^2.
struct SurdSpec {
    BigInt p;
    int sign = 1;  // +1 or -1
    BigInt d;
    BigInt q;

    SurdSpec normalized() const;
    Real value(unsigned bits) const;
};

// Growth rules a_{k+1} = f(q_k) for Liouville-type frequencies.
enum class QuotientRule {
    none,
    doubling,        // a_{k+1} = q_k          (log q doubles each step)
    doubling_shift,  // a_{k+1} = q_k + shift  (pushes q_{k+1} past q_k^2 + z q_k + e)
    exp2,            // a_{k+1} = 2^{q_k}      (divergent Brjuno sum)
};

// A rotation-number specification. The stored value is the normalized
// argument alpha itself (alpha in (0,1), lambda = e^{2 pi i alpha}).
class Frequency {
public:
    enum class Kind { surd, quotients, rule };

    static Frequency from_surd(SurdSpec s);
    // Explicit partial quotients, optionally with a periodic tail starting at
    // index `period_start` (period_start == quotients.size() means finite CF).
    static Frequency from_quotients(std::vector<BigInt> quotients,
                                    std::size_t period_start);
    static Frequency from_rule(QuotientRule rule, long shift, BigInt a1);

    // Grammar: surd:P,s,D,Q | cf:[a0;a1,a2,...] with optional (b1,b2,...)
    // periodic tail | rule:doubling | rule:doubling+C | rule:exp2
    static Frequency parse(const std::string& spec);

    Kind kind() const { return kind_; }
    const SurdSpec& surd() const { return surd_; }
    bool is_rational() const;
    std::string spec_string() const;

    // Partial quotient a_k, generating as needed. Throws DomainError past the
    // end of a finite CF or when a rule quotient would exceed the bit budget.
    BigInt quotient(std::size_t k) const;

    // Value of alpha to `bits` of precision.
    Real value(unsigned bits) const;

    // Exact scaling by a positive integer: d * alpha. Identity for d == 1;
    // surds stay surds; quotient/rule forms cannot be scaled exactly.
    Frequency scaled(const BigInt& d) const;

    // Largest partial quotient that can ever appear, when known (periodic
    // surd expansion or explicit periodic tail). Used for Brjuno tail bounds.
    std::optional<BigInt> quotient_bound() const;

private:
    Frequency() = default;

    Kind kind_ = Kind::surd;
    SurdSpec surd_;
    std::vector<BigInt> quotients_;
    std::size_t period_start_ = 0;
    QuotientRule rule_ = QuotientRule::none;
    long rule_shift_ = 0;
    BigInt rule_a1_ = 2;

    mutable std::vector<BigInt> gen_a_;  // generated quotients (lazy)
    mutable std::vector<BigInt> gen_q_;  // denominators alongside
    void generate_to(std::size_t k) const;

    mutable std::optional<BigInt> surd_bound_;  // cached period maximum
};

// Partial quotients with exact big-integer convergents p_k / q_k.
struct ContinuedFraction {
    std::vector<BigInt> a;  // a_0, a_1, ...
    std::vector<BigInt> p;
    std::vector<BigInt> q;
    std::optional<BigInt> quotient_bound;  // bound on all future quotients

    std::size_t depth() const { return a.size(); }
};

// Expands `depth` partial quotients of the frequency and populates the
// convergents via the standard recurrence.
ContinuedFraction expand(const Frequency& freq, std::size_t depth);

// Convergents of an explicit quotient list (seeds p_0 = a_0, q_0 = 1).
void fill_convergents(ContinuedFraction& cf);

// Value of the continued fraction to `bits` of precision. Requires the depth
// to pin the limit down to 2^-(bits+64); throws DomainError otherwise.
// For a finite CF the exact rational value is returned.
Real cf_real_value(const ContinuedFraction& cf, unsigned bits);

}  // namespace linlab
