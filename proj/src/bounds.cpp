#include "linlab/bounds.hpp"

#include <algorithm>

namespace linlab {

namespace {

// sum 1/f_j and sum (j+1)/f_j over the Fibonacci numbers f_0 = f_1 = 1,
// with the remainder absorbed by a factor on the last term (f grows at
// least geometrically with ratio 3/2 past j = 2).
void fibonacci_sums(Real& s0, Real& s1) {
    s0 = 0;
    s1 = 0;
    BigInt fa = 1, fb = 1;
    Real cutoff = ldexp(Real(1), -96);
    for (unsigned long j = 0;; ++j) {
        Real term = 1 / Real(fa);
        s0 += term;
        s1 += Real(j + 1) * term;
        if (j > 2 && Real(j + 2) * term < cutoff) {
            s0 += 3 * term;
            s1 += 3 * Real(j + 2) * term;
            break;
        }
        BigInt fc = fa + fb;
        fa = fb;
        fb = fc;
    }
}

Real log_factorial(unsigned long n) {
    Real s(0);
    for (unsigned long i = 2; i <= n; ++i) s += log(Real(i));
    return s;
}

}  // namespace

BrjunoSum brjuno_sum(const ContinuedFraction& cf, std::size_t depth) {
    if (depth < 2) throw DomainError("brjuno sum: depth must be >= 2");
    if (cf.depth() < depth + 1)
        throw DomainError("brjuno sum: continued fraction too shallow");
    BrjunoSum b;
    b.depth = depth;
    b.partial = 0;
    for (std::size_t k = 0; k < depth; ++k)
        b.partial += log(Real(cf.q[k + 1])) / Real(cf.q[k]);
    b.tail_bound = 0;
    if (cf.quotient_bound) {
        // q_{T+j} >= q_T f_j and ln q_{T+j+1} <= ln q_T + (j+1) ln(a_max+1).
        Real s0, s1;
        fibonacci_sums(s0, s1);
        Real lnq = log(Real(cf.q[depth]));
        Real lngrow = log(Real(*cf.quotient_bound + 1));
        b.tail_bound = (lnq * s0 + lngrow * s1) / Real(cf.q[depth]);
        b.tail_certified = true;
    }
    return b;
}

FastSubsequence fast_subsequence(const ContinuedFraction& cf_dalpha,
                                 std::uint64_t n_m, std::uint64_t kappa_max,
                                 std::uint64_t d) {
    if (d == 0 || kappa_max % d != 0)
        throw DomainError("fast subsequence: d must divide kappa_max");
    FastSubsequence sub;
    sub.n_m = n_m;
    sub.kappa_max = kappa_max;
    sub.d = d;
    std::uint64_t kd = kappa_max / d;
    sub.zeta = kd + 3 * kappa_max + 2;
    sub.eta = (kd + 2 * kappa_max) * (kappa_max + 1);
    sub.threshold = std::max<BigInt>(BigInt(n_m) + 2,
                                     BigInt(1) + 2 * kappa_max + kd);

    std::size_t n0 = cf_dalpha.depth();
    for (std::size_t n = 0; n < cf_dalpha.depth(); ++n) {
        if (cf_dalpha.q[n] >= sub.threshold) {
            n0 = n;
            break;
        }
    }
    if (n0 == cf_dalpha.depth())
        throw DomainError("fast subsequence: no qualifying n_0 within depth");
    sub.indices.push_back(n0);
    for (std::size_t n = n0 + 1; n + 1 < cf_dalpha.depth(); ++n) {
        const BigInt& q = cf_dalpha.q[n];
        if (cf_dalpha.q[n + 1] >= q * q + sub.zeta * q + sub.eta)
            sub.indices.push_back(n);
    }
    return sub;
}

LowerBoundF lower_bound_F(const FastSubsequence& sub,
                          const ContinuedFraction& cf_dalpha,
                          const Frequency& alpha, unsigned bits) {
    if (sub.indices.empty())
        throw DomainError("lower bound F: empty subsequence");
    ScopedPrecision guard(bits);
    LowerBoundF f;
    const std::size_t count = sub.indices.size();
    for (std::size_t k = 0; k < count; ++k) {
        BigInt q = cf_dalpha.q[sub.indices[k]];
        BigInt dq = sub.d * q;
        Real divisor = small_divisor(dq, alpha, bits);
        f.log_div.push_back(abs(log(-divisor)));

        std::vector<BigInt> pk(k, 0);
        BigInt rest = dq - sub.kappa_max;
        for (std::size_t i = k; i-- > 0;) {
            BigInt dqi = sub.d * cf_dalpha.q[sub.indices[i]];
            pk[i] = rest / dqi;
            rest -= pk[i] * dqi;
        }
        Real value(0);
        for (std::size_t i = 0; i < k; ++i)
            value += Real(pk[i]) * (f.log_div[i] + f.values[i]);
        f.values.push_back(value);
        f.p.push_back(std::move(pk));
        f.r0.push_back(rest);
        f.ratio.push_back(value / Real(q));
    }
    return f;
}

DavieSets davie_sets(const SmallDivisorTable& table,
                     const ContinuedFraction& cf_dalpha, std::uint64_t d,
                     std::size_t k, std::uint64_t n) {
    if (k + 1 >= cf_dalpha.depth())
        throw DomainError("divisor band: level beyond continued fraction depth");
    if (n > table.n_max())
        throw DomainError("divisor band: n beyond divisor table");
    DavieSets s;
    s.k = k;
    s.dqk = d * cf_dalpha.q[k];
    s.dqk1 = d * cf_dalpha.q[k + 1];
    Real quarter = Real(s.dqk1) / 4;
    s.E = Real(s.dqk) > quarter ? Real(s.dqk) : quarter;
    if (s.dqk > n) return s;
    Real lower = 1 / (6 * Real(cf_dalpha.q[k + 1]));
    Real upper = 1 / (6 * Real(cf_dalpha.q[k]));
    for (std::uint64_t j = static_cast<std::uint64_t>(s.dqk); j <= n; j += d) {
        Real root = sqrt(-table.divisor(j));
        if (root >= lower && root < upper) s.members.push_back(j);
    }
    return s;
}

std::vector<std::uint64_t> davie_g(const DavieSets& sets, std::uint64_t n) {
    std::vector<bool> member(n + 1, false);
    for (std::uint64_t j : sets.members)
        if (j <= n) member[j] = true;
    std::vector<std::uint64_t> g(n + 1, 0);
    for (std::uint64_t m = 1; m <= n; ++m) {
        std::uint64_t best = g[m - 1] + (member[m] ? 1 : 0);
        for (std::uint64_t t = 1; t * 2 <= m; ++t) {
            std::uint64_t v = g[t] + g[m - t];
            if (v > best) best = v;
        }
        g[m] = best;
    }
    return g;
}

std::vector<std::vector<std::uint64_t>> davie_g_tables(
    const SmallDivisorTable& table, const ContinuedFraction& cf_dalpha,
    std::uint64_t d, unsigned long n_max) {
    std::vector<std::vector<std::uint64_t>> out;
    for (std::size_t l = 0; l + 1 < cf_dalpha.depth(); ++l) {
        if (cf_dalpha.q[l] > n_max) break;
        out.push_back(davie_g(davie_sets(table, cf_dalpha, d, l, n_max), n_max));
    }
    return out;
}

ConstantsBundle constants_bundle(const TrigPolynomial& A,
                                 const NumericalSemigroup& sg,
                                 const Real& majorant_radius, unsigned bits) {
    ScopedPrecision guard(bits);
    ConstantsBundle cb;
    // C0 = sum 1/f_k; C1 = ln 2 + sum ln(f_l)/f_l.
    {
        BigInt fa = 1, fb = 1;
        Real c0(0), c1(0);
        Real cutoff = ldexp(Real(1), -96);
        for (unsigned long j = 0;; ++j) {
            Real rf(fa);
            c0 += 1 / rf;
            c1 += log(rf) / rf;
            if (j > 4 && (1 + log(rf)) / rf < cutoff) {
                c0 += 3 / rf;
                c1 += 3 * (1 + log(rf)) / rf;
                break;
            }
            BigInt fc = fa + fb;
            fa = fb;
            fb = fc;
        }
        cb.C0 = c0;
        cb.C1 = log(Real(2)) + c1;
    }

    std::uint64_t kmax = A.kappa_max();
    std::uint64_t d = sg.gcd();
    std::uint64_t kd = kmax / d;
    cb.zeta = kd + 3 * kmax + 2;
    cb.eta = (kd + 2 * kmax) * (kmax + 1);
    cb.C2 = 2 * cb.C1 + cb.C0 * (log(Real(3)) + log(Real(cb.zeta + cb.eta + 1)));
    cb.C2p = cb.C0 * log(Real(2));
    cb.C4 = 2 * cb.C2 + 4 * cb.C1 + 4 * log(Real(2)) * cb.C0;

    Real amin = A.coeff_at_kappa_min().abs();
    Real amax = A.coeff_at_kappa_max().abs();
    Real clip = amin / 4;
    if (clip > 1) clip = 1;
    Real abs_ln_clip = abs(log(clip));
    cb.C_prop = abs_ln_clip +
                Real(2 + 9 * log(Real(4))) / Real(1 + sg.threshold()) + cb.C1 +
                (abs_ln_clip + abs(log(amax)) / Real(d)) * cb.C0;
    cb.C_M = cb.C4 / Real(d) + cb.C_prop;

    cb.R = majorant_radius;
    cb.C_lower_proof = 16 * cb.C1 / Real(d) + 36;
    if (amax > 1) cb.C_lower_proof += log(amax);
    if (cb.R > 1) cb.C_lower_proof += log(cb.R);
    cb.C_lower_stmt = cb.C0;
    if (amax > 1) cb.C_lower_stmt += log(amax);
    return cb;
}

DivisorSumBracket divisor_sum_bracket(const Frequency& alpha,
                                      const ContinuedFraction& cf_dalpha,
                                      const FastSubsequence& sub,
                                      const ConstantsBundle& cb,
                                      unsigned bits) {
    if (sub.indices.empty())
        throw DomainError("divisor sum bracket: empty subsequence");
    ScopedPrecision guard(bits);
    DivisorSumBracket br;
    br.sum = 0;
    for (std::size_t idx : sub.indices) {
        BigInt q = cf_dalpha.q[idx];
        Real divisor = small_divisor(BigInt(sub.d * q), alpha, bits);
        br.sum += abs(log(-divisor)) / (2 * Real(q));
    }
    br.b_partial = brjuno_sum(cf_dalpha, sub.indices.back() + 1).partial;
    br.lower = br.b_partial - cb.C2;
    br.upper = br.b_partial + cb.C2p;
    br.pass = br.sum >= br.lower && br.sum <= br.upper;
    return br;
}

std::optional<Real> hypothesis_theta(const TrigPolynomial& A, unsigned bits,
                                     std::uint64_t* bad_mode) {
    ScopedPrecision guard(bits);
    Real half_pi = pi_value() / 2;
    const auto& m0 = A.modes().front();
    Real tol = ldexp(Real(1), -static_cast<long>(bits / 2));
    // The first mode pins theta only modulo 2 pi / kappa_0; the other modes
    // single out (at most) one of the kappa_0 branches.
    std::uint64_t worst_mode = m0.k;
    for (std::uint64_t branch = 0; branch < m0.k; ++branch) {
        Real theta =
            (m0.a.arg() - half_pi + branch * 2 * pi_value()) / Real(m0.k);
        bool all = true;
        for (const auto& m : A.modes()) {
            Real target = Real(m.k) * theta + half_pi;
            if (angular_distance(m.a.arg(), target) > tol) {
                worst_mode = m.k;
                all = false;
                break;
            }
        }
        if (all) return theta;
    }
    if (bad_mode) *bad_mode = worst_mode;
    return std::nullopt;
}

TheoremBounds theorem_bounds(const BrjunoSum& b_dalpha,
                             const ConstantsBundle& cb, std::uint64_t d,
                             bool hypothesis_holds) {
    TheoremBounds tb;
    tb.b_partial = b_dalpha.partial;
    tb.b_tail = b_dalpha.tail_bound;
    Real two_over_d = Real(2) / Real(d);
    tb.ln_lower =
        -two_over_d * (b_dalpha.partial + b_dalpha.tail_bound) - cb.C_lower_proof;
    tb.has_upper = hypothesis_holds;
    if (hypothesis_holds)
        tb.ln_upper = -two_over_d * b_dalpha.partial + cb.C_M;
    return tb;
}

AuditReport coefficient_bound_audit(const LinearizationSeries& series,
                                    const FastSubsequence& sub,
                                    const ContinuedFraction& cf_dalpha,
                                    const LowerBoundF& f,
                                    const ConstantsBundle& cb) {
    ScopedPrecision guard(series.bits);
    AuditReport rep;
    auto push = [&](std::string lemma, BigInt index, Real lhs, Real rhs) {
        AuditRecord rec{std::move(lemma), std::move(index), lhs, rhs,
                        lhs >= rhs};
        ++rep.checked;
        if (!rec.pass) {
            ++rep.failed;
            rep.pass = false;
        }
        rep.records.push_back(std::move(rec));
    };

    const Real& amin = series.poly.coeff_at_kappa_min().abs();
    Real clip = amin / 4;
    if (clip > 1) clip = 1;
    Real ln_clip = log(clip);
    const std::uint64_t kappa0 = series.poly.kappa0();

    // Per-index crude bound: ln|phi_r| >= (r/kappa0) ln min(1, |a_min|/4).
    for (unsigned long r = 1; r <= series.n_max; ++r) {
        if (series.phi[r].is_zero()) continue;
        push("crude-lower", BigInt(r), log(series.phi[r].abs()),
             Real(r) / Real(kappa0) * ln_clip);
    }

    // Multiples: ln|phi_{pj}| >= -ln p - p ln 4 + p ln|D_j phi_j|.
    for (unsigned long j = kappa0 + 1; j <= series.n_max / 2; ++j) {
        if (series.phi[j].is_zero()) continue;
        Real base = log(-series.divisors->divisor(j)) +
                    log(series.phi[j].abs());
        for (unsigned long p = 2; p * j <= series.n_max; ++p) {
            if (series.phi[p * j].is_zero()) {
                push("power-lower", BigInt(p * j), Real(0), Real(1));
                continue;
            }
            Real rhs = -log(Real(p)) - Real(p) * log(Real(4)) + Real(p) * base;
            push("power-lower", BigInt(p * j), log(series.phi[p * j].abs()),
                 rhs);
        }
    }

    // Subsequence product bound and the F inequality, on indices that fit
    // inside the computed series.
    const Real ln4 = log(Real(4));
    const Real ln_amax = log(series.poly.coeff_at_kappa_max().abs());
    for (std::size_t k = 0; k < sub.indices.size(); ++k) {
        BigInt dq = sub.d * cf_dalpha.q[sub.indices[k]];
        if (dq > series.n_max) break;
        auto idx = static_cast<unsigned long>(dq);
        if (series.phi[idx].is_zero()) {
            push("f-lower", dq, Real(0), Real(1));
            continue;
        }
        Real ln_phi = log(series.phi[idx].abs());
        Real ln_div = log(-series.divisors->divisor(idx));

        if (k >= 1) {
            Real rhs = -ln_div + ln_amax -
                       log_factorial(static_cast<unsigned long>(k) + 1) +
                       Real(f.r0[k]) / Real(kappa0) * ln_clip;
            bool usable = true;
            for (std::size_t i = 0; i < k; ++i) {
                if (f.p[k][i].is_zero()) continue;
                BigInt dqi = sub.d * cf_dalpha.q[sub.indices[i]];
                auto ii = static_cast<unsigned long>(dqi);
                if (series.phi[ii].is_zero()) {
                    usable = false;
                    break;
                }
                Real pi_real(f.p[k][i]);
                rhs += pi_real * (log(-series.divisors->divisor(ii)) +
                                  log(series.phi[ii].abs()) - ln4) -
                       log(pi_real);
            }
            if (usable)
                push("product-lower", dq, ln_phi, rhs);
            else
                push("product-lower", dq, Real(0), Real(1));
        }

        // (1/dq) ln|D phi| >= F/(dq) - C.
        Real dq_real(dq);
        push("f-lower", dq, (ln_div + ln_phi) / dq_real,
             f.values[k] / dq_real - cb.C_prop);
    }
    return rep;
}

UpperBoundAudit upper_bound_audit(
    const LinearizationSeries& series, const MajorantSeries& maj,
    const ContinuedFraction& cf_dalpha,
    const std::vector<std::vector<std::uint64_t>>& g_tables,
    const ConstantsBundle& cb) {
    if (maj.n_max < series.n_max)
        throw DomainError("upper bound audit: majorant shorter than series");
    ScopedPrecision guard(series.bits);
    UpperBoundAudit audit;
    audit.min_margin = 0;

    Real amax = series.poly.coeff_at_kappa_max().abs();
    Real ln_amax = log(amax);
    bool amax_big = amax > 1;

    // Precompute 2 ln q_{l+1} for each usable band level.
    std::vector<Real> two_ln_q;
    for (std::size_t l = 0; l < g_tables.size(); ++l) {
        if (l + 1 >= cf_dalpha.depth())
            throw DomainError("upper bound audit: missing q_{l+1}");
        two_ln_q.push_back(2 * log(Real(cf_dalpha.q[l + 1])));
    }

    for (unsigned long j = series.poly.kappa0(); j <= series.n_max; ++j) {
        if (series.phi[j].is_zero()) continue;
        Real g(36.0 * j);
        if (amax_big) g += Real(j) * ln_amax;
        for (std::size_t l = 0; l < g_tables.size(); ++l) {
            if (cf_dalpha.q[l] > j) break;
            g += Real(g_tables[l][j]) * two_ln_q[l];
        }
        if (maj.sigma[j].is_zero())
            throw DomainError("upper bound audit: majorant support gap");
        Real margin = log(maj.sigma[j]) + g - log(series.phi[j].abs());
        ++audit.checked;
        if (audit.checked == 1 || margin < audit.min_margin) {
            audit.min_margin = margin;
            audit.min_margin_index = j;
        }
        if (margin < 0) audit.pass = false;
    }
    return audit;
}

}  // namespace linlab
