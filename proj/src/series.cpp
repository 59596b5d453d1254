#include "linlab/series.hpp"

#include <algorithm>

namespace linlab {

namespace {

// Truncated product of two coefficient vectors, orders 0..n.
std::vector<Complex> mul_trunc(const std::vector<Complex>& a,
                               const std::vector<Complex>& b,
                               std::size_t n) {
    std::vector<Complex> out(n + 1);
    for (std::size_t i = 0; i <= n && i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; i + j <= n && j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            out[i + j].add_mul(a[i], b[j]);
        }
    }
    return out;
}

// Quotient a/b to order n; b must have a nonzero constant term.
std::vector<Complex> div_trunc(const std::vector<Complex>& a,
                               const std::vector<Complex>& b,
                               std::size_t n) {
    if (b.empty() || b[0].is_zero())
        throw DomainError("series division by zero constant term");
    std::vector<Complex> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        Complex s = i < a.size() ? a[i] : Complex();
        for (std::size_t j = 1; j <= i && j < b.size(); ++j)
            s -= b[j] * out[i - j];
        out[i] = s / b[0];
    }
    return out;
}

std::vector<Complex> scale(const std::vector<Complex>& a, const Complex& c) {
    std::vector<Complex> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c;
    return out;
}

// a with z replaced by c*z (|c| = 1 in all uses here).
std::vector<Complex> substitute_scaled(const std::vector<Complex>& a,
                                       const Complex& c) {
    std::vector<Complex> out(a.size());
    Complex pw(1l);
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] * pw;
        pw = pw * c;
    }
    return out;
}

std::shared_ptr<NumericalSemigroup> semigroup_for(const TrigPolynomial& poly,
                                                  unsigned long n_max) {
    auto gens = poly.mode_indices();
    std::uint64_t kmax = poly.kappa_top();
    std::uint64_t horizon =
        std::max<std::uint64_t>(n_max + kmax, 4 * kmax * kmax);
    return std::make_shared<NumericalSemigroup>(gens, horizon);
}

}  // namespace

LinearizationSeries linearize(const TrigPolynomial& poly, const Frequency& freq,
                              unsigned long n_max, unsigned bits) {
    if (bits < 53) throw DomainError("linearize: precision must be >= 53 bits");
    if (n_max < poly.kappa0())
        throw DomainError("linearize: n_max below the smallest mode");
    if (freq.is_rational())
        throw DomainError("linearize: rational frequency rejected");

    LinearizationSeries s{poly, freq};
    s.n_max = n_max;
    s.bits = bits;
    s.semigroup = semigroup_for(poly, n_max);
    s.divisors = std::make_shared<SmallDivisorTable>(freq, n_max, bits);

    ScopedPrecision guard(bits);
    const auto& modes = poly.modes();
    s.phi.assign(n_max + 1, Complex());
    s.psi.assign(modes.size(), std::vector<Complex>(n_max + 1));

    std::vector<unsigned long> members;
    for (unsigned long m = 1; m <= n_max; ++m)
        if (s.semigroup->contains(m)) members.push_back(m);

    for (std::size_t i = 0; i < modes.size(); ++i) {
        unsigned long K = modes[i].k;
        if (K <= n_max)
            s.psi[i][K] = Complex::imag_power(static_cast<long>(K) + 1) *
                          modes[i].a;
    }

    for (unsigned long n : members) {
        if (n < poly.kappa0()) continue;
        Complex total;
        for (std::size_t i = 0; i < modes.size(); ++i) {
            unsigned long K = modes[i].k;
            if (n > K) {
                Complex conv;
                for (unsigned long k : members) {
                    if (k > n - K) break;
                    const Complex& tail = s.psi[i][n - k];
                    if (tail.is_zero() || s.phi[k].is_zero()) continue;
                    Complex t = s.phi[k] * Real(k);
                    conv.add_mul(t, tail);
                }
                s.psi[i][n] = conv * (Real(K) / Real(n - K));
            }
            if (n >= K) total += s.psi[i][n];
        }
        const Real& D = s.divisors->divisor(n);
        if (D.is_zero())
            throw PrecisionError("linearize: divisor vanished at n=" +
                                 std::to_string(n));
        s.phi[n] = total / D;
    }
    return s;
}

LinearizationSeries linearize_oracle(const TrigPolynomial& poly,
                                     const Frequency& freq,
                                     unsigned long n_small, unsigned bits) {
    if (n_small > 25)
        throw DomainError("oracle: n_small capped at 25 (exponential cost)");
    if (n_small < poly.kappa0())
        throw DomainError("oracle: n_small below the smallest mode");

    LinearizationSeries s{poly, freq};
    s.n_max = n_small;
    s.bits = bits;
    s.semigroup = semigroup_for(poly, n_small);
    s.divisors = std::make_shared<SmallDivisorTable>(freq, n_small, bits);

    ScopedPrecision guard(bits);
    const auto& modes = poly.modes();
    s.phi.assign(n_small + 1, Complex());
    s.psi.assign(modes.size(), std::vector<Complex>(n_small + 1));

    for (unsigned long l = poly.kappa0(); l <= n_small; ++l) {
        if (!s.semigroup->contains(l)) continue;
        Complex total;
        for (std::size_t i = 0; i < modes.size(); ++i) {
            unsigned long K = modes[i].k;
            if (l < K) continue;
            std::size_t order = l - K;
            // [z^order] e^{K Phi} as a literal sum of powers (K Phi)^p / p!.
            std::vector<Complex> kphi(order + 1);
            for (std::size_t j = 1; j <= order && j < s.phi.size(); ++j)
                kphi[j] = s.phi[j] * Real(K);
            Complex coeff(order == 0 ? 1l : 0l);
            std::vector<Complex> pw(order + 1);
            pw[0] = Complex(1l);
            Real factorial(1);
            for (std::size_t p = 1; p * poly.kappa0() <= order; ++p) {
                pw = mul_trunc(pw, kphi, order);
                factorial *= Real(static_cast<unsigned long>(p));
                coeff += pw[order] / factorial;
            }
            Complex psi_val = Complex::imag_power(static_cast<long>(K) + 1) *
                              modes[i].a * coeff;
            s.psi[i][l] = psi_val;
            total += psi_val;
        }
        s.phi[l] = total / s.divisors->divisor(l);
    }
    return s;
}

std::vector<Complex> exp_series(const std::vector<Complex>& f) {
    if (!f.empty() && !f[0].is_zero())
        throw DomainError("exp_series: nonzero constant term");
    std::size_t n = f.empty() ? 0 : f.size() - 1;
    std::vector<Complex> g(n + 1);
    g[0] = Complex(1l);
    for (std::size_t m = 1; m <= n; ++m) {
        Complex s;
        for (std::size_t k = 1; k <= m; ++k) {
            if (f[k].is_zero()) continue;
            Complex t = f[k] * Real(static_cast<unsigned long>(k));
            s.add_mul(t, g[m - k]);
        }
        g[m] = s / Real(static_cast<unsigned long>(m));
    }
    return g;
}

MajorantSeries majorant_series(const std::vector<std::uint64_t>& modes,
                               unsigned long n_max, unsigned bits) {
    if (modes.empty()) throw DomainError("majorant: no modes");
    std::uint64_t kappa0 = *std::min_element(modes.begin(), modes.end());
    std::uint64_t kmax = *std::max_element(modes.begin(), modes.end());
    if (n_max < kappa0) throw DomainError("majorant: n_max below smallest mode");
    NumericalSemigroup sg(modes,
                          std::max<std::uint64_t>(n_max + kmax, 4 * kmax * kmax));

    ScopedPrecision guard(bits);
    MajorantSeries maj;
    maj.n_max = n_max;
    maj.sigma.assign(n_max + 1, Real(0));
    std::vector<std::vector<Real>> tau(modes.size(),
                                       std::vector<Real>(n_max + 1, Real(0)));
    std::vector<unsigned long> members;
    for (unsigned long m = 1; m <= n_max; ++m)
        if (sg.contains(m)) members.push_back(m);
    for (std::size_t i = 0; i < modes.size(); ++i)
        if (modes[i] <= n_max) tau[i][modes[i]] = 1;

    for (unsigned long n : members) {
        for (std::size_t i = 0; i < modes.size(); ++i) {
            unsigned long K = modes[i];
            if (n > K) {
                Real conv(0);
                for (unsigned long k : members) {
                    if (k > n - K) break;
                    if (tau[i][n - k].is_zero() || maj.sigma[k].is_zero())
                        continue;
                    conv += Real(k) * maj.sigma[k] * tau[i][n - k];
                }
                tau[i][n] = conv * Real(K) / Real(n - K);
            }
            if (n >= K) maj.sigma[n] += tau[i][n];
        }
    }
    maj.radius_estimate = majorant_radius(maj, n_max / 2 + 1, n_max);
    return maj;
}

Real majorant_radius(const MajorantSeries& maj, unsigned long lo,
                     unsigned long hi) {
    if (lo < 1 || hi > maj.n_max || lo > hi)
        throw DomainError("majorant radius: bad window");
    bool have = false;
    Real mx(0);
    for (unsigned long n = lo; n <= hi; ++n) {
        if (maj.sigma[n].is_zero()) continue;
        Real v = log(maj.sigma[n]) / Real(n);
        if (!have || v > mx) mx = v;
        have = true;
    }
    if (!have) throw DomainError("majorant radius: no nonzero terms in window");
    return exp(-mx);
}

RadiusEstimate radius_estimate(const LinearizationSeries& series,
                               unsigned long lo, unsigned long hi,
                               std::size_t min_nonzero) {
    if (lo < series.poly.kappa0() || hi > series.n_max || lo > hi)
        throw DomainError("radius window outside [kappa0, n_max]");
    ScopedPrecision guard(series.bits);
    RadiusEstimate est;
    est.window_lo = lo;
    est.window_hi = hi;
    Real mx(0), mean(0);
    for (unsigned long l = lo; l <= hi; ++l) {
        if (series.phi[l].is_zero()) continue;
        Real v = log(series.phi[l].abs()) / Real(l);
        ++est.nonzero_count;
        est.curve.emplace_back(l, v);
        if (est.nonzero_count == 1 || v > mx) mx = v;
        est.running_max.push_back(mx);
        mean += v;
    }
    if (est.nonzero_count < min_nonzero)
        throw DomainError("radius estimate: too few nonzero coefficients");
    est.rho = exp(-mx);
    est.rho_mean = exp(-mean / Real(static_cast<unsigned long>(est.nonzero_count)));
    return est;
}

ResidualReport residual_check(const LinearizationSeries& series) {
    ScopedPrecision guard(series.bits + 32);
    const unsigned long n_max = series.n_max;
    const unsigned long cap =
        n_max > series.poly.kappa_top() ? n_max - series.poly.kappa_top() : 0;
    ResidualReport rep{Real(0), Real(0), cap};

    // Left side of the functional equation via the exponential recurrence.
    std::vector<Complex> lhs(n_max + 1);
    for (const auto& mode : series.poly.modes()) {
        unsigned long K = mode.k;
        std::vector<Complex> kphi(n_max + 1);
        for (unsigned long j = 1; j <= n_max; ++j)
            kphi[j] = series.phi[j] * Real(K);
        std::vector<Complex> e = exp_series(kphi);
        Complex front = Complex::imag_power(static_cast<long>(K) + 1) * mode.a;
        for (unsigned long n = K; n <= n_max; ++n)
            lhs[n].add_mul(front, e[n - K]);
    }
    for (unsigned long n = 1; n <= cap; ++n) {
        Complex rhs = series.phi[n] * series.divisors->divisor(n);
        Real denom = rhs.abs();
        if (denom < 1) denom = 1;
        Real rel = (lhs[n] - rhs).abs() / denom;
        if (rel > rep.max_relative) rep.max_relative = rel;
    }

    // Conjugacy check: with h(z) = iz e^{Phi(z)}, h2(z) = h(z)/h(lambda^{-1}z)
    // and u(w) = sum_K i a_K w^K, the map identity demands
    //   h * h2 * e^{u(h)} = h(lambda z)   and   h2 * e^{u(h)} = h2(lambda z).
    Real alpha = series.freq.value(series.bits + 64);
    Real ang = 2 * pi_value() * alpha;
    Complex lambda(cos(ang), sin(ang));
    Complex lambda_inv(lambda.re, -lambda.im);

    std::vector<Complex> phi_full(series.phi.begin(), series.phi.end());
    std::vector<Complex> ephi = exp_series(phi_full);
    std::vector<Complex> h(n_max + 1);
    for (unsigned long j = 1; j <= n_max; ++j)
        h[j] = Complex::unit_imag() * ephi[j - 1];

    std::vector<Complex> h_rot = substitute_scaled(h, lambda);
    std::vector<Complex> h_back = substitute_scaled(h, lambda_inv);
    // Both h and h(lambda^{-1}z) vanish at 0; divide out one z first.
    std::vector<Complex> h_shift(h.begin() + 1, h.end());
    std::vector<Complex> hb_shift(h_back.begin() + 1, h_back.end());
    std::vector<Complex> h2 = div_trunc(h_shift, hb_shift, n_max);

    std::vector<Complex> u(n_max + 1);
    {
        std::vector<Complex> pw{Complex(1l)};
        unsigned long reached = 0;
        for (const auto& mode : series.poly.modes()) {
            while (reached < mode.k) {
                pw = mul_trunc(pw, h, n_max);
                ++reached;
            }
            Complex c = Complex::unit_imag() * mode.a;
            for (unsigned long j = 0; j <= n_max; ++j) u[j].add_mul(c, pw[j]);
        }
    }
    std::vector<Complex> eu = exp_series(u);

    std::vector<Complex> comp2 = mul_trunc(h2, eu, n_max);
    std::vector<Complex> comp1 = mul_trunc(h, comp2, n_max);
    std::vector<Complex> h2_rot = substitute_scaled(h2, lambda);

    for (unsigned long n = 0; n <= cap; ++n) {
        Real d1 = h_rot[n].abs();
        if (d1 < 1) d1 = 1;
        Real r1 = (comp1[n] - h_rot[n]).abs() / d1;
        Real d2 = h2_rot[n].abs();
        if (d2 < 1) d2 = 1;
        Real r2 = (comp2[n] - h2_rot[n]).abs() / d2;
        if (r1 > rep.max_relative_conjugacy) rep.max_relative_conjugacy = r1;
        if (r2 > rep.max_relative_conjugacy) rep.max_relative_conjugacy = r2;
    }
    return rep;
}

ArgumentAudit argument_audit(const LinearizationSeries& series,
                             const Real& theta, unsigned long l_max) {
    if (l_max > series.n_max)
        throw DomainError("argument audit: l_max beyond series");
    ScopedPrecision guard(series.bits);
    ArgumentAudit audit{Real(0)};
    Real ray = theta + pi_value() / 2;
    for (unsigned long l = 1; l <= l_max; ++l) {
        Real target = Real(l) * ray;
        if (!series.phi[l].is_zero()) {
            Real dev = angular_distance(series.phi[l].arg(), target);
            ++audit.checked;
            if (dev > audit.max_deviation) {
                audit.max_deviation = dev;
                audit.worst_index = l;
            }
        }
        for (const auto& psi_row : series.psi) {
            if (psi_row[l].is_zero()) continue;
            Real dev = angular_distance(psi_row[l].arg(), target + pi_value());
            ++audit.checked;
            if (dev > audit.max_deviation) {
                audit.max_deviation = dev;
                audit.worst_index = l;
            }
        }
    }
    return audit;
}

}  // namespace linlab
