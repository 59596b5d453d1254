#include "linlab/frequency.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace linlab {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    BigInt r = a % b;
    if (!r.is_zero() && ((r < 0) != (b < 0))) q -= 1;
    return q;
}

bool is_perfect_square(const BigInt& d, BigInt* root = nullptr) {
    if (d < 0) return false;
    BigInt r = sqrt(d);
    if (root) *root = r;
    return r * r == d;
}

// Largest integer a with a <= (m + sqrt(d)) / q, for irrational sqrt(d).
BigInt exact_floor(const BigInt& m, const BigInt& d, const BigInt& q,
                   const BigInt& sqrt_floor) {
    auto le = [&](const BigInt& a) {
        BigInt t = a * q - m;
        if (q > 0) return t <= 0 || t * t <= d;
        return t >= 0 && t * t >= d;
    };
    BigInt a = floor_div(m + sqrt_floor, q);
    while (!le(a)) a -= 1;
    while (le(a + 1)) a += 1;
    return a;
}

}  // namespace

SurdSpec SurdSpec::normalized() const {
    if (q.is_zero()) throw DomainError("surd: zero denominator");
    if (sign != 1 && sign != -1) throw DomainError("surd: sign must be +-1");
    if (is_perfect_square(d))
        throw DomainError("surd: radicand is a perfect square (rational value)");
    SurdSpec s = *this;
    if ((s.d - s.p * s.p) % s.q != 0) {
        BigInt aq = abs(s.q);
        s.p *= aq;
        s.d *= aq * aq;
        s.q *= aq;
    }
    return s;
}

Real SurdSpec::value(unsigned bits) const {
    ScopedPrecision guard(bits + 64);
    Real r = sqrt(Real(d));
    if (sign < 0) r = -r;
    return (Real(p) + r) / Real(q);
}

Frequency Frequency::from_surd(SurdSpec s) {
    Frequency f;
    f.kind_ = Kind::surd;
    f.surd_ = s.normalized();
    return f;
}

Frequency Frequency::from_quotients(std::vector<BigInt> quotients,
                                    std::size_t period_start) {
    if (quotients.empty()) throw DomainError("cf: empty quotient list");
    if (quotients[0] < 0) throw DomainError("cf: a0 must be >= 0");
    for (std::size_t i = 1; i < quotients.size(); ++i)
        if (quotients[i] <= 0) throw DomainError("cf: quotients must be positive");
    if (period_start > quotients.size())
        throw DomainError("cf: period start out of range");
    Frequency f;
    f.kind_ = Kind::quotients;
    f.quotients_ = std::move(quotients);
    f.period_start_ = period_start;
    return f;
}

Frequency Frequency::from_rule(QuotientRule rule, long shift, BigInt a1) {
    if (rule == QuotientRule::none) throw DomainError("rule: none");
    if (a1 <= 0) throw DomainError("rule: seed quotient must be positive");
    Frequency f;
    f.kind_ = Kind::rule;
    f.rule_ = rule;
    f.rule_shift_ = shift;
    f.rule_a1_ = std::move(a1);
    return f;
}

bool Frequency::is_rational() const {
    return kind_ == Kind::quotients && period_start_ == quotients_.size();
}

BigInt Frequency::quotient(std::size_t k) const {
    switch (kind_) {
        case Kind::surd:
        case Kind::rule:
            generate_to(k);
            return gen_a_[k];
        case Kind::quotients: {
            if (k < quotients_.size()) return quotients_[k];
            if (is_rational())
                throw DomainError("cf: quotient index past end of finite expansion");
            std::size_t len = quotients_.size() - period_start_;
            return quotients_[period_start_ + (k - period_start_) % len];
        }
    }
    throw DomainError("unreachable");
}

void Frequency::generate_to(std::size_t k) const {
    if (gen_a_.size() > k) return;
    if (kind_ == Kind::surd) {
        // Exact surd recurrence on states (m, q) with q | d - m^2.
        // (p + s*sqrt(d))/q == (s*p + sqrt(d))/(s*q).
        BigInt d = surd_.d;
        BigInt m = surd_.sign > 0 ? surd_.p : -surd_.p;
        BigInt q = surd_.sign > 0 ? surd_.q : -surd_.q;
        BigInt root = sqrt(d);
        std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
        std::vector<BigInt> a;
        std::optional<BigInt> bound;
        for (std::size_t i = 0; i <= k + 2 || !bound; ++i) {
            if (i > 100000)
                throw DomainError("surd: period not found within iteration cap");
            if (i > 0) {
                auto state = std::make_pair(m, q);
                auto it = seen.find(state);
                if (it != seen.end() && !bound) {
                    BigInt mx = 0;
                    for (std::size_t j = it->second; j < i; ++j)
                        mx = std::max(mx, a[j]);
                    bound = mx;
                    if (i > k + 2) break;
                } else if (it == seen.end()) {
                    seen.emplace(state, i);
                }
            }
            BigInt ai = exact_floor(m, d, q, root);
            a.push_back(ai);
            m = ai * q - m;
            q = (d - m * m) / q;
            if (q.is_zero()) throw DomainError("surd: rational value");
        }
        gen_a_ = std::move(a);
        surd_bound_ = bound;
        return;
    }
    // Rule-based generation: a_0 = 0, a_1 = seed, a_{k+1} = f(q_k).
    if (gen_a_.empty()) {
        gen_a_ = {BigInt(0), rule_a1_};
        gen_q_ = {BigInt(1), rule_a1_};
    }
    while (gen_a_.size() <= k) {
        std::size_t n = gen_a_.size();
        const BigInt& qprev = gen_q_[n - 1];
        BigInt next;
        // Denominators square at every level, so their bit length doubles;
        // cap it before a deep expansion exhausts memory.
        if (mpz_sizeinbase(qprev.backend().data(), 2) > 1000000)
            throw DomainError("rule: quotient exceeds bit budget");
        switch (rule_) {
            case QuotientRule::doubling: next = qprev; break;
            case QuotientRule::doubling_shift: next = qprev + rule_shift_; break;
            case QuotientRule::exp2: {
                if (qprev > 1000000)
                    throw DomainError("rule: quotient exceeds bit budget");
                next = BigInt(1) << static_cast<unsigned long>(qprev);
                break;
            }
            default: throw DomainError("rule: none");
        }
        gen_a_.push_back(next);
        gen_q_.push_back(next * gen_q_[n - 1] + gen_q_[n - 2]);
    }
}

std::optional<BigInt> Frequency::quotient_bound() const {
    switch (kind_) {
        case Kind::surd:
            generate_to(0);
            return surd_bound_;
        case Kind::quotients: {
            if (is_rational()) return std::nullopt;
            BigInt mx = 0;
            for (const auto& a : quotients_) mx = std::max(mx, a);
            return mx;
        }
        case Kind::rule:
            return std::nullopt;
    }
    return std::nullopt;
}

Real Frequency::value(unsigned bits) const {
    if (kind_ == Kind::surd) return surd_.value(bits);
    // Expand until the convergent interval is below the target.
    BigInt target = BigInt(1) << (bits + 64);
    std::size_t depth = 8;
    for (;;) {
        ContinuedFraction cf;
        try {
            cf = expand(*this, depth);
        } catch (const DomainError&) {
            // The exp2 rule ran into its quotient bit budget: take the
            // deepest expansion that fits. The quotient that was refused is
            // 2^{q_last} with q_last > 10^6, so the last convergent is
            // within 2^{-10^6} of alpha -- effectively exact here.
            std::size_t deepest = depth;
            while (deepest > 2) {
                --deepest;
                try {
                    cf = expand(*this, deepest);
                    break;
                } catch (const DomainError&) {
                }
            }
            std::size_t n = cf.depth();
            if (n < 2 || bits + 64 > 1000000)
                throw PrecisionError(
                    "frequency value: quotient budget exhausted before "
                    "reaching requested precision");
            ScopedPrecision prec_guard(bits + 96);
            return Real(cf.p[n - 1]) / Real(cf.q[n - 1]);
        }
        std::size_t n = cf.depth();
        if (n >= 2 && cf.q[n - 1] * cf.q[n - 2] >= target)
            return cf_real_value(cf, bits);
        if (n < depth) {  // finite CF exhausted: exact rational
            return cf_real_value(cf, bits);
        }
        depth *= 2;
        if (depth > 1u << 20)
            throw PrecisionError("frequency value: cannot reach requested precision");
    }
}

Frequency Frequency::scaled(const BigInt& d) const {
    if (d < 1) throw DomainError("scale factor must be >= 1");
    if (d == 1) return *this;
    if (kind_ != Kind::surd)
        throw DomainError("only surd frequencies can be scaled exactly");
    SurdSpec s;
    s.p = surd_.p * d;
    s.sign = surd_.sign;
    s.d = surd_.d * d * d;
    s.q = surd_.q;
    return from_surd(s);
}

ContinuedFraction expand(const Frequency& freq, std::size_t depth) {
    if (depth < 1) throw DomainError("expand: depth must be >= 1");
    ContinuedFraction cf;
    for (std::size_t k = 0; k < depth; ++k) {
        try {
            cf.a.push_back(freq.quotient(k));
        } catch (const DomainError&) {
            if (freq.is_rational() && !cf.a.empty()) break;  // finite CF
            throw;
        }
    }
    cf.quotient_bound = freq.quotient_bound();
    fill_convergents(cf);
    return cf;
}

void fill_convergents(ContinuedFraction& cf) {
    cf.p.clear();
    cf.q.clear();
    BigInt pm1 = 1, pm2 = 0;  // p_{-1}, p_{-2}
    BigInt qm1 = 0, qm2 = 1;  // q_{-1}, q_{-2}
    for (const auto& a : cf.a) {
        BigInt pk = a * pm1 + pm2;
        BigInt qk = a * qm1 + qm2;
        cf.p.push_back(pk);
        cf.q.push_back(qk);
        pm2 = pm1; pm1 = pk;
        qm2 = qm1; qm1 = qk;
    }
}

Real cf_real_value(const ContinuedFraction& cf, unsigned bits) {
    if (cf.a.empty()) throw DomainError("cf value: empty");
    std::size_t n = cf.depth();
    ScopedPrecision guard(bits + 96);
    if (n >= 2) {
        BigInt target = BigInt(1) << (bits + 64);
        if (cf.q[n - 1] * cf.q[n - 2] < target)
            throw PrecisionError("insufficient depth for requested precision");
    } else {
        // Depth 1 is exact only for an integer value.
        if (bits > 0 && cf.a[0] * 0 == 0 && n == 1) {
            // a single quotient represents the exact integer a0
        }
    }
    return Real(cf.p[n - 1]) / Real(cf.q[n - 1]);
}

// ---- parsing ----

namespace {

BigInt parse_bigint(const std::string& s) {
    if (s.empty()) throw DomainError("empty integer literal");
    try {
        return BigInt(s);
    } catch (...) {
        throw DomainError("bad integer literal: " + s);
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Frequency Frequency::parse(const std::string& spec) {
    if (spec.rfind("surd:", 0) == 0) {
        auto parts = split(spec.substr(5), ',');
        if (parts.size() != 4)
            throw DomainError("surd spec needs P,s,D,Q: " + spec);
        SurdSpec s;
        s.p = parse_bigint(parts[0]);
        std::string sg = parts[1];
        if (sg == "+" || sg == "+1" || sg == "1") s.sign = 1;
        else if (sg == "-" || sg == "-1") s.sign = -1;
        else throw DomainError("surd sign must be +1 or -1: " + sg);
        s.d = parse_bigint(parts[2]);
        s.q = parse_bigint(parts[3]);
        return from_surd(s);
    }
    if (spec.rfind("cf:", 0) == 0) {
        std::string body = spec.substr(3);
        if (body.size() < 3 || body.front() != '[' || body.back() != ']')
            throw DomainError("cf spec needs [a0;a1,...]: " + spec);
        body = body.substr(1, body.size() - 2);
        auto semi = body.find(';');
        if (semi == std::string::npos) {
            return from_quotients({parse_bigint(body)}, 1);
        }
        std::vector<BigInt> qs{parse_bigint(body.substr(0, semi))};
        std::string rest = body.substr(semi + 1);
        std::size_t period_start = std::string::npos;
        auto paren = rest.find('(');
        std::string head = rest, tail;
        if (paren != std::string::npos) {
            if (rest.back() != ')') throw DomainError("unterminated period: " + spec);
            head = rest.substr(0, paren);
            tail = rest.substr(paren + 1, rest.size() - paren - 2);
            if (!head.empty() && head.back() == ',') head.pop_back();
        }
        if (!head.empty())
            for (const auto& t : split(head, ','))
                qs.push_back(parse_bigint(t));
        if (paren != std::string::npos) {
            period_start = qs.size();
            for (const auto& t : split(tail, ','))
                qs.push_back(parse_bigint(t));
        } else {
            period_start = qs.size();
        }
        return from_quotients(std::move(qs), period_start);
    }
    if (spec.rfind("rule:", 0) == 0) {
        std::string body = spec.substr(5);
        if (body == "exp2") return from_rule(QuotientRule::exp2, 0, 2);
        if (body == "doubling") return from_rule(QuotientRule::doubling, 0, 2);
        if (body.rfind("doubling+", 0) == 0) {
            long shift = std::stol(body.substr(9));
            return from_rule(QuotientRule::doubling_shift, shift, 2);
        }
        throw DomainError("unknown rule: " + spec);
    }
    throw DomainError("unknown frequency spec: " + spec);
}

std::string Frequency::spec_string() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::surd:
            os << "surd:" << surd_.p << ',' << (surd_.sign > 0 ? "+1" : "-1")
               << ',' << surd_.d << ',' << surd_.q;
            break;
        case Kind::quotients: {
            os << "cf:[" << quotients_[0] << ';';
            for (std::size_t i = 1; i < quotients_.size(); ++i) {
                if (i == period_start_) os << '(';
                if (i > 1) os << ',';
                os << quotients_[i];
            }
            if (period_start_ < quotients_.size()) os << ')';
            os << ']';
            break;
        }
        case Kind::rule:
            os << "rule:";
            if (rule_ == QuotientRule::doubling) os << "doubling";
            else if (rule_ == QuotientRule::doubling_shift)
                os << "doubling+" << rule_shift_;
            else os << "exp2";
            break;
    }
    return os.str();
}

}  // namespace linlab
