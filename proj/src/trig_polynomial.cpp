#include "linlab/trig_polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace linlab {

TrigPolynomial::TrigPolynomial(std::vector<Mode> modes)
    : modes_(std::move(modes)) {
    if (modes_.empty()) throw DomainError("polynomial: no modes");
    std::sort(modes_.begin(), modes_.end(),
              [](const Mode& x, const Mode& y) { return x.k < y.k; });
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (modes_[i].k < 1)
            throw DomainError("polynomial: mode indices must be >= 1");
        if (i > 0 && modes_[i].k == modes_[i - 1].k)
            throw DomainError("polynomial: duplicate mode");
        if (modes_[i].a.is_zero())
            throw DomainError("polynomial: zero coefficient");
    }
    kappa_max_ = kappa_min_ = modes_[0].k;
    Real lo = modes_[0].a.abs(), hi = lo;
    for (const Mode& m : modes_) {
        Real v = m.a.abs();
        if (v > hi) { hi = v; kappa_max_ = m.k; }
        if (v < lo) { lo = v; kappa_min_ = m.k; }
    }
}

const Complex& TrigPolynomial::coeff_at_kappa_max() const {
    for (const Mode& m : modes_)
        if (m.k == kappa_max_) return m.a;
    throw DomainError("unreachable");
}

const Complex& TrigPolynomial::coeff_at_kappa_min() const {
    for (const Mode& m : modes_)
        if (m.k == kappa_min_) return m.a;
    throw DomainError("unreachable");
}

std::vector<std::uint64_t> TrigPolynomial::mode_indices() const {
    std::vector<std::uint64_t> out;
    out.reserve(modes_.size());
    for (const Mode& m : modes_) out.push_back(m.k);
    return out;
}

namespace {

Real parse_real(const std::string& s) {
    if (s.empty() || s == "+") return Real(1);
    if (s == "-") return Real(-1);
    try {
        return Real(s);
    } catch (...) {
        throw DomainError("bad numeric literal: " + s);
    }
}

Complex parse_coeff(const std::string& s) {
    auto at = s.find('@');
    if (at != std::string::npos) {  // polar mod@arg
        Real mod = parse_real(s.substr(0, at));
        Real arg = parse_real(s.substr(at + 1));
        return {mod * cos(arg), mod * sin(arg)};
    }
    if (s.empty()) throw DomainError("empty coefficient");
    if (s.back() != 'i') return {parse_real(s), Real(0)};
    std::string body = s.substr(0, s.size() - 1);
    // Split at the last +/- that starts the imaginary part (skip a leading
    // sign and exponent signs).
    for (std::size_t i = body.size(); i-- > 1;) {
        char c = body[i];
        if ((c == '+' || c == '-') &&
            body[i - 1] != 'e' && body[i - 1] != 'E') {
            return {parse_real(body.substr(0, i)),
                    parse_real(body.substr(i) == "+" || body.substr(i) == "-"
                                   ? body.substr(i) + "1"
                                   : body.substr(i))};
        }
    }
    return {Real(0), parse_real(body)};  // pure imaginary
}

}  // namespace

TrigPolynomial TrigPolynomial::parse(const std::string& spec, unsigned bits) {
    ScopedPrecision guard(bits);
    std::vector<Mode> modes;
    std::stringstream ss(spec);
    std::string entry;
    while (std::getline(ss, entry, ',')) {
        auto colon = entry.find(':');
        if (colon == std::string::npos)
            throw DomainError("mode entry needs K:coeff: " + entry);
        Mode m;
        try {
            m.k = std::stoull(entry.substr(0, colon));
        } catch (...) {
            throw DomainError("bad mode index: " + entry);
        }
        m.a = parse_coeff(entry.substr(colon + 1));
        modes.push_back(std::move(m));
    }
    return TrigPolynomial(std::move(modes));
}

std::string TrigPolynomial::spec_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (i) os << ',';
        os << modes_[i].k << ':' << modes_[i].a.re.str() << '+'
           << modes_[i].a.im.str() << 'i';
    }
    return os.str();
}

}  // namespace linlab
