#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace linlab {

using Real = boost::multiprecision::mpfr_float;
using BigInt = boost::multiprecision::mpz_int;

// Raised when a small quantity can no longer be separated from zero at the
// working precision.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: malformed specs, rational frequencies, out-of-range windows.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline unsigned digits10_for_bits(unsigned bits) {
    // 1 decimal digit ~ 3.32 bits; round up and pad.
    return static_cast<unsigned>(bits * 0.30103) + 4;
}

// Sets the thread's default mpfr precision for the lifetime of the guard.
class ScopedPrecision {
public:
    explicit ScopedPrecision(unsigned bits)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits10_for_bits(bits));
    }
    ~ScopedPrecision() { Real::default_precision(saved_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    unsigned saved_;
};

inline Real pi_value() {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

// x reduced to [0, 1).
inline Real fractional_part(const Real& x) {
    Real f = x - floor(x);
    if (f < 0) f += 1;
    if (f >= 1) f -= 1;
    return f;
}

// Complex scalar over mpfr reals. Only the operations the series engine
// needs; everything is value-semantic.
struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(long r) : re(r), im(0) {}

    static Complex zero() { return Complex(); }
    static Complex unit_imag() { return Complex(Real(0), Real(1)); }

    // i^n for integer n.
    static Complex imag_power(long n) {
        switch (((n % 4) + 4) % 4) {
            case 0: return Complex(Real(1), Real(0));
            case 1: return Complex(Real(0), Real(1));
            case 2: return Complex(Real(-1), Real(0));
            default: return Complex(Real(0), Real(-1));
        }
    }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
    Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
    Complex operator*(const Complex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Complex operator*(const Real& s) const { return {re * s, im * s}; }
    Complex operator/(const Real& s) const { return {re / s, im / s}; }
    Complex operator/(const Complex& o) const {
        Real n = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }
    Complex operator-() const { return {-re, -im}; }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }

    // this += a * b without forming a temporary Complex.
    void add_mul(const Complex& a, const Complex& b) {
        re += a.re * b.re;
        re -= a.im * b.im;
        im += a.re * b.im;
        im += a.im * b.re;
    }

    Real abs() const {
        if (im.is_zero()) return boost::multiprecision::abs(re);
        if (re.is_zero()) return boost::multiprecision::abs(im);
        return sqrt(re * re + im * im);
    }

    Real arg() const { return atan2(im, re); }
};

// Angular distance between two angles, folded into [0, pi].
inline Real angular_distance(const Real& a, const Real& b) {
    Real two_pi = 2 * pi_value();
    Real d = fractional_part((a - b) / two_pi) * two_pi;
    if (d > pi_value()) d = two_pi - d;
    return d;
}

}  // namespace linlab
