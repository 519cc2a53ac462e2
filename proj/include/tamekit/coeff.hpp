#ifndef TAMEKIT_COEFF_HPP
#define TAMEKIT_COEFF_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "tamekit/errors.hpp"

namespace tame {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Coefficient field of a computation: the rationals (p == 0) or a prime
// field F_p. Selected per computation context, never global.
struct Field {
    std::uint32_t p = 0;

    bool is_rational() const { return p == 0; }
    bool operator==(const Field&) const = default;
    static Field rationals() { return Field{0}; }
    static Field fp(std::uint32_t p) { return Field{p}; }
    std::string name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }
};

// Exact coefficient: an arbitrary-precision rational, or a residue in
// [0, p).  Rationals stay in lowest terms with positive denominator
// (cpp_rational maintains that canonical form itself).  An integer-valued
// rational silently coerces into F_p when it meets a residue, so literal
// constants work in either field.
class Coeff {
  public:
    Coeff() = default;
    explicit Coeff(Rational q) : q_(std::move(q)) {}
    Coeff(long n, const Field& f) {
        if (f.is_rational()) {
            q_ = n;
        } else {
            p_ = f.p;
            r_ = mod(n, f.p);
        }
    }
    static Coeff residue(std::int64_t r, std::uint32_t p) {
        Coeff c;
        c.p_ = p;
        c.r_ = mod(r, p);
        return c;
    }
    static Coeff from_rational(const Rational& q, const Field& f) {
        if (f.is_rational()) return Coeff(q);
        Coeff n = reduce_int(boost::multiprecision::numerator(q), f.p);
        Coeff d = reduce_int(boost::multiprecision::denominator(q), f.p);
        if (d.is_zero())
            throw invalid_input_error("denominator divisible by " + std::to_string(f.p));
        return n * d.inverse();
    }

    Field field() const { return Field{p_}; }
    bool is_zero() const { return p_ == 0 ? q_.is_zero() : r_ == 0; }
    bool is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

    const Rational& rational() const { return q_; }
    std::int64_t residue_value() const { return r_; }

    Coeff operator-() const {
        Coeff c(*this);
        if (p_ == 0)
            c.q_ = -c.q_;
        else
            c.r_ = c.r_ == 0 ? 0 : p_ - c.r_;
        return c;
    }

    friend Coeff operator+(Coeff a, Coeff b) {
        unify(a, b);
        if (a.p_ == 0)
            a.q_ += b.q_;
        else
            a.r_ = (a.r_ + b.r_) % a.p_;
        return a;
    }
    friend Coeff operator-(const Coeff& a, const Coeff& b) { return a + (-b); }
    friend Coeff operator*(Coeff a, Coeff b) {
        unify(a, b);
        if (a.p_ == 0)
            a.q_ *= b.q_;
        else
            a.r_ = static_cast<std::int64_t>((static_cast<__int128>(a.r_) * b.r_) % a.p_);
        return a;
    }

    Coeff& operator+=(const Coeff& o) { return *this = *this + o; }
    Coeff& operator-=(const Coeff& o) { return *this = *this - o; }
    Coeff& operator*=(const Coeff& o) { return *this = *this * o; }

    Coeff inverse() const {
        if (is_zero()) throw invalid_input_error("division by zero coefficient");
        if (p_ == 0) return Coeff(Rational(1) / q_);
        std::int64_t a = r_, m = p_, x0 = 1, x1 = 0;
        while (m != 0) {
            std::int64_t t = a / m;
            a -= t * m;
            std::swap(a, m);
            x0 -= t * x1;
            std::swap(x0, x1);
        }
        return residue(x0, p_);
    }
    friend Coeff operator/(const Coeff& a, const Coeff& b) { return a * b.inverse(); }

    Coeff mul_int(long n) const {
        if (p_ == 0) {
            Coeff c(*this);
            c.q_ *= n;
            return c;
        }
        return *this * residue(n, p_);
    }

    Coeff pow(unsigned long e) const {
        Coeff acc(1, Field{p_});
        Coeff base(*this);
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(Coeff a, Coeff b) {
        unify(a, b);
        return a.p_ == 0 ? a.q_ == b.q_ : a.r_ == b.r_;
    }
    friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }

    std::string str() const { return p_ == 0 ? q_.str() : std::to_string(r_); }

  private:
    static std::int64_t mod(std::int64_t n, std::uint32_t p) {
        std::int64_t r = n % p;
        return r < 0 ? r + p : r;
    }
    static Coeff reduce_int(const Integer& n, std::uint32_t p) {
        Integer r = n % p;
        if (r < 0) r += p;
        return residue(static_cast<std::int64_t>(r), p);
    }
    // Coerce the pair into a common field, in place.
    static void unify(Coeff& a, Coeff& b) {
        if (a.p_ == b.p_) return;
        if (a.p_ == 0) {
            if (boost::multiprecision::denominator(a.q_) != 1)
                throw field_mismatch_error("cannot coerce non-integer rational into F_p");
            a = reduce_int(boost::multiprecision::numerator(a.q_), b.p_);
            return;
        }
        if (b.p_ == 0) {
            unify(b, a);
            return;
        }
        throw field_mismatch_error("coefficient fields differ: F" + std::to_string(a.p_) +
                                   " vs F" + std::to_string(b.p_));
    }

    std::uint32_t p_ = 0;
    std::int64_t r_ = 0;
    Rational q_;
};

inline Coeff operator*(long n, const Coeff& c) { return c.mul_int(n); }

} // namespace tame

#endif
