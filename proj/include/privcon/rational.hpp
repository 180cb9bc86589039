#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace privcon {

// Arbitrary-precision rational, always kept canonical: reduced fraction,
// positive denominator. Wraps mpq_class so that every operator returns a
// plain value (gmpxx expression templates do not mix with Eigen).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<long int>(n)) {}
    Rational(long long n) { set_ll(n); }
    Rational(long long num, long long den) {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        Rational n(num), d(den);
        v_ = n.v_ / d.v_;
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class& z) : v_(z) {}

    // Accepts "p/q", "p", and plain decimal literals like "-0.344444"
    // (converted exactly, e.g. 344444/1000000 reduced).
    static Rational parse(const std::string& text);

    // Best rational approximation with denominator <= max_den (continued
    // fractions), exact when x is already representable within the bound.
    static Rational from_double(double x, unsigned long max_den);

    // Closest rational with denominator <= max_den.
    Rational limit_denominator(unsigned long max_den) const;

    std::string str() const;
    double to_double() const { return v_.get_d(); }

    const mpq_class& raw() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_canonical() const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }
    friend Rational operator+(const Rational& a) { return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend Rational abs(const Rational& a) { Rational r; r.v_ = ::abs(a.v_); return r; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    void set_ll(long long n);
    mpq_class v_;
};

inline Rational inverse(const Rational& a) { return Rational(1) / a; }

}  // namespace privcon
