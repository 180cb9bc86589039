#include "privcon/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>

namespace privcon {

void Rational::set_ll(long long n) {
    if (n >= 0) {
        v_ = mpq_class(mpz_class(static_cast<unsigned long>(n)));
    } else {
        // careful with LLONG_MIN: negate in unsigned space
        unsigned long long m = static_cast<unsigned long long>(-(n + 1)) + 1ULL;
        v_ = -mpq_class(mpz_class(static_cast<unsigned long>(m)));
    }
}

Rational Rational::parse(const std::string& text) {
    std::string t = text;
    // strip surrounding whitespace
    const char* ws = " \t\r\n";
    auto b = t.find_first_not_of(ws);
    auto e = t.find_last_not_of(ws);
    if (b == std::string::npos) throw std::invalid_argument("empty rational literal");
    t = t.substr(b, e - b + 1);

    auto dot = t.find('.');
    if (dot != std::string::npos) {
        if (t.find('/') != std::string::npos)
            throw std::invalid_argument("malformed rational literal: " + text);
        std::string digits = t.substr(0, dot) + t.substr(dot + 1);
        size_t frac_len = t.size() - dot - 1;
        if (frac_len == 0) throw std::invalid_argument("malformed rational literal: " + text);
        mpz_class num;
        if (num.set_str(digits, 10) != 0)
            throw std::invalid_argument("malformed rational literal: " + text);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        mpq_class q(num, den);
        q.canonicalize();
        return Rational(q);
    }

    mpq_class q;
    if (q.set_str(t, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
    q.canonicalize();
    return Rational(q);
}

Rational Rational::from_double(double x, unsigned long max_den) {
    if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize non-finite value");
    return Rational(mpq_class(x)).limit_denominator(max_den);
}

Rational Rational::limit_denominator(unsigned long max_den) const {
    if (max_den == 0) throw std::invalid_argument("max_den must be positive");

    mpq_class exact = v_;
    bool neg = sgn(exact) < 0;
    if (neg) exact = -exact;
    mpz_class bound(max_den);
    if (exact.get_den() <= bound) return neg ? -Rational(exact) : Rational(exact);

    // exact continued fraction: run the Euclidean algorithm on num/den and
    // keep convergents h/k while k stays within the bound
    mpz_class p = exact.get_num(), q = exact.get_den();
    mpz_class h0 = 0, k0 = 1, h1 = 1, k1 = 0;
    while (q != 0) {
        mpz_class a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > bound) {
            // best admissible semiconvergent vs the last convergent
            // k1 >= 1 here: the first convergent has denominator 1 <= bound
            mpq_class best(h1, k1);
            best.canonicalize();
            mpz_class t = (bound - k0) / k1;
            if (t > 0) {
                mpq_class semi(t * h1 + h0, t * k1 + k0);
                semi.canonicalize();
                if (abs(semi - exact) < abs(best - exact)) best = semi;
            }
            return neg ? -Rational(best) : Rational(best);
        }
        h0 = h1;
        k0 = k1;
        h1 = h2;
        k1 = k2;
        p = q;
        q = r;
    }
    mpq_class out(h1, k1);
    out.canonicalize();
    return neg ? -Rational(out) : Rational(out);
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

bool Rational::is_canonical() const {
    if (sgn(v_.get_den()) <= 0) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return g == 1 || (sgn(v_.get_num()) == 0 && v_.get_den() == 1);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace privcon
