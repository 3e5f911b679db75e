#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cfes {

// Exact arbitrary-precision fraction. mpq_class keeps the canonical form we
// rely on everywhere: positive denominator, gcd(|num|, den) = 1, so equality
// of values is structural equality.
using Rational = mpq_class;

inline Rational make_rational(mpz_class num, mpz_class den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    Rational r;
    r.get_num() = std::move(num);
    r.get_den() = std::move(den);
    r.canonicalize();
    return r;
}

inline mpz_class floor_to_int(const Rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

// x - floor(x), in [0, 1)
inline Rational fractional_part(const Rational& x) {
    Rational f = x - Rational(floor_to_int(x));
    return f;
}

inline bool in_unit_interval(const Rational& x) {
    return sgn(x) >= 0 && x < 1;
}

// Accepts "p/q", plain integers, and decimal strings ("0.25" -> 25/100,
// canonicalized). Decimal digits are taken literally; nothing is rounded.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::domain_error("rational: empty input");
    if (s.find('/') != std::string::npos) {
        Rational r;
        if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
            throw std::domain_error("rational: cannot parse '" + s + "'");
        if (r.get_den() == 0) throw std::domain_error("rational: zero denominator");
        r.canonicalize();
        return r;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        mpz_class n;
        if (mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0)
            throw std::domain_error("rational: cannot parse '" + s + "'");
        return Rational(n);
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::domain_error("rational: cannot parse '" + s + "'");
    mpz_class num;
    if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
        throw std::domain_error("rational: cannot parse '" + s + "'");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    return make_rational(std::move(num), std::move(den));
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace cfes
