#include "cfes/error_sum.hpp"

#include <stdexcept>

#include "cfes/numtheory.hpp"

namespace cfes {

namespace {

Rational weighted_sum(const DigitString& sigma, bool weight_by_q) {
    ConvergentTable t = convergent_table(sigma);
    long n = static_cast<long>(t.levels());
    Rational val = t.value_at(n);
    Rational sum = 0;
    for (long k = 0; k < n; ++k) {  // the k = n term vanishes
        Rational term = val - t.value_at(k);
        if (weight_by_q) term *= Rational(t.q_at(k));
        sum += term;
    }
    return sum;
}

void require_delta_domain(const DigitString& sigma) {
    if (sigma.empty())
        throw std::domain_error("sibling delta: empty string");
    if (sigma.last() == 1)
        throw std::domain_error("sibling delta: defined for final digit > 1");
}

}  // namespace

Rational error_sum(const DigitString& sigma) { return weighted_sum(sigma, false); }

Rational relative_error_sum(const DigitString& sigma) { return weighted_sum(sigma, true); }

Rational error_sum(ErrorSumKind kind, const DigitString& sigma) {
    return weighted_sum(sigma, kind == ErrorSumKind::relative);
}

Rational error_sum_at(const Rational& x) { return error_sum_at(ErrorSumKind::unweighted, x); }

Rational relative_error_sum_at(const Rational& x) {
    return error_sum_at(ErrorSumKind::relative, x);
}

Rational error_sum_at(ErrorSumKind kind, const Rational& x) {
    return error_sum(kind, expand_rational(fractional_part(x)));
}

Rational error_sum_sibling_delta(const DigitString& sigma) {
    require_delta_domain(sigma);
    ConvergentTable t = convergent_table(sigma);
    long n = static_cast<long>(t.levels());
    mpz_class den = t.q_at(n) * (t.q_at(n) - t.q_at(n - 1));
    return make_rational(n % 2 == 0 ? 1 : -1, std::move(den));
}

Rational relative_error_sum_sibling_delta(const DigitString& sigma) {
    require_delta_domain(sigma);
    ConvergentTable t = convergent_table(sigma);
    long n = static_cast<long>(t.levels());
    return make_rational(n % 2 == 0 ? 1 : -1, t.q_at(n));
}

CylinderExtrema cylinder_extrema(ErrorSumKind kind, const DigitString& sigma) {
    if (sigma.empty()) throw std::domain_error("cylinder extrema: empty string");
    ConvergentTable t = convergent_table(sigma);
    long n = static_cast<long>(t.levels());
    Rational length = make_rational(1, t.q_at(n) * (t.q_at(n) + t.q_at(n - 1)));
    Rational at = error_sum(kind, sigma);

    CylinderExtrema ex;
    ex.spread = kind == ErrorSumKind::unweighted ? Rational(n + 1) * length
                                                 : Rational(t.q_sum()) * length;
    DigitString deeper = sigma.with_appended(1);
    if (n % 2 == 1) {  // value at sigma is the right endpoint image: maximal
        ex.max = at;
        ex.argmax = sigma;
        ex.min = at - ex.spread;
        ex.argmin = std::move(deeper);
    } else {
        ex.min = at;
        ex.argmin = sigma;
        ex.max = at + ex.spread;
        ex.argmax = std::move(deeper);
    }
    return ex;
}

Rational oscillation(ErrorSumKind kind, const DigitString& sigma) {
    if (sigma.empty()) throw std::domain_error("oscillation: empty string");
    ConvergentTable t = convergent_table(sigma);
    long n = static_cast<long>(t.levels());
    Rational length = make_rational(1, t.q_at(n) * (t.q_at(n) + t.q_at(n - 1)));
    return kind == ErrorSumKind::unweighted ? Rational(n + 1) * length
                                            : Rational(t.q_sum()) * length;
}

BigFloat truncation_tail(ErrorSumKind kind, size_t terms, mpfr_prec_t prec) {
    BigFloat tail(prec);
    if (kind == ErrorSumKind::unweighted) {
        // sum_{k>=K} 1/(F_{k+1} F_{k+2}): exact partial plus a geometric
        // remainder; F_{k+1}F_{k+2} >= g^{2k+3}/6 holds for all k >= 0.
        constexpr size_t kExact = 120;
        Rational partial = 0;
        for (size_t k = terms; k < terms + kExact; ++k)
            partial += make_rational(1, fibonacci(k + 1) * fibonacci(k + 2));
        mpfr_set_q(tail.get(), partial.get_mpq_t(), MPFR_RNDU);
        BigFloat g_lo(prec), rem(prec);
        mpfr_sqrt_ui(g_lo.get(), 5, MPFR_RNDD);
        mpfr_add_ui(g_lo.get(), g_lo.get(), 1, MPFR_RNDD);
        mpfr_div_2ui(g_lo.get(), g_lo.get(), 1, MPFR_RNDD);
        mpfr_pow_si(rem.get(), g_lo.get(), -2 * static_cast<long>(terms + kExact) - 2,
                    MPFR_RNDU);
        mpfr_mul_ui(rem.get(), rem.get(), 6, MPFR_RNDU);
        mpfr_add(tail.get(), tail.get(), rem.get(), MPFR_RNDU);
        return tail;
    }
    // relative: g^2 * g^-K, an upper bound on the alternating remainder
    // |sum_{k>=K} (x - phi_k) q_k| <= 1/F_{K+1} <= g^(2-K).
    long e = 2 - static_cast<long>(terms);
    BigFloat g(prec);
    if (e >= 0) {
        mpfr_sqrt_ui(g.get(), 5, MPFR_RNDU);
        mpfr_add_ui(g.get(), g.get(), 1, MPFR_RNDU);
        mpfr_div_2ui(g.get(), g.get(), 1, MPFR_RNDU);
    } else {
        mpfr_sqrt_ui(g.get(), 5, MPFR_RNDD);
        mpfr_add_ui(g.get(), g.get(), 1, MPFR_RNDD);
        mpfr_div_2ui(g.get(), g.get(), 1, MPFR_RNDD);
    }
    mpfr_pow_si(tail.get(), g.get(), e, MPFR_RNDU);
    return tail;
}

ErrorSumValue error_sum_real(ErrorSumKind kind, const RealInterval& x,
                             const BigFloat& tolerance) {
    if (tolerance.sign() <= 0)
        throw std::domain_error("error_sum_real: tolerance must be positive");
    mpfr_prec_t prec = std::max<mpfr_prec_t>(x.lo.prec(), BigFloat::kDefaultPrec) + 64;

    size_t terms = 1;
    while (truncation_tail(kind, terms, prec) > tolerance) ++terms;

    DigitPrefix prefix = digits_prefix_of_real(x, terms);
    ErrorSumValue out;
    out.status = prefix.status;

    if (prefix.status == DigitStatus::terminated) {
        // the interval pinched to an exact rational; its digits are complete
        out.exact = true;
        out.exact_value = error_sum(kind, prefix.digits);
        out.value = BigFloat::of(out.exact_value, MPFR_RNDN, prec);
        out.radius = BigFloat(prec);
        out.tail_bound = BigFloat(prec);
        out.terms_used = prefix.digits.size();
        return out;
    }

    size_t m = prefix.digits.size();  // terms k = 0..m-1 are summed exactly
    out.terms_used = m;
    out.tail_bound = truncation_tail(kind, m, prec);

    ConvergentTable t = convergent_table(prefix.digits);
    Rational known = 0;   // sum of phi_k * w_k
    mpz_class weight = 0; // sum of w_k
    for (size_t k = 0; k < m; ++k) {
        Rational term = t.value_at(static_cast<long>(k));
        if (kind == ErrorSumKind::relative) {
            term *= Rational(t.q_at(static_cast<long>(k)));
            weight += t.q_at(static_cast<long>(k));
        } else {
            weight += 1;
        }
        known += term;
    }

    // sum_{k<m} (x - phi_k) w_k = x * weight - known, increasing in x
    BigFloat lo(prec), hi(prec), tmp(prec);
    mpfr_set_z(tmp.get(), weight.get_mpz_t(), MPFR_RNDN);
    mpfr_mul(lo.get(), x.lo.get(), tmp.get(), MPFR_RNDD);
    mpfr_mul(hi.get(), x.hi.get(), tmp.get(), MPFR_RNDU);
    mpfr_set_q(tmp.get(), known.get_mpq_t(), MPFR_RNDU);
    mpfr_sub(lo.get(), lo.get(), tmp.get(), MPFR_RNDD);
    mpfr_set_q(tmp.get(), known.get_mpq_t(), MPFR_RNDD);
    mpfr_sub(hi.get(), hi.get(), tmp.get(), MPFR_RNDU);
    mpfr_sub(lo.get(), lo.get(), out.tail_bound.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi.get(), out.tail_bound.get(), MPFR_RNDU);

    out.value = BigFloat(prec);
    out.radius = BigFloat(prec);
    mpfr_add(out.value.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(out.value.get(), out.value.get(), 1, MPFR_RNDN);
    mpfr_sub(out.radius.get(), hi.get(), lo.get(), MPFR_RNDU);
    mpfr_div_2ui(out.radius.get(), out.radius.get(), 1, MPFR_RNDU);
    mpfr_nextabove(out.radius.get());  // cover the midpoint rounding
    return out;
}

}  // namespace cfes
