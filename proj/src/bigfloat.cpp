#include "cfes/bigfloat.hpp"

#include <cstdio>
#include <vector>

namespace cfes {

std::string BigFloat::str(int sig_digits) const {
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%dRg", sig_digits);
    int need = mpfr_snprintf(nullptr, 0, fmt, v_);
    std::vector<char> buf(static_cast<size_t>(need) + 1);
    mpfr_snprintf(buf.data(), buf.size(), fmt, v_);
    return std::string(buf.data());
}

namespace {

// Exponent -s rounded so that n^expo bounds n^(-s) from the requested side
// for bases n >= 1: smaller exponent -> smaller power.
void set_neg_exponent(mpfr_ptr out, const Rational& s, mpfr_rnd_t rnd_of_result) {
    // lower result wants the smallest exponent: -(s rounded up)
    mpfr_set_q(out, s.get_mpq_t(), rnd_of_result == MPFR_RNDD ? MPFR_RNDU : MPFR_RNDD);
    mpfr_neg(out, out, MPFR_RNDN);
}

}  // namespace

BigFloat pow_inv_lo(unsigned long n, const Rational& s, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_t e;
    mpfr_init2(e, prec);
    set_neg_exponent(e, s, MPFR_RNDD);
    mpfr_ui_pow(r.get(), n, e, MPFR_RNDD);
    mpfr_clear(e);
    return r;
}

BigFloat pow_inv_hi(unsigned long n, const Rational& s, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_t e;
    mpfr_init2(e, prec);
    set_neg_exponent(e, s, MPFR_RNDU);
    mpfr_ui_pow(r.get(), n, e, MPFR_RNDU);
    mpfr_clear(e);
    return r;
}

}  // namespace cfes
