#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "cfes/rational.hpp"

namespace cfes {

// RAII handle for an mpfr_t. Kernels that need directed rounding use the raw
// pointer with the mpfr C API; convenience members round to nearest.
class BigFloat {
  public:
    static constexpr mpfr_prec_t kDefaultPrec = 128;

    explicit BigFloat(mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, o.prec());
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) { mpfr_set_prec(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat of(double x, mpfr_prec_t prec = kDefaultPrec) {
        BigFloat r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static BigFloat of(const Rational& x, mpfr_rnd_t rnd = MPFR_RNDN, mpfr_prec_t prec = kDefaultPrec) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, x.get_mpq_t(), rnd);
        return r;
    }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Deterministic decimal rendering with a fixed number of significant digits.
    std::string str(int sig_digits = 25) const;

    bool operator<(const BigFloat& o) const { return mpfr_cmp(v_, o.v_) < 0; }
    bool operator<=(const BigFloat& o) const { return mpfr_cmp(v_, o.v_) <= 0; }
    bool operator>(const BigFloat& o) const { return mpfr_cmp(v_, o.v_) > 0; }
    bool operator>=(const BigFloat& o) const { return mpfr_cmp(v_, o.v_) >= 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    BigFloat& add(const BigFloat& o, mpfr_rnd_t rnd) { mpfr_add(v_, v_, o.v_, rnd); return *this; }
    BigFloat& sub(const BigFloat& o, mpfr_rnd_t rnd) { mpfr_sub(v_, v_, o.v_, rnd); return *this; }
    BigFloat& mul(const BigFloat& o, mpfr_rnd_t rnd) { mpfr_mul(v_, v_, o.v_, rnd); return *this; }
    BigFloat& div(const BigFloat& o, mpfr_rnd_t rnd) { mpfr_div(v_, v_, o.v_, rnd); return *this; }
    BigFloat& neg() { mpfr_neg(v_, v_, MPFR_RNDN); return *this; }

  private:
    mpfr_t v_;
};

// Enclosure [lo, hi] of a real number; both bounds at the same precision.
struct RealInterval {
    BigFloat lo, hi;

    static RealInterval point(const BigFloat& x) { return RealInterval{x, x}; }
    // Nearest p-bit neighbors below/above the exact rational value.
    static RealInterval of(const Rational& x, mpfr_prec_t prec) {
        return RealInterval{BigFloat::of(x, MPFR_RNDD, prec), BigFloat::of(x, MPFR_RNDU, prec)};
    }
    bool is_point() const { return mpfr_cmp(lo.get(), hi.get()) == 0; }
};

// n^(-s) with s held as an exact rational exponent, n >= 1, s > 0.
// Returns a one-ulp bracket honoring the requested direction.
BigFloat pow_inv_lo(unsigned long n, const Rational& s, mpfr_prec_t prec);
BigFloat pow_inv_hi(unsigned long n, const Rational& s, mpfr_prec_t prec);

}  // namespace cfes
