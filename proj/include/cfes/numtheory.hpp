#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "cfes/bigfloat.hpp"
#include "cfes/rational.hpp"

namespace cfes {

// mu(n) by trial factorization: 0 if a squared prime divides n, else (-1)^k
// for k distinct prime factors. Single-query path; use MultiplicativeSieve
// for batch ranges.
int mobius(unsigned long n);

// sum of mu(d) over the divisors d of n; 1 iff n = 1, else 0. Computed by
// actual divisor enumeration, not by the closed form.
long mobius_divisor_sum(unsigned long n);

// Linear sieve over 1..limit serving mu(n) and Euler phi(n). Built once,
// immutable afterwards; concurrent reads are fine.
class MultiplicativeSieve {
  public:
    explicit MultiplicativeSieve(unsigned long limit);
    int mobius(unsigned long n) const { return mu_.at(n); }
    unsigned long euler_phi(unsigned long n) const { return phi_.at(n); }
    unsigned long limit() const { return mu_.size() - 1; }

  private:
    std::vector<int8_t> mu_;
    std::vector<uint32_t> phi_;
};

// Partial sum of the Dirichlet series for zeta(s), s > 1, with the integral
// tail estimate terms^(1-s)/(s-1), so [lo(), hi()] rigorously encloses
// zeta(s). Directed rounding throughout.
struct ZetaEnclosure {
    BigFloat partial_lo, partial_hi;  // bracket of the finite sum
    BigFloat tail;                    // upper bound on the remainder
    BigFloat lo() const { return partial_lo; }
    BigFloat hi() const {
        BigFloat h = partial_hi;
        h.add(tail, MPFR_RNDU);
        return h;
    }
};
ZetaEnclosure zeta_partial(const Rational& s, unsigned long terms,
                           mpfr_prec_t prec = BigFloat::kDefaultPrec);

// sum_{n<=terms} mu(n) n^(-s), s > 1; round-to-nearest value.
BigFloat mobius_zeta_partial(const Rational& s, unsigned long terms,
                             mpfr_prec_t prec = BigFloat::kDefaultPrec);

// F_0 = 0, F_1 = 1, F_{n+2} = F_{n+1} + F_n, cached. Growth never moves
// cached entries, so returned references stay valid.
class FibonacciCache {
  public:
    FibonacciCache() : values_{0, 1} {}
    const mpz_class& at(size_t n);

  private:
    std::deque<mpz_class> values_;
};

// Shared process-wide cache behind a lock.
mpz_class fibonacci(size_t n);

}  // namespace cfes
