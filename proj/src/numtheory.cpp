#include "cfes/numtheory.hpp"

#include <mutex>
#include <stdexcept>

namespace cfes {

int mobius(unsigned long n) {
    if (n == 0) throw std::domain_error("mobius: n must be positive");
    int k = 0;
    for (unsigned long p = 2; p * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        ++k;
    }
    if (n > 1) ++k;
    return (k % 2 == 0) ? 1 : -1;
}

long mobius_divisor_sum(unsigned long n) {
    if (n == 0) throw std::domain_error("mobius_divisor_sum: n must be positive");
    long sum = 0;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        sum += mobius(d);
        if (d != n / d) sum += mobius(n / d);
    }
    return sum;
}

MultiplicativeSieve::MultiplicativeSieve(unsigned long limit) {
    if (limit == 0) throw std::domain_error("sieve: limit must be positive");
    mu_.assign(limit + 1, 0);
    phi_.assign(limit + 1, 0);
    mu_[1] = 1;
    phi_[1] = 1;
    std::vector<uint32_t> primes;
    for (unsigned long i = 2; i <= limit; ++i) {
        if (phi_[i] == 0) {  // i is prime
            primes.push_back(static_cast<uint32_t>(i));
            mu_[i] = -1;
            phi_[i] = static_cast<uint32_t>(i - 1);
        }
        for (uint32_t p : primes) {
            unsigned long ip = i * static_cast<unsigned long>(p);
            if (ip > limit) break;
            if (i % p == 0) {
                mu_[ip] = 0;
                phi_[ip] = phi_[i] * p;
                break;
            }
            mu_[ip] = static_cast<int8_t>(-mu_[i]);
            phi_[ip] = phi_[i] * (p - 1);
        }
    }
}

namespace {

void require_s_gt_1(const Rational& s) {
    if (s <= 1) throw std::domain_error("zeta: requires s > 1 (series diverges otherwise)");
}

}  // namespace

ZetaEnclosure zeta_partial(const Rational& s, unsigned long terms, mpfr_prec_t prec) {
    require_s_gt_1(s);
    if (terms == 0) throw std::domain_error("zeta: terms must be positive");
    ZetaEnclosure z{BigFloat(prec), BigFloat(prec), BigFloat(prec)};
    for (unsigned long n = 1; n <= terms; ++n) {
        z.partial_lo.add(pow_inv_lo(n, s, prec), MPFR_RNDD);
        z.partial_hi.add(pow_inv_hi(n, s, prec), MPFR_RNDU);
    }
    // integral tail: sum_{n>terms} n^(-s) <= terms^(1-s)/(s-1)
    Rational sm1 = s - 1;
    BigFloat t = pow_inv_hi(terms, sm1, prec);
    BigFloat d = BigFloat::of(sm1, MPFR_RNDD, prec);
    t.div(d, MPFR_RNDU);
    z.tail = std::move(t);
    return z;
}

BigFloat mobius_zeta_partial(const Rational& s, unsigned long terms, mpfr_prec_t prec) {
    require_s_gt_1(s);
    if (terms == 0) throw std::domain_error("zeta: terms must be positive");
    MultiplicativeSieve sieve(terms);
    BigFloat sum(prec);
    BigFloat se = BigFloat::of(s, MPFR_RNDN, prec);
    se.neg();
    BigFloat term(prec);
    for (unsigned long n = 1; n <= terms; ++n) {
        int mu = sieve.mobius(n);
        if (mu == 0) continue;
        mpfr_ui_pow(term.get(), n, se.get(), MPFR_RNDN);
        if (mu > 0)
            mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
        else
            mpfr_sub(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    }
    return sum;
}

const mpz_class& FibonacciCache::at(size_t n) {
    while (values_.size() <= n) {
        mpz_class next = values_[values_.size() - 1] + values_[values_.size() - 2];
        values_.push_back(std::move(next));
    }
    return values_[n];
}

mpz_class fibonacci(size_t n) {
    static FibonacciCache cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    return cache.at(n);
}

}  // namespace cfes
