#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "cfes/error_sum.hpp"
#include "cfes/interval.hpp"
#include "cfes/numtheory.hpp"

using namespace cfes;

namespace {

DigitString random_realizable(std::mt19937_64& rng, int max_len = 8, int max_digit = 9) {
    std::uniform_int_distribution<int> len(1, max_len), digit(1, max_digit), last(2, max_digit);
    int n = len(rng);
    std::vector<mpz_class> d;
    for (int i = 0; i + 1 < n; ++i) d.emplace_back(digit(rng));
    d.emplace_back(last(rng));
    return DigitString(std::move(d));
}

// direct-summation oracle, written against the definition rather than the
// convergent-table plumbing
Rational direct_sum(const DigitString& sigma, bool weight) {
    Rational x = phi(sigma);
    Rational sum = 0;
    for (size_t k = 0; k <= sigma.size(); ++k) {
        std::vector<mpz_class> head(sigma.begin(), sigma.begin() + k);
        Rational pk = phi(DigitString(std::move(head)));
        Rational term = x - pk;
        if (weight) {
            std::vector<mpz_class> head2(sigma.begin(), sigma.begin() + k);
            ConvergentTable t = convergent_table(DigitString(std::move(head2)));
            term *= Rational(t.q_at(static_cast<long>(k)));
        }
        sum += term;
    }
    return sum;
}

}  // namespace

TEST_CASE("unweighted values from the worked examples") {
    CHECK(error_sum(DigitString::parse("2")) == make_rational(1, 2));
    CHECK(error_sum(DigitString::parse("3,3")) == make_rational(4, 15));
    CHECK(error_sum(DigitString::parse("3,2,1")) == make_rational(59, 210));
    CHECK(error_sum(DigitString()) == 0);
    CHECK(error_sum(DigitString::parse("1,1")) == 0);
    CHECK(error_sum(DigitString::parse("1")) == 1);
}

TEST_CASE("relative values from the worked examples") {
    CHECK(relative_error_sum(DigitString::parse("2")) == make_rational(1, 2));
    CHECK(relative_error_sum(DigitString::parse("1,1")) == 0);
    CHECK(relative_error_sum(DigitString()) == 0);
}

TEST_CASE("evaluation on numbers and periodicity") {
    CHECK(error_sum_at(make_rational(3, 10)) == make_rational(4, 15));
    CHECK(error_sum_at(make_rational(13, 10)) == make_rational(4, 15));
    CHECK(error_sum_at(Rational(0)) == 0);
    CHECK(relative_error_sum_at(make_rational(1, 2)) == make_rational(1, 2));
    CHECK(relative_error_sum_at(make_rational(3, 10)) == make_rational(1, 5));
    CHECK(relative_error_sum_at(make_rational(5, 2)) == make_rational(1, 2));

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-500, 500), den(1, 200);
    for (int i = 0; i < 300; ++i) {
        Rational x = make_rational(num(rng), den(rng));
        CHECK(error_sum_at(x + 1) == error_sum_at(x));
        CHECK(relative_error_sum_at(x + 1) == relative_error_sum_at(x));
    }
}

TEST_CASE("values agree with the direct-summation oracle") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 400; ++i) {
        DigitString sigma = random_realizable(rng);
        CHECK(error_sum(sigma) == direct_sum(sigma, false));
        CHECK(relative_error_sum(sigma) == direct_sum(sigma, true));
    }
}

TEST_CASE("commutative diagram exhaustively for q <= 300") {
    for (long q = 1; q <= 300; ++q)
        for (long p = 0; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            Rational x = make_rational(p, q);
            DigitString f = expand_rational(x);
            CHECK(error_sum_at(x) == error_sum(f));
            CHECK(relative_error_sum_at(x) == relative_error_sum(f));
        }
}

TEST_CASE("sibling deltas: closed form equals direct difference") {
    CHECK(error_sum_sibling_delta(DigitString::parse("2")) == make_rational(-1, 2));
    CHECK(error_sum_sibling_delta(DigitString::parse("3,3")) == make_rational(1, 70));
    CHECK(error_sum_sibling_delta(DigitString::parse("5")) == make_rational(-1, 20));
    CHECK(relative_error_sum_sibling_delta(DigitString::parse("2")) == make_rational(-1, 2));
    CHECK(relative_error_sum_sibling_delta(DigitString::parse("3,3")) == make_rational(1, 10));
    CHECK(relative_error_sum_sibling_delta(DigitString::parse("7")) == make_rational(-1, 7));

    CHECK(error_sum(DigitString::parse("4,1")) - error_sum(DigitString::parse("5")) ==
          make_rational(-1, 20));

    CHECK_THROWS_AS(error_sum_sibling_delta(DigitString()), std::domain_error);
    CHECK_THROWS_AS(error_sum_sibling_delta(DigitString::parse("3,1")), std::domain_error);
    CHECK_THROWS_AS(relative_error_sum_sibling_delta(DigitString::parse("1")),
                    std::domain_error);

    std::mt19937_64 rng(29);
    for (int i = 0; i < 1000; ++i) {
        DigitString sigma = random_realizable(rng);
        if (sigma.size() == 1 && sigma[0] == 1) continue;
        DigitString sib = sibling(sigma);
        CHECK(error_sum(sib) - error_sum(sigma) == error_sum_sibling_delta(sigma));
        CHECK(relative_error_sum(sib) - relative_error_sum(sigma) ==
              relative_error_sum_sibling_delta(sigma));
    }
}

TEST_CASE("cylinder extrema: worked examples") {
    CylinderExtrema e2 = cylinder_extrema(ErrorSumKind::unweighted, DigitString::parse("2"));
    CHECK(e2.max == make_rational(1, 2));
    CHECK(e2.argmax == DigitString::parse("2"));
    CHECK(e2.min == make_rational(1, 6));
    CHECK(e2.argmin == DigitString::parse("2,1"));
    CHECK(error_sum(DigitString::parse("2,1")) == make_rational(1, 6));

    // n odd: max sits at sigma itself; spread 2 * (1/2) = 1
    CylinderExtrema e1 = cylinder_extrema(ErrorSumKind::unweighted, DigitString::parse("1"));
    CHECK(e1.max == 1);
    CHECK(e1.argmax == DigitString::parse("1"));
    CHECK(e1.min == 0);
    CHECK(e1.argmin == DigitString::parse("1,1"));
    CHECK(e1.spread == 1);

    // n even: min at sigma, max = 0 + 3 * (1/6) = 1/2 at (1,1,1)
    CylinderExtrema e11 = cylinder_extrema(ErrorSumKind::unweighted, DigitString::parse("1,1"));
    CHECK(e11.min == 0);
    CHECK(e11.max == make_rational(1, 2));
    CHECK(e11.argmax == DigitString::parse("1,1,1"));
    CHECK(error_sum(DigitString::parse("1,1,1")) == make_rational(1, 2));

    CylinderExtrema p2 = cylinder_extrema(ErrorSumKind::relative, DigitString::parse("2"));
    CHECK(p2.spread == make_rational(1, 2));
    CylinderExtrema p33 = cylinder_extrema(ErrorSumKind::relative, DigitString::parse("3,3"));
    CHECK(p33.spread == make_rational(7, 65));
    CylinderExtrema p1 = cylinder_extrema(ErrorSumKind::relative, DigitString::parse("1"));
    CHECK(p1.spread == 1);

    CHECK_THROWS_AS(cylinder_extrema(ErrorSumKind::unweighted, DigitString()),
                    std::domain_error);
}

TEST_CASE("cylinder bounds hold and are attained, random extensions stay inside") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> extra_len(1, 4), digit(1, 9);
    for (int i = 0; i < 300; ++i) {
        DigitString sigma = random_realizable(rng);
        for (ErrorSumKind kind : {ErrorSumKind::unweighted, ErrorSumKind::relative}) {
            CylinderExtrema ex = cylinder_extrema(kind, sigma);
            CHECK(error_sum(kind, ex.argmin) == ex.min);
            CHECK(error_sum(kind, ex.argmax) == ex.max);
            CHECK(ex.max - ex.min == ex.spread);
            for (int rep = 0; rep < 10; ++rep) {
                DigitString tau = sigma;
                int m = extra_len(rng);
                for (int k = 0; k < m; ++k) tau.push_back(digit(rng));
                Rational v = error_sum(kind, tau);
                CHECK(ex.min <= v);
                CHECK(v <= ex.max);
            }
        }
    }
}

TEST_CASE("oscillation closed forms") {
    CHECK(oscillation(ErrorSumKind::unweighted, DigitString::parse("2")) ==
          make_rational(1, 3));
    CHECK(oscillation(ErrorSumKind::unweighted, DigitString::parse("3,3")) ==
          make_rational(3, 130));
    CHECK(oscillation(ErrorSumKind::relative, DigitString::parse("2")) == make_rational(1, 2));

    std::mt19937_64 rng(37);
    for (int i = 0; i < 300; ++i) {
        DigitString sigma = random_realizable(rng);
        FundamentalInterval iv = fundamental_interval(sigma);
        long n = static_cast<long>(sigma.size());
        CHECK(oscillation(ErrorSumKind::unweighted, sigma) == Rational(n + 1) * iv.length);
        CHECK(oscillation(ErrorSumKind::relative, sigma) ==
              Rational(convergent_table(sigma).q_sum()) * iv.length);
        for (ErrorSumKind kind : {ErrorSumKind::unweighted, ErrorSumKind::relative}) {
            CylinderExtrema ex = cylinder_extrema(kind, sigma);
            CHECK(ex.max - ex.min == oscillation(kind, sigma));
        }
    }
}

TEST_CASE("composing E with phi differs from E* on non-realizable strings") {
    DigitString bad = DigitString::parse("1,1");
    CHECK(error_sum_at(phi(bad)) != error_sum(bad));
    // the gap is the sibling delta of the realizable partner, negated
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        DigitString sigma = random_realizable(rng);
        if (sigma.size() == 1 && sigma[0] == 1) continue;
        DigitString nonreal = sibling(sigma);
        Rational gap = error_sum_at(phi(nonreal)) - error_sum(nonreal);
        CHECK(gap == -error_sum_sibling_delta(sibling(nonreal)));
    }
}

TEST_CASE("truncation tails shrink and dominate the alternating remainder") {
    for (ErrorSumKind kind : {ErrorSumKind::unweighted, ErrorSumKind::relative}) {
        BigFloat prev = truncation_tail(kind, 1, 128);
        for (size_t k = 2; k <= 60; ++k) {
            BigFloat cur = truncation_tail(kind, k, 128);
            CHECK(cur < prev);
            prev = cur;
        }
    }
    // the relative tail dominates 1/F_{K+1}, the first-omitted-term bound
    for (size_t k = 1; k <= 60; ++k) {
        BigFloat t = truncation_tail(ErrorSumKind::relative, k, 128);
        double first = 1.0 / mpz_get_d(fibonacci(k + 1).get_mpz_t());
        CHECK(t.to_double() >= first);
    }
    // the unweighted tail dominates the exact series it rounds up
    for (size_t k = 1; k <= 40; ++k) {
        BigFloat t = truncation_tail(ErrorSumKind::unweighted, k, 128);
        Rational exact = 0;
        for (size_t j = k; j < k + 200; ++j)
            exact += make_rational(1, fibonacci(j + 1) * fibonacci(j + 2));
        CHECK(t.to_double() >= mpq_get_d(exact.get_mpq_t()));
    }
}

TEST_CASE("real-path evaluation at the golden section") {
    BigFloat lo(256), hi(256);
    mpfr_sqrt_ui(lo.get(), 5, MPFR_RNDD);
    mpfr_sub_ui(lo.get(), lo.get(), 1, MPFR_RNDD);
    mpfr_div_2ui(lo.get(), lo.get(), 1, MPFR_RNDD);
    mpfr_sqrt_ui(hi.get(), 5, MPFR_RNDU);
    mpfr_sub_ui(hi.get(), hi.get(), 1, MPFR_RNDU);
    mpfr_div_2ui(hi.get(), hi.get(), 1, MPFR_RNDU);
    RealInterval x{lo, hi};

    BigFloat tol = BigFloat::of(1e-12, 256);
    ErrorSumValue v = error_sum_real(ErrorSumKind::unweighted, x, tol);
    CHECK(v.status == DigitStatus::complete);
    CHECK_FALSE(v.exact);
    CHECK(v.radius.to_double() < 1e-12);

    // oracle: 10^4-term direct summation with exact Fibonacci convergents,
    // x - F_k/F_{k+1} summed at 512 bits
    BigFloat oracle(512), xm(512), term(512);
    mpfr_sqrt_ui(xm.get(), 5, MPFR_RNDN);
    mpfr_sub_ui(xm.get(), xm.get(), 1, MPFR_RNDN);
    mpfr_div_2ui(xm.get(), xm.get(), 1, MPFR_RNDN);
    FibonacciCache fib;
    for (size_t k = 0; k < 10000; ++k) {
        Rational conv = make_rational(fib.at(k), fib.at(k + 1));
        mpfr_set_q(term.get(), conv.get_mpq_t(), MPFR_RNDN);
        mpfr_sub(term.get(), xm.get(), term.get(), MPFR_RNDN);
        mpfr_add(oracle.get(), oracle.get(), term.get(), MPFR_RNDN);
    }
    double diff = std::abs(v.value.to_double() - oracle.to_double());
    CHECK(diff <= v.radius.to_double());

    // relative flavor: subtracting convergents from x and scaling by q_k
    // cancels catastrophically at high k, so the oracle uses the stable
    // algebraic form (x - F_k/F_{k+1}) F_{k+1} = 2 (-1)^k / (sqrt5 F_{k+1} + L_{k+1})
    // from L^2 - 5F^2 = +-4, with L_{k+1} = F_k + F_{k+2}
    ErrorSumValue pv = error_sum_real(ErrorSumKind::relative, x, tol);
    CHECK(pv.status == DigitStatus::complete);
    BigFloat poracle(512), sqrt5(512);
    mpfr_sqrt_ui(sqrt5.get(), 5, MPFR_RNDN);
    for (size_t k = 0; k < 10000; ++k) {
        mpz_class lucas = fib.at(k) + fib.at(k + 2);
        mpfr_mul_z(term.get(), sqrt5.get(), fib.at(k + 1).get_mpz_t(), MPFR_RNDN);
        mpfr_add_z(term.get(), term.get(), lucas.get_mpz_t(), MPFR_RNDN);
        mpfr_ui_div(term.get(), 2, term.get(), MPFR_RNDN);
        if (k % 2 == 1) mpfr_neg(term.get(), term.get(), MPFR_RNDN);
        mpfr_add(poracle.get(), poracle.get(), term.get(), MPFR_RNDN);
    }
    CHECK(std::abs(pv.value.to_double() - poracle.to_double()) <= pv.radius.to_double());
    CHECK(poracle.to_double() == doctest::Approx(pv.value.to_double()).epsilon(1e-10));
}

TEST_CASE("real-path evaluation takes the exact branch on exact inputs") {
    RealInterval half = RealInterval::of(make_rational(1, 2), 128);
    ErrorSumValue v =
        error_sum_real(ErrorSumKind::unweighted, half, BigFloat::of(1e-6, 128));
    CHECK(v.exact);
    CHECK(v.exact_value == make_rational(1, 2));
    CHECK(v.status == DigitStatus::terminated);

    RealInterval zero = RealInterval::of(Rational(0), 128);
    ErrorSumValue z = error_sum_real(ErrorSumKind::relative, zero, BigFloat::of(1e-6, 128));
    CHECK(z.exact);
    CHECK(z.exact_value == 0);
}

TEST_CASE("real-path evaluation reports precision exhaustion with a valid enclosure") {
    RealInterval third = RealInterval::of(make_rational(1, 3), 64);
    ErrorSumValue v =
        error_sum_real(ErrorSumKind::unweighted, third, BigFloat::of(1e-30, 128));
    CHECK(v.status == DigitStatus::out_of_precision);
    // enclosure must still contain the true value E(1/3) = 1/3 + (1/3 - 1/3) = 1/3
    double truth = mpq_get_d(error_sum_at(make_rational(1, 3)).get_mpq_t());
    CHECK(std::abs(v.value.to_double() - truth) <= v.radius.to_double());
    CHECK_THROWS_AS(
        error_sum_real(ErrorSumKind::unweighted, third, BigFloat::of(-1.0, 128)),
        std::domain_error);
}
