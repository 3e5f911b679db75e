#pragma once

#include <functional>
#include <vector>

#include "cfes/bigfloat.hpp"
#include "cfes/error_sum.hpp"
#include "cfes/rational.hpp"

namespace cfes {

// Rational-valued weight on convergent-denominator pairs (j, k).
using RationalWeight = std::function<Rational(unsigned long j, unsigned long k)>;

// The two sides of the summation conversion identity, truncated at
// q_n <= cutoff. They agree exactly at every cutoff: each coprime pair
// (j, k) with 1 <= k < j <= cutoff is hit by exactly two digit strings,
// (1,1) by one, and the (1,0) term cancels.
Rational string_side_sum(const RationalWeight& weight, unsigned long cutoff);
Rational pair_side_sum(const RationalWeight& weight, unsigned long cutoff);

// Census of the denominator-bounded enumeration: number of strings emitted,
// which must equal 1 + 2 * sum_{j=2..cutoff} euler_phi(j).
unsigned long enumeration_census(unsigned long cutoff);

struct SeriesLevel {
    size_t n;
    double value;               // digit-capped level sum a_n or b_n
    double n_plus_1_times_value;
};

// Truncated series total with a rigorous bracket, plus the closed-form
// full-series bound (enclosure-respecting: bound_lo is safe to compare
// against partial_hi).
struct SeriesReport {
    ErrorSumKind kind = ErrorSumKind::unweighted;
    Rational epsilon;
    unsigned long cutoff = 0;
    BigFloat partial_lo, partial_hi;
    BigFloat bound_lo, bound_hi;
    bool bound_satisfied = false;  // partial_hi <= bound_lo
    bool near_divergence = false;  // relative kind close to eps = 1/2
    unsigned long level_digit_cap = 0;
    std::vector<SeriesLevel> levels;
};

struct SeriesOptions {
    unsigned threads = 1;
    mpfr_prec_t prec = BigFloat::kDefaultPrec;
    unsigned long zeta_terms = 100000;
    unsigned long level_digit_cap = 20;
    size_t level_count = 40;
};

// Sum over all digit strings with q_n <= cutoff of the interval-length
// weight: (j(j+k))^-(1+eps) for the unweighted kind (level sums a_n),
// j^-eps (j+k)^-(1+eps) for the relative kind (level sums b_n). Evaluated
// through the coprime-pair side with outward rounding; deterministic for
// any thread count. Unweighted kind requires eps > 0; relative requires
// eps > 1/2 (the series diverges otherwise). The reported bound is the
// provable full-series bound:
//   unweighted: -2 + 2^-(1+eps) + 2 zeta(1+2eps)/zeta(2+2eps)
//   relative:   -2 + 2^-(1+eps) + 2 zeta(2eps)/zeta(1+2eps)
SeriesReport series_partial(ErrorSumKind kind, const Rational& eps, unsigned long cutoff,
                            const SeriesOptions& opt = {});

// The coprime double sum computed two ways: directly, and unfolded through
// mu(d) d^-(2+2eps) over scaled unrestricted sums. Inner sums run over
// 1 <= k < j; the truncated identity is exact, so the two agree to rounding.
struct UnfoldPair {
    BigFloat direct, unfolded;
};
UnfoldPair mobius_unfold_pair(const Rational& eps, unsigned long cutoff,
                              mpfr_prec_t prec = BigFloat::kDefaultPrec);

// Level sums over the digit-capped window {1..digit_cap}^n for n = 1..n_max,
// computed by iterating the weighted transfer operator
//   (L f)(x) = sum_{d<=cap} (d+x)^-2s f(1/(d+x)),  f0(y) = (1+y)^-(1+eps),
// whose n-th iterate at 0 equals the level sum (2s = 2+2eps for the
// unweighted weight, 1+2eps for the relative one). Chebyshev interpolation;
// equivalence-tested against exhaustive enumeration at small sizes.
std::vector<double> capped_level_sums(ErrorSumKind kind, double eps, unsigned long digit_cap,
                                      size_t n_max);

// Per-level check of truncated b_n against the Fibonacci tail estimate
// 1/((2eps-1) F_n^(2eps-1)); truncation only lowers b_n, so ok must hold.
struct LevelTailRow {
    size_t n;
    double value, bound;
    bool ok;
};
std::vector<LevelTailRow> fibonacci_tail_report(const Rational& eps, size_t n_max,
                                                unsigned long digit_cap);

}  // namespace cfes
