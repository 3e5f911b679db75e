#pragma once

#include <cstdint>
#include <functional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cfes/error_sum.hpp"
#include "cfes/interval.hpp"
#include "cfes/rational.hpp"

namespace cfes {

// One covering rectangle I_sigma x [min, max] of the graph over the
// fundamental interval, plus the number of axis-aligned squares of side
// len(I_sigma) needed to tile it: n+1 for E, sum_k q_k for P.
struct CoverRectangle {
    DigitString sigma;
    FundamentalInterval x_interval;
    Rational y_min, y_max;
    mpz_class square_count;
};

void cover_rectangles(ErrorSumKind kind, size_t n, unsigned long digit_cap,
                      const std::function<void(const CoverRectangle&)>& emit);

// (sqrt 2)^(1+eps) * (n+1) * (digit-capped level sum): the weighted cover
// mass contributed by depth n.
double cover_weight(ErrorSumKind kind, size_t n, unsigned long digit_cap, double eps);

using PointSink = std::function<void(const Rational& x, const Rational& y)>;

// (x, E(x)) or (x, P(x)) at every reduced fraction x = p/q with
// 0 <= p < q <= denominator_cap, ascending (Farey) order, exact values.
void sample_graph(ErrorSumKind kind, unsigned long denominator_cap, const PointSink& emit);

// Occupied cells of the dyadic grid with side 2^-scale_exponent. Exact
// rational floor arithmetic; y may be negative.
class BoxCounter {
  public:
    explicit BoxCounter(int scale_exponent);
    void add(const Rational& x, const Rational& y);
    size_t count() const { return cells_.size(); }
    int scale_exponent() const { return i_; }

  private:
    int i_;
    std::unordered_set<uint64_t> cells_;
};

size_t box_count(const std::vector<std::pair<Rational, Rational>>& points,
                 int scale_exponent);

struct BoxCountReport {
    std::vector<int> scale_exponents;  // side = 2^-i, ascending i
    std::vector<size_t> counts;
    double slope = 0;     // least-squares fit of log2(count) against i
    double residual = 0;  // rms residual of the fit
    size_t samples_used = 0;
    bool under_resolved = false;  // finest side smaller than sample spacing
};

using PointSource = std::function<void(const PointSink&)>;

BoxCountReport estimate_dimension_from(const PointSource& source, int scale_lo, int scale_hi,
                                       unsigned long resolution_cap);

BoxCountReport estimate_dimension(ErrorSumKind kind, unsigned long denominator_cap,
                                  int scale_lo, int scale_hi);

}  // namespace cfes
