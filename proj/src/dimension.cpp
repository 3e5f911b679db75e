#include "cfes/dimension.hpp"

#include <cmath>
#include <stdexcept>

#include "cfes/enumerate.hpp"
#include "cfes/series.hpp"

namespace cfes {

void cover_rectangles(ErrorSumKind kind, size_t n, unsigned long digit_cap,
                      const std::function<void(const CoverRectangle&)>& emit) {
    FixedLengthEnumerator en(n, digit_cap);
    DigitString sigma;
    while (en.next(sigma)) {
        CoverRectangle r;
        r.x_interval = fundamental_interval(sigma);
        CylinderExtrema ex = cylinder_extrema(kind, sigma);
        r.y_min = std::move(ex.min);
        r.y_max = std::move(ex.max);
        if (kind == ErrorSumKind::unweighted)
            r.square_count = static_cast<long>(n) + 1;
        else
            r.square_count = convergent_table(sigma).q_sum();
        r.sigma = std::move(sigma);
        emit(r);
    }
}

double cover_weight(ErrorSumKind kind, size_t n, unsigned long digit_cap, double eps) {
    if (eps < 0) throw std::domain_error("cover_weight: requires eps >= 0");
    double level = capped_level_sums(kind, eps, digit_cap, n).back();
    return std::pow(std::sqrt(2.0), 1.0 + eps) * static_cast<double>(n + 1) * level;
}

void sample_graph(ErrorSumKind kind, unsigned long denominator_cap, const PointSink& emit) {
    if (denominator_cap == 0)
        throw std::domain_error("sample_graph: denominator cap must be positive");
    emit(Rational(0), Rational(0));
    if (denominator_cap == 1) return;
    // Farey next-term recurrence over [0,1]; stop before 1/1
    unsigned long a = 0, b = 1, c = 1, d = denominator_cap;
    while (!(c == 1 && d == 1)) {
        Rational x = make_rational(c, d);
        emit(x, error_sum_at(kind, x));
        unsigned long k = (denominator_cap + b) / d;
        unsigned long e = k * c - a, f = k * d - b;
        a = c;
        b = d;
        c = e;
        d = f;
    }
}

BoxCounter::BoxCounter(int scale_exponent) : i_(scale_exponent) {
    // 28 keeps the packed cell key inside its 32-bit halves for |y| < 8
    if (scale_exponent < 1 || scale_exponent > 28)
        throw std::domain_error("box_count: scale exponent must be in 1..28");
}

void BoxCounter::add(const Rational& x, const Rational& y) {
    mpz_class sx = x.get_num() << i_, sy = y.get_num() << i_;
    mpz_class cx, cy;
    mpz_fdiv_q(cx.get_mpz_t(), sx.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_fdiv_q(cy.get_mpz_t(), sy.get_mpz_t(), y.get_den().get_mpz_t());
    long ix = cx.get_si(), iy = cy.get_si();
    cells_.insert((static_cast<uint64_t>(static_cast<uint32_t>(ix)) << 32) |
                  static_cast<uint32_t>(static_cast<int32_t>(iy)));
}

size_t box_count(const std::vector<std::pair<Rational, Rational>>& points,
                 int scale_exponent) {
    BoxCounter counter(scale_exponent);
    for (const auto& [x, y] : points) counter.add(x, y);
    return counter.count();
}

BoxCountReport estimate_dimension_from(const PointSource& source, int scale_lo, int scale_hi,
                                       unsigned long resolution_cap) {
    if (scale_lo < 1 || scale_hi < scale_lo)
        throw std::domain_error("estimate_dimension: bad scale range");
    BoxCountReport rep;
    std::vector<BoxCounter> counters;
    for (int i = scale_lo; i <= scale_hi; ++i) {
        rep.scale_exponents.push_back(i);
        counters.emplace_back(i);
    }
    size_t samples = 0;
    source([&](const Rational& x, const Rational& y) {
        ++samples;
        for (auto& c : counters) c.add(x, y);
    });
    rep.samples_used = samples;
    for (auto& c : counters) rep.counts.push_back(c.count());
    rep.under_resolved = resolution_cap > 0 && (1ul << scale_hi) > resolution_cap;

    // least squares of log2(count) on the exponent
    size_t m = rep.counts.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < m; ++k) {
        double xi = rep.scale_exponents[k];
        double yi = std::log2(static_cast<double>(rep.counts[k]));
        sx += xi;
        sy += yi;
        sxx += xi * xi;
        sxy += xi * yi;
    }
    double denom = m * sxx - sx * sx;
    rep.slope = denom != 0 ? (m * sxy - sx * sy) / denom : 0;
    double intercept = (sy - rep.slope * sx) / m;
    double rss = 0;
    for (size_t k = 0; k < m; ++k) {
        double yi = std::log2(static_cast<double>(rep.counts[k]));
        double fit = rep.slope * rep.scale_exponents[k] + intercept;
        rss += (yi - fit) * (yi - fit);
    }
    rep.residual = std::sqrt(rss / m);
    return rep;
}

BoxCountReport estimate_dimension(ErrorSumKind kind, unsigned long denominator_cap,
                                  int scale_lo, int scale_hi) {
    if (denominator_cap < 2)
        throw std::domain_error("estimate_dimension: denominator cap must be >= 2");
    return estimate_dimension_from(
        [&](const PointSink& sink) { sample_graph(kind, denominator_cap, sink); }, scale_lo,
        scale_hi, denominator_cap);
}

}  // namespace cfes
