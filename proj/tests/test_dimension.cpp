#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "cfes/dimension.hpp"
#include "cfes/enumerate.hpp"
#include "cfes/series.hpp"

using namespace cfes;

TEST_CASE("cover rectangles: counts and extents") {
    SUBCASE("depth 1, caps 3 and 1") {
        std::vector<CoverRectangle> rects;
        cover_rectangles(ErrorSumKind::unweighted, 1, 3,
                         [&](const CoverRectangle& r) { rects.push_back(r); });
        REQUIRE(rects.size() == 3);
        for (const auto& r : rects) {
            CHECK(r.square_count == 2);
            CHECK(r.y_max - r.y_min == oscillation(ErrorSumKind::unweighted, r.sigma));
        }
        rects.clear();
        cover_rectangles(ErrorSumKind::unweighted, 1, 1,
                         [&](const CoverRectangle& r) { rects.push_back(r); });
        REQUIRE(rects.size() == 1);
        CHECK(rects[0].y_max - rects[0].y_min == 1);  // 2 * len(I_(1)) = 1
    }
    SUBCASE("depth 2, cap 2") {
        size_t count = 0;
        cover_rectangles(ErrorSumKind::unweighted, 2, 2, [&](const CoverRectangle& r) {
            ++count;
            CHECK(r.square_count == 3);
        });
        CHECK(count == 4);
    }
    SUBCASE("relative kind: square count is the q sum and the ceiling identity holds") {
        cover_rectangles(ErrorSumKind::relative, 2, 4, [&](const CoverRectangle& r) {
            ConvergentTable t = convergent_table(r.sigma);
            CHECK(r.square_count == t.q_sum());
            // ceil((y_max - y_min)/len) recovers the square count exactly
            Rational ratio = (r.y_max - r.y_min) / r.x_interval.length;
            mpz_class up;
            mpz_cdiv_q(up.get_mpz_t(), ratio.get_num().get_mpz_t(),
                       ratio.get_den().get_mpz_t());
            CHECK(up == r.square_count);
        });
    }
    SUBCASE("random extensions land inside their rectangle") {
        std::mt19937_64 rng(13);
        std::uniform_int_distribution<int> digit(1, 9), extra(1, 4);
        cover_rectangles(ErrorSumKind::unweighted, 2, 3, [&](const CoverRectangle& r) {
            for (int rep = 0; rep < 25; ++rep) {
                DigitString tau = r.sigma;
                int m = extra(rng);
                for (int i = 0; i < m; ++i) tau.push_back(digit(rng));
                Rational x = phi(tau), y = error_sum(tau);
                CHECK(r.x_interval.left <= x);
                CHECK(x <= r.x_interval.right);
                CHECK(r.y_min <= y);
                CHECK(y <= r.y_max);
            }
        });
    }
}

TEST_CASE("cover weight") {
    SUBCASE("single interval at eps = 0 gives sqrt 2") {
        CHECK(cover_weight(ErrorSumKind::unweighted, 1, 1, 0.0) ==
              doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("decays with depth at fixed cap") {
        double d5 = cover_weight(ErrorSumKind::unweighted, 5, 20, 0.5);
        double d10 = cover_weight(ErrorSumKind::unweighted, 10, 20, 0.5);
        CHECK(d10 < d5);
    }
    SUBCASE("relative kind is finite and positive") {
        double w = cover_weight(ErrorSumKind::relative, 5, 10, 0.0);
        CHECK(w > 0);
        CHECK(std::isfinite(w));
    }
    SUBCASE("agrees with the enumerated sum, the independent route") {
        for (size_t n : {1ul, 2ul, 3ul}) {
            for (double eps : {0.0, 0.5}) {
                FixedLengthEnumerator en(n, 6);
                DigitString sigma;
                double sum = 0;
                while (en.next(sigma)) {
                    double len = mpq_get_d(fundamental_interval(sigma).length.get_mpq_t());
                    sum += std::pow(len, 1.0 + eps);
                }
                double want = std::pow(std::sqrt(2.0), 1.0 + eps) * (n + 1) * sum;
                CHECK(cover_weight(ErrorSumKind::unweighted, n, 6, eps) ==
                      doctest::Approx(want).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("graph samples in Farey order") {
    std::vector<std::pair<Rational, Rational>> pts;
    auto sink = [&](const Rational& x, const Rational& y) { pts.emplace_back(x, y); };

    sample_graph(ErrorSumKind::unweighted, 2, sink);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0] == std::make_pair(Rational(0), Rational(0)));
    CHECK(pts[1] == std::make_pair(make_rational(1, 2), make_rational(1, 2)));

    pts.clear();
    sample_graph(ErrorSumKind::relative, 3, sink);
    bool third_seen = false;
    for (const auto& [x, y] : pts)
        if (x == make_rational(1, 3)) {
            third_seen = true;
            CHECK(y == make_rational(1, 3));
        }
    CHECK(third_seen);

    pts.clear();
    sample_graph(ErrorSumKind::unweighted, 10, sink);
    bool triple_seen = false;
    for (const auto& [x, y] : pts)
        if (x == make_rational(3, 10)) {
            triple_seen = true;
            CHECK(y == make_rational(4, 15));
        }
    CHECK(triple_seen);

    // ascending, complete, reduced
    pts.clear();
    sample_graph(ErrorSumKind::unweighted, 30, sink);
    size_t expect = 1;
    for (unsigned long q = 2; q <= 30; ++q)
        for (unsigned long p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1) ++expect;
    CHECK(pts.size() == expect);
    for (size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1].first < pts[i].first);
    for (const auto& [x, y] : pts) CHECK(x.get_den() <= 30);
}

TEST_CASE("box counting") {
    SUBCASE("distinct cells") {
        std::vector<std::pair<Rational, Rational>> one = {{make_rational(1, 3), Rational(0)}};
        CHECK(box_count(one, 3) == 1);
        std::vector<std::pair<Rational, Rational>> two = {
            {Rational(0), Rational(0)}, {make_rational(1, 2), make_rational(1, 2)}};
        CHECK(box_count(two, 1) == 2);
        // negative y cells are distinct from positive ones
        std::vector<std::pair<Rational, Rational>> neg = {
            {make_rational(1, 4), make_rational(-1, 8)},
            {make_rational(1, 4), make_rational(1, 8)}};
        CHECK(box_count(neg, 2) == 2);
        CHECK_THROWS_AS(box_count(one, 0), std::domain_error);
    }
    SUBCASE("halving the side never decreases the count") {
        std::mt19937_64 rng(19);
        std::uniform_int_distribution<long> num(0, 499), den(500, 1000);
        std::vector<std::pair<Rational, Rational>> pts;
        for (int i = 0; i < 400; ++i)
            pts.emplace_back(make_rational(num(rng), den(rng)),
                             make_rational(num(rng) - 250, den(rng)));
        for (int i = 1; i < 10; ++i) CHECK(box_count(pts, i + 1) >= box_count(pts, i));
    }
}

TEST_CASE("dimension estimate on a constant graph is a line") {
    // the graph of a constant function sampled on Farey points
    auto flat = [](const PointSink& sink) {
        sample_graph(ErrorSumKind::unweighted, 300,
                     [&](const Rational& x, const Rational&) { sink(x, Rational(0)); });
    };
    BoxCountReport rep = estimate_dimension_from(flat, 3, 8, 300);
    CHECK(std::abs(rep.slope - 1.0) < 0.05);
    CHECK(rep.residual < 0.01);
    CHECK_FALSE(rep.under_resolved);
    for (size_t k = 0; k < rep.counts.size(); ++k)
        CHECK(rep.counts[k] == (1ul << rep.scale_exponents[k]));
}

TEST_CASE("dimension report flags an under-resolved scale range") {
    BoxCountReport rep = estimate_dimension(ErrorSumKind::unweighted, 100, 3, 8);
    CHECK(rep.under_resolved);  // 2^8 cells exceed 100 distinct denominators
    BoxCountReport ok = estimate_dimension(ErrorSumKind::unweighted, 300, 3, 8);
    CHECK_FALSE(ok.under_resolved);
    CHECK(ok.samples_used > 100);
    for (size_t k = 1; k < ok.counts.size(); ++k) CHECK(ok.counts[k] >= ok.counts[k - 1]);
    CHECK_THROWS_AS(estimate_dimension(ErrorSumKind::unweighted, 1, 3, 8), std::domain_error);
}
