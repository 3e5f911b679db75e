#include "cfes/series.hpp"

#include <atomic>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "cfes/enumerate.hpp"
#include "cfes/numtheory.hpp"

namespace cfes {

Rational string_side_sum(const RationalWeight& weight, unsigned long cutoff) {
    DenominatorBoundedEnumerator en(cutoff);
    EnumeratedString item;
    Rational sum = 0;
    while (en.next(item)) sum += weight(item.q_n, item.q_prev);
    return sum;
}

Rational pair_side_sum(const RationalWeight& weight, unsigned long cutoff) {
    Rational sum = -2 * weight(1, 0) + weight(1, 1);
    for (unsigned long j = 1; j <= cutoff; ++j)
        for (unsigned long k = 0; k < j; ++k)
            if (std::gcd(j, k) == 1) sum += 2 * weight(j, k);
    return sum;
}

unsigned long enumeration_census(unsigned long cutoff) {
    DenominatorBoundedEnumerator en(cutoff);
    EnumeratedString item;
    unsigned long count = 0;
    while (en.next(item)) ++count;
    return count;
}

namespace {

void validate_eps(ErrorSumKind kind, const Rational& eps) {
    if (kind == ErrorSumKind::unweighted) {
        if (eps <= 0) throw std::domain_error("series: requires eps > 0");
    } else if (eps <= Rational(1, 2)) {
        throw std::domain_error("series bound requires eps > 1/2");
    }
}

// m^-s tables for m = 1..limit, bracketed.
struct PowerTable {
    std::vector<BigFloat> lo, hi;
    PowerTable(unsigned long limit, const Rational& s, mpfr_prec_t prec) {
        lo.reserve(limit + 1);
        hi.reserve(limit + 1);
        lo.emplace_back(prec);  // unused slot 0
        hi.emplace_back(prec);
        for (unsigned long m = 1; m <= limit; ++m) {
            lo.push_back(pow_inv_lo(m, s, prec));
            hi.push_back(pow_inv_hi(m, s, prec));
        }
    }
};

// Runs make(chunk) for chunk = 0..nchunks-1 on `threads` workers and hands
// the results back in chunk order, so reductions are independent of the
// thread count.
template <typename T, typename Fn>
std::vector<T> run_chunks(size_t nchunks, unsigned threads, Fn&& make) {
    std::vector<T> out(nchunks);
    if (threads <= 1 || nchunks <= 1) {
        for (size_t c = 0; c < nchunks; ++c) out[c] = make(c);
        return out;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            out[c] = make(c);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

struct Bracket {
    BigFloat lo, hi;
};

// 2 * sum_{2<=j<=cutoff} sum_{1<=k<j, gcd=1} Phi(j,k) with outward rounding.
// relative kind: Phi = j^-eps (j+k)^-(1+eps); unweighted: j and j+k both get
// the 1+eps exponent.
Bracket coprime_tail_sum(ErrorSumKind kind, const Rational& eps, unsigned long cutoff,
                         unsigned threads, mpfr_prec_t prec) {
    Rational s1 = 1 + eps;
    PowerTable outer(2 * cutoff, s1, prec);
    const PowerTable* jfac = &outer;
    std::unique_ptr<PowerTable> rel;
    if (kind == ErrorSumKind::relative) {
        rel = std::make_unique<PowerTable>(cutoff, eps, prec);
        jfac = rel.get();
    }

    constexpr unsigned long kChunk = 512;
    size_t nchunks = cutoff >= 2 ? (cutoff - 1 + kChunk - 1) / kChunk : 0;
    auto chunks = run_chunks<Bracket>(nchunks, threads, [&](size_t c) {
        unsigned long j0 = 2 + c * kChunk;
        unsigned long j1 = std::min<unsigned long>(j0 + kChunk - 1, cutoff);
        Bracket b{BigFloat(prec), BigFloat(prec)};
        BigFloat t(prec);
        for (unsigned long j = j0; j <= j1; ++j) {
            for (unsigned long k = 1; k < j; ++k) {
                if (std::gcd(j, k) != 1) continue;
                mpfr_mul(t.get(), jfac->lo[j].get(), outer.lo[j + k].get(), MPFR_RNDD);
                mpfr_add(b.lo.get(), b.lo.get(), t.get(), MPFR_RNDD);
                mpfr_mul(t.get(), jfac->hi[j].get(), outer.hi[j + k].get(), MPFR_RNDU);
                mpfr_add(b.hi.get(), b.hi.get(), t.get(), MPFR_RNDU);
            }
        }
        return b;
    });

    Bracket total{BigFloat(prec), BigFloat(prec)};
    for (const auto& b : chunks) {
        mpfr_add(total.lo.get(), total.lo.get(), b.lo.get(), MPFR_RNDD);
        mpfr_add(total.hi.get(), total.hi.get(), b.hi.get(), MPFR_RNDU);
    }
    mpfr_mul_2ui(total.lo.get(), total.lo.get(), 1, MPFR_RNDD);
    mpfr_mul_2ui(total.hi.get(), total.hi.get(), 1, MPFR_RNDU);
    return total;
}

// zeta(a)/zeta(b) as an outward bracket.
Bracket zeta_ratio(const Rational& a, const Rational& b, unsigned long terms,
                   mpfr_prec_t prec) {
    ZetaEnclosure za = zeta_partial(a, terms, prec);
    ZetaEnclosure zb = zeta_partial(b, terms, prec);
    Bracket r{za.lo(), za.hi()};
    r.lo.div(zb.hi(), MPFR_RNDD);
    r.hi.div(zb.lo(), MPFR_RNDU);
    return r;
}

}  // namespace

SeriesReport series_partial(ErrorSumKind kind, const Rational& eps, unsigned long cutoff,
                            const SeriesOptions& opt) {
    validate_eps(kind, eps);
    if (cutoff == 0) throw std::domain_error("series: cutoff must be positive");
    mpfr_prec_t prec = opt.prec;

    SeriesReport rep;
    rep.kind = kind;
    rep.epsilon = eps;
    rep.cutoff = cutoff;
    rep.near_divergence =
        kind == ErrorSumKind::relative && eps - Rational(1, 2) < Rational(1, 10);

    // partial = Phi(1,1) + 2 sum_{j>=2} ... ; the -2 Phi(1,0) term cancels
    // against the j = 1 pair term, and Phi(1,1) = 2^-(1+eps) for both kinds.
    Rational s1 = 1 + eps;
    rep.partial_lo = pow_inv_lo(2, s1, prec);
    rep.partial_hi = pow_inv_hi(2, s1, prec);
    Bracket tail = coprime_tail_sum(kind, eps, cutoff, opt.threads, prec);
    rep.partial_lo.add(tail.lo, MPFR_RNDD);
    rep.partial_hi.add(tail.hi, MPFR_RNDU);

    // closed-form full-series bound; see header
    Rational za = kind == ErrorSumKind::unweighted ? Rational(1 + 2 * eps) : Rational(2 * eps);
    Rational zb = kind == ErrorSumKind::unweighted ? Rational(2 + 2 * eps) : Rational(1 + 2 * eps);
    Bracket ratio = zeta_ratio(za, zb, opt.zeta_terms, prec);
    rep.bound_lo = pow_inv_lo(2, s1, prec);
    mpfr_mul_2ui(ratio.lo.get(), ratio.lo.get(), 1, MPFR_RNDD);
    rep.bound_lo.add(ratio.lo, MPFR_RNDD);
    mpfr_sub_ui(rep.bound_lo.get(), rep.bound_lo.get(), 2, MPFR_RNDD);
    rep.bound_hi = pow_inv_hi(2, s1, prec);
    mpfr_mul_2ui(ratio.hi.get(), ratio.hi.get(), 1, MPFR_RNDU);
    rep.bound_hi.add(ratio.hi, MPFR_RNDU);
    mpfr_sub_ui(rep.bound_hi.get(), rep.bound_hi.get(), 2, MPFR_RNDU);

    rep.bound_satisfied = rep.partial_hi <= rep.bound_lo;

    rep.level_digit_cap = opt.level_digit_cap;
    if (opt.level_count > 0 && opt.level_digit_cap > 0) {
        auto levels = capped_level_sums(kind, mpq_get_d(eps.get_mpq_t()),
                                        opt.level_digit_cap, opt.level_count);
        for (size_t n = 1; n <= levels.size(); ++n)
            rep.levels.push_back(
                SeriesLevel{n, levels[n - 1], static_cast<double>(n + 1) * levels[n - 1]});
    }
    return rep;
}

UnfoldPair mobius_unfold_pair(const Rational& eps, unsigned long cutoff, mpfr_prec_t prec) {
    if (eps <= 0) throw std::domain_error("series: requires eps > 0");
    Rational s1 = 1 + eps;
    UnfoldPair out{BigFloat(prec), BigFloat(prec)};
    if (cutoff < 2) return out;

    // t[m] = m^-(1+eps), T[m] = t[1] + .. + t[m]
    std::vector<BigFloat> t, T;
    t.reserve(2 * cutoff + 1);
    T.reserve(2 * cutoff + 1);
    t.emplace_back(prec);
    T.emplace_back(prec);
    BigFloat e(prec);
    mpfr_set_q(e.get(), s1.get_mpq_t(), MPFR_RNDN);
    e.neg();
    for (unsigned long m = 1; m <= 2 * cutoff; ++m) {
        BigFloat v(prec);
        mpfr_ui_pow(v.get(), m, e.get(), MPFR_RNDN);
        BigFloat c = T.back();
        c.add(v, MPFR_RNDN);
        t.push_back(std::move(v));
        T.push_back(std::move(c));
    }

    BigFloat tmp(prec);
    for (unsigned long j = 2; j <= cutoff; ++j)
        for (unsigned long k = 1; k < j; ++k)
            if (std::gcd(j, k) == 1) {
                mpfr_mul(tmp.get(), t[j].get(), t[j + k].get(), MPFR_RNDN);
                mpfr_add(out.direct.get(), out.direct.get(), tmp.get(), MPFR_RNDN);
            }

    // U[M] = sum_{j<=M} sum_{1<=k<j} t[j] t[j+k] = sum_j t[j] (T[2j-1] - T[j])
    std::vector<BigFloat> U;
    U.reserve(cutoff + 1);
    U.emplace_back(prec);
    BigFloat acc(prec);
    for (unsigned long j = 1; j <= cutoff; ++j) {
        mpfr_sub(tmp.get(), T[2 * j - 1].get(), T[j].get(), MPFR_RNDN);
        mpfr_mul(tmp.get(), tmp.get(), t[j].get(), MPFR_RNDN);
        mpfr_add(acc.get(), acc.get(), tmp.get(), MPFR_RNDN);
        U.push_back(acc);
    }

    MultiplicativeSieve sieve(cutoff);
    Rational s2 = 2 + 2 * eps;
    BigFloat e2(prec);
    mpfr_set_q(e2.get(), s2.get_mpq_t(), MPFR_RNDN);
    e2.neg();
    for (unsigned long d = 1; d <= cutoff; ++d) {
        int mu = sieve.mobius(d);
        if (mu == 0) continue;
        mpfr_ui_pow(tmp.get(), d, e2.get(), MPFR_RNDN);
        mpfr_mul(tmp.get(), tmp.get(), U[cutoff / d].get(), MPFR_RNDN);
        if (mu > 0)
            mpfr_add(out.unfolded.get(), out.unfolded.get(), tmp.get(), MPFR_RNDN);
        else
            mpfr_sub(out.unfolded.get(), out.unfolded.get(), tmp.get(), MPFR_RNDN);
    }
    return out;
}

namespace {

// Chebyshev-Lobatto nodes on [0,1] with second-form barycentric evaluation.
struct ChebGrid {
    std::vector<double> x, w;
    explicit ChebGrid(size_t n_points) {
        size_t N = n_points - 1;
        x.resize(n_points);
        w.resize(n_points);
        for (size_t i = 0; i < n_points; ++i) {
            x[i] = 0.5 * (1.0 + std::cos(M_PI * static_cast<double>(i) / N));
            w[i] = (i % 2 == 0 ? 1.0 : -1.0);
        }
        w.front() *= 0.5;
        w.back() *= 0.5;
    }
    double eval(const std::vector<double>& f, double y) const {
        double num = 0, den = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            double d = y - x[i];
            if (d == 0.0) return f[i];
            double c = w[i] / d;
            num += c * f[i];
            den += c;
        }
        return num / den;
    }
};

}  // namespace

std::vector<double> capped_level_sums(ErrorSumKind kind, double eps, unsigned long digit_cap,
                                      size_t n_max) {
    if (eps < 0) throw std::domain_error("series: requires eps >= 0");
    if (digit_cap == 0 || n_max == 0)
        throw std::domain_error("series: digit cap and level count must be positive");
    double two_s = kind == ErrorSumKind::unweighted ? 2 + 2 * eps : 1 + 2 * eps;

    constexpr size_t kPoints = 65;
    ChebGrid grid(kPoints);
    // per-node pullbacks: coefficient (d+x)^-2s and target 1/(d+x)
    std::vector<std::vector<double>> coef(kPoints), target(kPoints);
    for (size_t i = 0; i < kPoints; ++i) {
        coef[i].resize(digit_cap);
        target[i].resize(digit_cap);
        for (unsigned long d = 1; d <= digit_cap; ++d) {
            double base = static_cast<double>(d) + grid.x[i];
            coef[i][d - 1] = std::pow(base, -two_s);
            target[i][d - 1] = 1.0 / base;
        }
    }

    std::vector<double> f(kPoints), nf(kPoints);
    for (size_t i = 0; i < kPoints; ++i) f[i] = std::pow(1.0 + grid.x[i], -(1.0 + eps));

    std::vector<double> out;
    out.reserve(n_max);
    for (size_t n = 1; n <= n_max; ++n) {
        for (size_t i = 0; i < kPoints; ++i) {
            double acc = 0;
            for (unsigned long d = 0; d < digit_cap; ++d)
                acc += coef[i][d] * grid.eval(f, target[i][d]);
            nf[i] = acc;
        }
        f.swap(nf);
        out.push_back(f.back());  // node x = 0
    }
    return out;
}

std::vector<LevelTailRow> fibonacci_tail_report(const Rational& eps, size_t n_max,
                                                unsigned long digit_cap) {
    if (eps <= Rational(1, 2)) throw std::domain_error("series bound requires eps > 1/2");
    double e = mpq_get_d(eps.get_mpq_t());
    auto values = capped_level_sums(ErrorSumKind::relative, e, digit_cap, n_max);
    std::vector<LevelTailRow> rows;
    rows.reserve(n_max);
    for (size_t n = 1; n <= n_max; ++n) {
        double fn = mpz_get_d(fibonacci(n).get_mpz_t());
        double bound = 1.0 / ((2 * e - 1) * std::pow(fn, 2 * e - 1));
        double v = values[n - 1];
        rows.push_back(LevelTailRow{n, v, bound, v <= bound});
    }
    return rows;
}

}  // namespace cfes
