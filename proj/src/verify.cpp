#include "cfes/verify.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include "cfes/cf.hpp"
#include "cfes/enumerate.hpp"
#include "cfes/error_sum.hpp"
#include "cfes/interval.hpp"
#include "cfes/numtheory.hpp"

namespace cfes {

bool all_pass(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

namespace {

DigitString random_realizable_string(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> len(1, 8), digit(1, 9), last(2, 9);
    int n = len(rng);
    std::vector<mpz_class> d;
    d.reserve(n);
    for (int i = 0; i + 1 < n; ++i) d.emplace_back(digit(rng));
    d.emplace_back(last(rng));
    return DigitString(std::move(d));
}

struct LemmaFailures {
    // one slot per check; empty string = no failure seen
    std::vector<std::string> first_failure;
    std::vector<long> failures;
    explicit LemmaFailures(size_t checks) : first_failure(checks), failures(checks, 0) {}
    void note(size_t check, const DigitString& sigma, bool ok) {
        if (ok) return;
        ++failures[check];
        if (first_failure[check].empty()) first_failure[check] = sigma.str();
    }
    void merge(const LemmaFailures& o) {
        for (size_t i = 0; i < failures.size(); ++i) {
            failures[i] += o.failures[i];
            if (first_failure[i].empty()) first_failure[i] = o.first_failure[i];
        }
    }
};

constexpr size_t kLemmaChecks = 8;
const char* kLemmaNames[kLemmaChecks] = {
    "determinant identity p_{k+1} q_k - p_k q_{k+1} = (-1)^k",
    "Fibonacci lower bound q_k >= F_{k+1}",
    "monotone alternating tail (-1)^k (phi - phi_k)",
    "sibling transform shifts the last convergent by the previous one",
    "sibling delta for the unweighted sum",
    "sibling delta for the relative sum",
    "cylinder extrema attained at the witness strings",
    "oscillation equals the cylinder spread",
};

void run_lemma_checks(const DigitString& sigma, std::mt19937_64& rng, LemmaFailures& out) {
    ConvergentTable t = convergent_table(sigma);
    long n = static_cast<long>(t.levels());

    bool ok = true;
    for (long k = -1; k < n; ++k) {
        mpz_class det = t.p_at(k + 1) * t.q_at(k) - t.p_at(k) * t.q_at(k + 1);
        ok = ok && det == (k % 2 == 0 ? 1 : -1);
    }
    out.note(0, sigma, ok);

    ok = true;
    for (long k = 0; k <= n; ++k) ok = ok && t.q_at(k) >= fibonacci(k + 1);
    out.note(1, sigma, ok);

    Rational val = t.value_at(n);
    ok = true;
    Rational prev;
    for (long k = 0; k <= n; ++k) {
        Rational a = val - t.value_at(k);
        if (k % 2 == 1) a = -a;
        ok = ok && sgn(a) >= 0 && (k == 0 || a <= prev);
        prev = a;
    }
    out.note(2, sigma, ok);

    DigitString sib = sibling(sigma);
    ConvergentTable ts = convergent_table(sib);
    ok = ts.p_at(n) == t.p_at(n) - t.p_at(n - 1) && ts.q_at(n) == t.q_at(n) - t.q_at(n - 1) &&
         phi(sib) == val && sibling(sib) == sigma;
    out.note(3, sigma, ok);

    Rational e_here = error_sum(sigma);
    Rational e_sib = error_sum(sib);
    out.note(4, sigma, e_sib - e_here == error_sum_sibling_delta(sigma));

    Rational p_here = relative_error_sum(sigma);
    Rational p_sib = relative_error_sum(sib);
    out.note(5, sigma, p_sib - p_here == relative_error_sum_sibling_delta(sigma));

    ok = true;
    std::uniform_int_distribution<int> extra(1, 3), digit(1, 9);
    for (ErrorSumKind kind : {ErrorSumKind::unweighted, ErrorSumKind::relative}) {
        CylinderExtrema ex = cylinder_extrema(kind, sigma);
        ok = ok && error_sum(kind, ex.argmin) == ex.min && error_sum(kind, ex.argmax) == ex.max;
        for (int rep = 0; rep < 4; ++rep) {
            DigitString tau = sigma;
            int m = extra(rng);
            for (int i = 0; i < m; ++i) tau.push_back(digit(rng));
            Rational v = error_sum(kind, tau);
            ok = ok && ex.min <= v && v <= ex.max;
        }
        ok = ok && ex.max - ex.min == ex.spread &&
             oscillation(kind, sigma) == ex.spread;
    }
    out.note(6, sigma, ok);

    Rational len = fundamental_interval(sigma).length;
    out.note(7, sigma,
             oscillation(ErrorSumKind::unweighted, sigma) == Rational(n + 1) * len &&
                 oscillation(ErrorSumKind::relative, sigma) ==
                     Rational(convergent_table(sigma).q_sum()) * len);
}

std::string count_detail(size_t strings, long failures, const std::string& witness) {
    std::ostringstream os;
    os << strings << " strings";
    if (failures > 0) os << ", " << failures << " failures, first at sigma=" << witness;
    return os.str();
}

}  // namespace

std::vector<CheckResult> verify_lemmas(uint64_t seed, size_t strings, unsigned threads) {
    // fixed chunking so the report is identical for any thread count
    constexpr size_t kChunk = 64;
    size_t nchunks = (strings + kChunk - 1) / kChunk;
    std::vector<LemmaFailures> partials(nchunks, LemmaFailures(kLemmaChecks));

    auto work = [&](size_t c) {
        // per-chunk generator: stream index = chunk
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (c + 1));
        size_t lo = c * kChunk, hi = std::min(strings, lo + kChunk);
        for (size_t i = lo; i < hi; ++i) {
            DigitString sigma = random_realizable_string(rng);
            run_lemma_checks(sigma, rng, partials[c]);
        }
    };
    if (threads <= 1) {
        for (size_t c = 0; c < nchunks; ++c) work(c);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    size_t c = next.fetch_add(1);
                    if (c >= nchunks) return;
                    work(c);
                }
            });
        for (auto& t : pool) t.join();
    }

    LemmaFailures total(kLemmaChecks);
    for (const auto& p : partials) total.merge(p);

    std::vector<CheckResult> out;
    for (size_t i = 0; i < kLemmaChecks; ++i)
        out.push_back(CheckResult{kLemmaNames[i], total.failures[i] == 0,
                                  count_detail(strings, total.failures[i], total.first_failure[i])});
    return out;
}

std::vector<CheckResult> verify_conversion(unsigned long census_cutoff) {
    std::vector<CheckResult> out;
    RationalWeight squared = [](unsigned long j, unsigned long k) {
        mpz_class a(j), b(j + k);
        return make_rational(1, a * a * b * b);
    };

    bool ok = true;
    std::string witness;
    for (unsigned long cutoff = 1; cutoff <= 100; cutoff = (cutoff == 50 ? 100 : cutoff + 1)) {
        if (string_side_sum(squared, cutoff) != pair_side_sum(squared, cutoff)) {
            ok = false;
            witness = "J=" + std::to_string(cutoff);
            break;
        }
    }
    out.push_back(CheckResult{"conversion identity exact at J=1..50,100", ok,
                              ok ? "structural equality" : witness});

    MultiplicativeSieve sieve(census_cutoff);
    unsigned long expect = 1;
    for (unsigned long j = 2; j <= census_cutoff; ++j) expect += 2 * sieve.euler_phi(j);
    unsigned long got = enumeration_census(census_cutoff);
    out.push_back(CheckResult{
        "pair-multiplicity census at J=" + std::to_string(census_cutoff), got == expect,
        "strings=" + std::to_string(got) + " expected=" + std::to_string(expect)});
    return out;
}

std::vector<CheckResult> verify_bounds(const Rational& epsilon, unsigned threads) {
    std::vector<CheckResult> out;
    SeriesOptions opt;
    opt.threads = threads;
    opt.level_count = 0;

    {
        SeriesReport r100 = series_partial(ErrorSumKind::unweighted, epsilon, 100, opt);
        SeriesReport r1000 = series_partial(ErrorSumKind::unweighted, epsilon, 1000, opt);
        bool mono = r100.partial_hi <= r1000.partial_hi;
        out.push_back(CheckResult{"unweighted series partial sums non-decreasing in J",
                                  mono,
                                  "J=100: " + r100.partial_hi.str(8) +
                                      ", J=1000: " + r1000.partial_hi.str(8)});
        out.push_back(
            CheckResult{"unweighted series below -2 + 2^-(1+eps) + 2 zeta(1+2eps)/zeta(2+2eps)",
                        r1000.bound_satisfied,
                        "partial<=" + r1000.partial_hi.str(8) +
                            " bound>=" + r1000.bound_lo.str(8)});
    }
    if (epsilon > Rational(1, 2)) {
        SeriesReport rel = series_partial(ErrorSumKind::relative, epsilon, 1000, opt);
        out.push_back(
            CheckResult{"relative series below -2 + 2^-(1+eps) + 2 zeta(2eps)/zeta(1+2eps)",
                        rel.bound_satisfied,
                        "partial<=" + rel.partial_hi.str(8) + " bound>=" + rel.bound_lo.str(8)});
        auto rows = fibonacci_tail_report(epsilon, 30, 50);
        bool ok = true;
        size_t bad = 0;
        for (const auto& r : rows)
            if (!r.ok) {
                ok = false;
                bad = r.n;
                break;
            }
        out.push_back(CheckResult{"per-level tail below 1/((2eps-1) F_n^(2eps-1)) for n<=30",
                                  ok, ok ? "30 levels, digit cap 50"
                                         : "fails at n=" + std::to_string(bad)});
    }
    {
        UnfoldPair u = mobius_unfold_pair(epsilon, 500);
        BigFloat diff = u.direct;
        diff.sub(u.unfolded, MPFR_RNDN);
        mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
        BigFloat tol = u.direct;
        tol.mul(BigFloat::of(1e-3), MPFR_RNDN);
        mpfr_abs(tol.get(), tol.get(), MPFR_RNDN);
        out.push_back(CheckResult{"Mobius unfold agrees with the direct coprime sum",
                                  diff <= tol,
                                  "direct=" + u.direct.str(12) +
                                      " unfolded=" + u.unfolded.str(12)});
    }
    return out;
}

}  // namespace cfes
