#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfes/rational.hpp"
#include "cfes/series.hpp"

namespace cfes {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // counts, counterexample, measured values
};

// Identity checks on seeded-random realizable strings (lengths 1..8, digits
// 1..9): recurrence determinant, Fibonacci lower bound, monotone convergent
// tail, sibling transform and value deltas, cylinder extrema attainment,
// oscillation closed forms. Deterministic for a given seed and any thread
// count.
std::vector<CheckResult> verify_lemmas(uint64_t seed, size_t strings = 1000,
                                       unsigned threads = 1);

// Exact truncated conversion identity at every cutoff in 1..50 and 100, and
// the pair-multiplicity census at the given cutoff.
std::vector<CheckResult> verify_conversion(unsigned long census_cutoff = 200);

// Series bound checks at one epsilon: the provable closed-form bounds for
// both weights, monotonicity in the cutoff, the Mobius unfold agreement,
// and the per-level Fibonacci tail estimate.
std::vector<CheckResult> verify_bounds(const Rational& epsilon, unsigned threads = 1);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace cfes
