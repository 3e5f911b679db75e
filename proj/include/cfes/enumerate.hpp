#pragma once

#include <functional>

#include "cfes/cf.hpp"
#include "cfes/interval.hpp"
#include "cfes/rational.hpp"

namespace cfes {

// All digit_cap^n strings of exactly `length` digits drawn from 1..digit_cap,
// lexicographic order, produced lazily.
class FixedLengthEnumerator {
  public:
    FixedLengthEnumerator(size_t length, unsigned long digit_cap);
    bool next(DigitString& out);  // false once exhausted

  private:
    size_t length_;
    unsigned long cap_;
    std::vector<unsigned long> odometer_;
    bool fresh_ = true, done_ = false;
};

struct EnumeratedString {
    DigitString sigma;
    unsigned long q_n = 0, q_prev = 0;
};

// Depth-first walk of the convergent recurrence tree q' = d*q + q_prev,
// smallest digit first, parent before children: every string with
// q_n(sigma) <= cutoff, each exactly once. The multiset of (q_n, q_prev)
// pairs it emits is {(1,1)} plus every coprime pair (j,k), 1 <= k < j <=
// cutoff, exactly twice.
class DenominatorBoundedEnumerator {
  public:
    explicit DenominatorBoundedEnumerator(unsigned long cutoff);
    bool next(EnumeratedString& out);

  private:
    struct Frame {
        unsigned long q_prev, q, next_digit;
    };
    unsigned long cutoff_;
    std::vector<Frame> stack_;
    std::vector<unsigned long> path_;
};

// Sum of the lengths of I_sigma over all sigma of length n with digits
// <= digit_cap; verifies on the way that the enumerated intervals are
// pairwise disjoint. Exact; always < 1, increasing toward 1 in digit_cap.
Rational total_interval_length(size_t n, unsigned long digit_cap);

}  // namespace cfes
