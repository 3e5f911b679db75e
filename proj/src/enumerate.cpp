#include "cfes/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfes {

FixedLengthEnumerator::FixedLengthEnumerator(size_t length, unsigned long digit_cap)
    : length_(length), cap_(digit_cap), odometer_(length, 1) {
    if (length == 0) throw std::domain_error("enumerate: length must be positive");
    if (digit_cap == 0) throw std::domain_error("enumerate: digit cap must be positive");
}

bool FixedLengthEnumerator::next(DigitString& out) {
    if (done_) return false;
    if (!fresh_) {
        size_t i = length_;
        while (i > 0) {
            if (odometer_[i - 1] < cap_) {
                ++odometer_[i - 1];
                break;
            }
            odometer_[i - 1] = 1;
            --i;
        }
        if (i == 0) {
            done_ = true;
            return false;
        }
    }
    fresh_ = false;
    std::vector<mpz_class> d(odometer_.begin(), odometer_.end());
    out = DigitString(std::move(d));
    return true;
}

DenominatorBoundedEnumerator::DenominatorBoundedEnumerator(unsigned long cutoff)
    : cutoff_(cutoff) {
    if (cutoff == 0) throw std::domain_error("enumerate: cutoff must be positive");
    stack_.push_back(Frame{0, 1, 1});  // seeds q_{-1} = 0, q_0 = 1
}

bool DenominatorBoundedEnumerator::next(EnumeratedString& out) {
    while (!stack_.empty()) {
        Frame& top = stack_.back();
        // q grows with the digit, so the first overflowing digit closes the node
        unsigned long max_d = (cutoff_ - top.q_prev) / top.q;
        if (top.next_digit <= max_d) {
            unsigned long d = top.next_digit++;
            unsigned long q_new = d * top.q + top.q_prev;
            path_.push_back(d);
            std::vector<mpz_class> digits(path_.begin(), path_.end());
            out.sigma = DigitString(std::move(digits));
            out.q_n = q_new;
            out.q_prev = top.q;
            stack_.push_back(Frame{top.q, q_new, 1});
            return true;
        }
        stack_.pop_back();
        if (!path_.empty()) path_.pop_back();
    }
    return false;
}

Rational total_interval_length(size_t n, unsigned long digit_cap) {
    FixedLengthEnumerator en(n, digit_cap);
    DigitString sigma;
    std::vector<FundamentalInterval> ivs;
    Rational total = 0;
    while (en.next(sigma)) {
        FundamentalInterval iv = fundamental_interval(sigma);
        total += iv.length;
        ivs.push_back(std::move(iv));
    }
    std::sort(ivs.begin(), ivs.end(),
              [](const FundamentalInterval& a, const FundamentalInterval& b) {
                  return a.left < b.left;
              });
    for (size_t i = 1; i < ivs.size(); ++i) {
        const auto& a = ivs[i - 1];
        const auto& b = ivs[i];
        bool disjoint = a.right < b.left ||
                        (a.right == b.left && !(a.right_closed && b.left_closed));
        if (!disjoint)
            throw std::logic_error("total_interval_length: intervals " + a.sigma.str() +
                                   " and " + b.sigma.str() + " overlap");
    }
    return total;
}

}  // namespace cfes
