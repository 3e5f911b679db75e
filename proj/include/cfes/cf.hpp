#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cfes/bigfloat.hpp"
#include "cfes/rational.hpp"

namespace cfes {

// A finite CF digit string (sigma_1, ..., sigma_n), digits >= 1, with an
// implicit tail of infinity symbols. The empty string stands for the
// expansion of 0.
class DigitString {
  public:
    DigitString() = default;
    explicit DigitString(std::vector<mpz_class> digits);
    static DigitString parse(std::string_view csv);  // "3,2,1"; "" -> empty

    size_t size() const { return d_.size(); }
    bool empty() const { return d_.empty(); }
    const mpz_class& operator[](size_t i) const { return d_[i]; }
    const mpz_class& last() const { return d_.back(); }
    const std::vector<mpz_class>& digits() const { return d_; }

    void push_back(mpz_class digit);
    DigitString with_appended(mpz_class digit) const;

    std::string str() const;  // comma-separated; "" for the empty string
    bool operator==(const DigitString&) const = default;

    auto begin() const { return d_.begin(); }
    auto end() const { return d_.end(); }

  private:
    std::vector<mpz_class> d_;
};

// Convergent numerators/denominators p*_k, q*_k for k = -1..n, stored with
// the k = -1 seeds (p=1, q=0) at slot 0.
struct ConvergentTable {
    std::vector<mpz_class> p, q;

    size_t levels() const { return p.size() - 2; }  // n
    const mpz_class& p_at(long k) const { return p[static_cast<size_t>(k + 1)]; }
    const mpz_class& q_at(long k) const { return q[static_cast<size_t>(k + 1)]; }
    Rational value_at(long k) const;  // p_k / q_k, defined for 0 <= k <= n
    mpz_class q_sum() const;          // q_0 + ... + q_n
};

ConvergentTable convergent_table(const DigitString& sigma);

// The algorithmic CF expansion of a rational x in [0,1): exact iteration of
// the Gauss map. Terminates with last digit > 1 for x != 0.
DigitString expand_rational(const Rational& x);

// phi(sigma) = p_n/q_n exactly; phi_k the k-th convergent value.
Rational phi(const DigitString& sigma);
Rational phi_k(const DigitString& sigma, long k);

// True iff sigma is empty or its final digit exceeds 1.
bool is_realizable(const DigitString& sigma);

// The other CF representation of the same value:
// (.., s_n) with s_n > 1  <->  (.., s_n - 1, 1). Rejects the empty string
// and (1) (its partner would leave the digit alphabet).
DigitString sibling(const DigitString& sigma);

// (s_1, .., s_n + 1): the string whose value is the far endpoint of the
// fundamental interval of sigma.
DigitString increment_last(const DigitString& sigma);

// All digit strings mapping to x under phi: two for rational x in (0,1),
// just the empty string for x = 0. Algorithmic expansion listed first.
std::vector<DigitString> expansions_of(const Rational& x);

enum class DigitStatus {
    complete,          // requested count reached
    terminated,        // expansion ended (rational input), all digits emitted
    out_of_precision,  // endpoints disagreed; digits emitted so far are certified
};

struct DigitPrefix {
    DigitString digits;
    DigitStatus status = DigitStatus::complete;
};

// First `count` digits of a real given as an enclosing interval. A digit is
// emitted only while both interval endpoints agree on it, so every returned
// digit is certified; the Gauss step is taken with outward rounding.
DigitPrefix digits_prefix_of_real(const RealInterval& x, size_t count);

}  // namespace cfes
