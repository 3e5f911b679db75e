#pragma once

#include "cfes/bigfloat.hpp"
#include "cfes/cf.hpp"
#include "cfes/rational.hpp"

namespace cfes {

// The two error-sum flavors: unweighted sums x - p_k/q_k, relative weights
// each term by q_k.
enum class ErrorSumKind { unweighted, relative };

// E*(sigma) = sum_{k>=0} (phi(sigma) - phi_k(sigma)), including the k = 0
// term with phi_0 = 0; terms with k >= n vanish. Exact.
Rational error_sum(const DigitString& sigma);

// P*(sigma) = sum_{k>=0} (phi(sigma) - phi_k(sigma)) q_k(sigma). Exact.
Rational relative_error_sum(const DigitString& sigma);

Rational error_sum(ErrorSumKind kind, const DigitString& sigma);

// E and P on numbers: any rational input, reduced into [0,1) by periodicity.
Rational error_sum_at(const Rational& x);
Rational relative_error_sum_at(const Rational& x);
Rational error_sum_at(ErrorSumKind kind, const Rational& x);

// E*(sibling(sigma)) - E*(sigma) = (-1)^n / (q_n (q_n - q_{n-1})), and
// P*(sibling(sigma)) - P*(sigma) = (-1)^n / q_n, for realizable sigma with
// final digit > 1 (and sigma != (1)).
Rational error_sum_sibling_delta(const DigitString& sigma);
Rational relative_error_sum_sibling_delta(const DigitString& sigma);

// Extrema of E* (resp. P*) over the cylinder of all strings extending sigma.
// One extremum sits at sigma itself, the other at sigma with 1 appended;
// which is which depends on the parity of n. The spread is
// (n+1) * len(I_sigma) for E and len(I_sigma) * sum_k q_k for P.
struct CylinderExtrema {
    Rational min, max, spread;
    DigitString argmin, argmax;
};
CylinderExtrema cylinder_extrema(ErrorSumKind kind, const DigitString& sigma);

// sup - inf of E (resp. P) over the fundamental interval of sigma; equals
// the cylinder spread.
Rational oscillation(ErrorSumKind kind, const DigitString& sigma);

// Result of evaluating E or P at a real given to finite precision: either
// the exact rational value (expansion terminated inside the certified
// digits) or an enclosure value +- radius, with the truncation tail bound
// and the number of digit terms used.
struct ErrorSumValue {
    bool exact = false;
    Rational exact_value;
    BigFloat value, radius;  // enclosure midpoint and half-width
    BigFloat tail_bound;
    size_t terms_used = 0;
    DigitStatus status = DigitStatus::complete;
};

// Truncated evaluation over the first K certified digits, K chosen so the
// Fibonacci tail bound (sum_{k>=K} 1/(F_{k+1}F_{k+2}) for E, g^2 * g^-K for
// P) drops below `tolerance`. If the input's precision cannot certify K
// digits, status reports out_of_precision and the enclosure uses the digits
// that were certified (still rigorous, just wider than asked).
ErrorSumValue error_sum_real(ErrorSumKind kind, const RealInterval& x, const BigFloat& tolerance);

// The tail bounds themselves (upper bounds on the truncated remainder).
BigFloat truncation_tail(ErrorSumKind kind, size_t terms, mpfr_prec_t prec);

}  // namespace cfes
