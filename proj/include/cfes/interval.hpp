#pragma once

#include "cfes/cf.hpp"
#include "cfes/rational.hpp"

namespace cfes {

// The fundamental interval I_sigma: all x in [0,1) whose first n CF digits
// equal sigma. Endpoints are phi(sigma) and phi of the last-digit-incremented
// string, ordered by the parity of n; the phi(sigma) endpoint is included
// exactly when sigma is realizable. Length 1/(q_n (q_n + q_{n-1})).
struct FundamentalInterval {
    DigitString sigma;
    Rational left, right;
    bool left_closed = false, right_closed = false;
    Rational length;

    bool contains(const Rational& x) const;
};

FundamentalInterval fundamental_interval(const DigitString& sigma);

}  // namespace cfes
