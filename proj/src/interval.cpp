#include "cfes/interval.hpp"

#include <stdexcept>

namespace cfes {

bool FundamentalInterval::contains(const Rational& x) const {
    if (x < left || (x == left && !left_closed)) return false;
    if (x > right || (x == right && !right_closed)) return false;
    return true;
}

FundamentalInterval fundamental_interval(const DigitString& sigma) {
    if (sigma.empty())
        throw std::domain_error("fundamental_interval: undefined for the empty string");
    FundamentalInterval iv;
    iv.sigma = sigma;
    Rational at = phi(sigma);
    Rational far = phi(increment_last(sigma));
    bool realizable = is_realizable(sigma);
    if (sigma.size() % 2 == 1) {  // n odd: far endpoint sits left
        iv.left = std::move(far);
        iv.right = at;
        iv.right_closed = realizable;
    } else {
        iv.left = at;
        iv.right = std::move(far);
        iv.left_closed = realizable;
    }
    iv.length = iv.right - iv.left;
    return iv;
}

}  // namespace cfes
