#pragma once

#include "meixnerpv/errors.hpp"

namespace meixnerpv {

// Central difference (f(t+h) - f(t-h)) / (2h); O(h^2) for smooth f.
template <class R, class F>
R central_diff(F&& f, const R& t, const R& h) {
    if (!(h > R(0)))
        throw DomainError("central_diff: step h must be positive");
    return (f(t + h) - f(t - h)) / (R(2) * h);
}

} // namespace meixnerpv
