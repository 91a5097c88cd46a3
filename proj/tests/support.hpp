#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "meixnerpv/meixnerpv.hpp"

namespace mpv = meixnerpv;

using BigFloat = mpv::BigFloat;

// Relative-or-absolute closeness; Catch's matchers only cover double.
template <class R>
bool close(const R& x, const R& y, const R& tol) {
    using std::abs;
    R scale = abs(y) > R(1) ? abs(y) : R(1);
    return abs(x - y) <= tol * scale;
}

inline void use_bits(unsigned bits) { mpv::set_working_precision(bits); }
