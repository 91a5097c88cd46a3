#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>

#include "meixnerpv/errors.hpp"

namespace meixnerpv {

namespace mp = boost::multiprecision;

// Arbitrary-precision float. Precision is a process-wide (thread-local in
// MPFR terms) default set in decimal digits; each value carries the precision
// it was created with.
using BigFloat = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

inline unsigned digits10_for_bits(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 2;
}

// Sets the default precision for subsequently created BigFloat values.
// Call once per thread before any BigFloat work at that precision.
inline void set_working_precision(unsigned mantissa_bits) {
    if (mantissa_bits < 53)
        throw DomainError("set_working_precision: mantissa_bits must be >= 53");
    BigFloat::default_precision(digits10_for_bits(mantissa_bits));
}

template <class R>
constexpr unsigned default_mantissa_bits() {
    if constexpr (std::is_floating_point_v<R>)
        return std::numeric_limits<R>::digits;
    else
        return 256;
}

template <class R>
R pow2(int e) {
    using std::ldexp;
    return ldexp(R(1), e);
}

// x^k by binary exponentiation; safe for negative bases.
template <class R>
R power_int(R x, unsigned k) {
    R result(1);
    while (k) {
        if (k & 1u) result *= x;
        x *= x;
        k >>= 1u;
    }
    return result;
}

template <class R>
R from_string(const std::string& s) {
    if constexpr (std::is_floating_point_v<R>) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw DomainError("from_string: not a number: '" + s + "'");
        }
        if (pos != s.size())
            throw DomainError("from_string: trailing characters in '" + s + "'");
        return static_cast<R>(v);
    } else {
        try {
            return R(s);
        } catch (const std::exception&) {
            throw DomainError("from_string: not a number: '" + s + "'");
        }
    }
}

template <class R>
std::string to_decimal_string(const R& x, int digits10) {
    if constexpr (std::is_floating_point_v<R>) {
        std::ostringstream os;
        os << std::scientific << std::setprecision(std::max(digits10 - 1, 1)) << x;
        return os.str();
    } else {
        return x.str(digits10, std::ios_base::scientific);
    }
}

// Working-precision descriptor threaded through every numeric pipeline.
// rel_tol/abs_tol default to 2^(-bits/2): half the mantissa as convergence
// target, leaving the other half as rounding headroom.
template <class R>
struct PrecisionConfig {
    unsigned mantissa_bits;
    R rel_tol;
    R abs_tol;

    PrecisionConfig() : PrecisionConfig(default_mantissa_bits<R>()) {}

    explicit PrecisionConfig(unsigned bits)
        : mantissa_bits(bits),
          rel_tol(pow2<R>(-static_cast<int>(bits / 2))),
          abs_tol(pow2<R>(-static_cast<int>(bits / 2))) {
        check();
    }

    PrecisionConfig(unsigned bits, R rel, R abs)
        : mantissa_bits(bits), rel_tol(std::move(rel)), abs_tol(std::move(abs)) {
        check();
    }

    R working_eps() const { return pow2<R>(1 - static_cast<int>(mantissa_bits)); }

    double working_digits10() const { return mantissa_bits * 0.30102999566398120; }

private:
    void check() const {
        if (mantissa_bits < 53)
            throw DomainError("PrecisionConfig: mantissa_bits must be >= 53");
        if (!(rel_tol > R(0)) || !(abs_tol > R(0)))
            throw DomainError("PrecisionConfig: tolerances must be positive");
    }
};

} // namespace meixnerpv
