#pragma once

#include "meixnerpv/errors.hpp"

namespace meixnerpv {

// Second-order jet (f, f', f''): truncated Taylor data propagated through
// arithmetic. Division requires a nonzero value part.
template <class R>
struct Jet2 {
    R f{};
    R d1{};
    R d2{};

    Jet2() = default;
    Jet2(const R& constant) : f(constant), d1(0), d2(0) {}
    Jet2(R f_, R d1_, R d2_) : f(std::move(f_)), d1(std::move(d1_)), d2(std::move(d2_)) {}

    // The identity jet at x: value x, unit first derivative.
    static Jet2 variable(const R& x) { return Jet2(x, R(1), R(0)); }

    friend Jet2 operator+(const Jet2& a, const Jet2& b) {
        return Jet2(a.f + b.f, a.d1 + b.d1, a.d2 + b.d2);
    }

    friend Jet2 operator-(const Jet2& a, const Jet2& b) {
        return Jet2(a.f - b.f, a.d1 - b.d1, a.d2 - b.d2);
    }

    friend Jet2 operator-(const Jet2& a) { return Jet2(-a.f, -a.d1, -a.d2); }

    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        return Jet2(a.f * b.f,
                    a.d1 * b.f + a.f * b.d1,
                    a.d2 * b.f + R(2) * a.d1 * b.d1 + a.f * b.d2);
    }

    friend Jet2 operator/(const Jet2& a, const Jet2& b) {
        if (b.f == R(0))
            throw DivisionByZero("Jet2: division by jet with zero value part");
        R q = a.f / b.f;
        R q1 = (a.d1 - q * b.d1) / b.f;
        R q2 = (a.d2 - R(2) * q1 * b.d1 - q * b.d2) / b.f;
        return Jet2(std::move(q), std::move(q1), std::move(q2));
    }
};

template <class R>
const R& value_of(const R& x) {
    return x;
}

template <class R>
const R& value_of(const Jet2<R>& j) {
    return j.f;
}

} // namespace meixnerpv
