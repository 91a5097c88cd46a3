#pragma once

#include <cmath>
#include <limits>
#include <optional>

#include "meixnerpv/errors.hpp"
#include "meixnerpv/jet.hpp"
#include "meixnerpv/painleve.hpp"
#include "meixnerpv/real.hpp"

namespace meixnerpv {

struct SignTriple {
    int e1{1};
    int e2{1};
    int e3{1};
};

inline void require_signs(const SignTriple& s) {
    auto ok = [](int e) { return e == 1 || e == -1; };
    if (!ok(s.e1) || !ok(s.e2) || !ok(s.e3))
        throw DomainError("sign triple entries must be +1 or -1");
}

inline SignTriple sign_triple_by_index(int i) {
    if (i < 0 || i > 7)
        throw IndexError("sign_triple_by_index: i in 0..7");
    return {(i & 4) ? -1 : 1, (i & 2) ? -1 : 1, (i & 1) ? -1 : 1};
}

// Signed radicals a = e1 sqrt(2A), b = e2 sqrt(-2B), d = e3 sqrt(-2D) on the
// principal branch. Requires A >= 0, B <= 0, D < 0 for real values.
template <class T>
struct BacklundRadicals {
    T a;
    T b;
    T d;
};

template <class R>
BacklundRadicals<R> backlund_radicals(const PVParams<R>& p, const SignTriple& s) {
    using std::sqrt;
    require_signs(s);
    if (p.A < R(0) || p.B > R(0) || !(p.D < R(0)))
        throw SignDomainError("backlund_radicals: needs A >= 0, B <= 0, D < 0");
    return {R(s.e1) * sqrt(R(2) * p.A), R(s.e2) * sqrt(R(-2) * p.B),
            R(s.e3) * sqrt(R(-2) * p.D)};
}

// Parameter half of the transformation. Polynomial in (a, b, d, C, 1/D), so
// it is exact over exact scalar types.
template <class T>
PVParams<T> backlund_param_map(const PVParams<T>& p, const BacklundRadicals<T>& r) {
    T s = T(1) - r.a - r.b;
    T wp = p.C + r.d * s;
    T wm = p.C - r.d * s;
    return {-(wp * wp) / (T(16) * p.D), (wm * wm) / (T(16) * p.D),
            r.d * (r.b - r.a), p.D};
}

template <class R>
struct BacklundOutput {
    Jet2<R> y1;          // transformed solution jet at the same t
    PVParams<R> params;  // parameters it satisfies
};

// Solution half:
//   y1 = 1 - 2 d t y / (t y' - a y^2 + (a - b + d t) y + b),
// evaluated on the solution jet of y so that y1 carries consistent
// (value, first, second) derivative data.
template <class R>
BacklundOutput<R> backlund(const R& t, const Jet2<R>& y, const PVParams<R>& p,
                           const SignTriple& s) {
    auto r = backlund_radicals(p, s);
    SolutionJet<R> sj = pv_solution_jet(t, y.f, y.d1, p);
    Jet2<R> T = Jet2<R>::variable(t);
    Jet2<R> Y(sj.y, sj.d1, sj.d2);
    Jet2<R> YP(sj.d1, sj.d2, sj.d3);
    Jet2<R> den = T * YP - r.a * Y * Y + (r.a - r.b + r.d * T) * Y + r.b;
    if (den.f == R(0))
        throw DenominatorZero("backlund: transformation denominator vanished");
    Jet2<R> y1 = R(1) - R(2) * r.d * T * Y / den;
    return {y1, backlund_param_map(p, r)};
}

// Linear-combination construction for D = -2: when two transformed
// solutions y_eps and y_delta share parameters, v = M y_eps + (1-M) y_delta
// solves the same equation with explicit parameters. Covered patterns:
//   delta = (e1, -e2, e3)  flips the b radical
//   delta = (-e1, e2, e3)  flips the a radical
// Everything else is outside the construction: delta3 = -e3 and the double
// flip (-e1, -e2, e3) return nullopt (reported as not applicable), as does
// delta = eps where the combination is trivial.
template <class T>
struct LinCombData {
    T M;
    PVParams<T> params;
};

// Radical-level core, exact over exact scalar types. a and b are the signed
// radicals of the eps transformation; e3 its third sign.
template <class T>
LinCombData<T> lincomb_from_radicals(const T& a, const T& b, const T& C,
                                     int e3, bool flip_b) {
    T A = a * a / T(2);
    T B = -(b * b) / T(2);
    T numer = T(2) * a + T(2) * b - T(e3) * C - T(2);
    T denom = flip_b ? T(4) * b : T(4) * a;
    if (denom == T(0))
        throw DomainError("lincomb: vanishing radical in denominator");
    T M = numer / denom;
    if (flip_b)
        return {M, {-B, (T(2) * a - T(2) * A - T(1)) / T(2), -C - T(2 * e3), T(-2)}};
    return {M, {A, (T(2) * b + T(2) * B - T(1)) / T(2), C + T(2 * e3), T(-2)}};
}

template <class R>
std::optional<LinCombData<R>> lincomb(const PVParams<R>& p, const SignTriple& eps,
                                      const SignTriple& delta) {
    using std::abs;
    using std::sqrt;
    require_signs(eps);
    require_signs(delta);
    if (!(p.D == R(-2)))
        throw DomainError("lincomb: requires D = -2 exactly");
    if (p.A < R(0) || p.B > R(0))
        throw SignDomainError("lincomb: needs A >= 0, B <= 0");

    if (delta.e3 != eps.e3) return std::nullopt;
    bool flip_a = delta.e1 != eps.e1;
    bool flip_b = delta.e2 != eps.e2;
    if (flip_a == flip_b) return std::nullopt; // double flip or identical triple

    R a = R(eps.e1) * sqrt(R(2) * p.A);
    R b = R(eps.e2) * sqrt(R(-2) * p.B);
    auto data = lincomb_from_radicals(a, b, p.C, eps.e3, flip_b);

    R tol = R(1000) * std::numeric_limits<R>::epsilon();
    if (abs(data.M) <= tol || abs(data.M - R(1)) <= tol)
        throw DegenerateM("lincomb: combination coefficient degenerated to 0 or 1");
    return data;
}

} // namespace meixnerpv
