#pragma once

#include "meixnerpv/errors.hpp"
#include "meixnerpv/jet.hpp"
#include "meixnerpv/real.hpp"

namespace meixnerpv {

template <class T>
struct PVParams {
    T A;
    T B;
    T C;
    T D;
};

// Second-derivative form of Painleve V,
//   y'' = (1/(2y) + 1/(y-1)) y'^2 - y'/t
//         + (y-1)^2 (A y + B/y) / t^2 + C y / t + D y (y+1)/(y-1).
// T is either the real type R or Jet2<R>; evaluating on jets propagates
// derivatives of the right side itself.
template <class R, class T>
T pv_rhs(const T& t, const T& y, const T& yp, const PVParams<R>& p) {
    const R& yv = value_of(y);
    const R& tv = value_of(t);
    if (yv == R(0) || yv == R(1))
        throw SingularityError("pv_rhs: y at a fixed singular value");
    if (tv == R(0))
        throw SingularityError("pv_rhs: t = 0");
    T ym1 = y - R(1);
    T t2 = t * t;
    return (R(1) / (R(2) * y) + R(1) / ym1) * yp * yp - yp / t +
           ym1 * ym1 * (p.A * y + p.B / y) / t2 + p.C * y / t +
           p.D * y * (y + R(1)) / ym1;
}

// y'' - rhs for a candidate jet (y, y', y'') at t.
template <class R>
R pv_residual(const R& t, const Jet2<R>& y, const PVParams<R>& p) {
    return y.d2 - pv_rhs(t, y.f, y.d1, p);
}

// (y, y', y'', y''') of the local solution through (t, y, y'). y'' comes
// from the equation itself; y''' from differentiating the right side along
// the solution, done by evaluating pv_rhs on jets seeded with the solution's
// own Taylor data.
template <class R>
struct SolutionJet {
    R t;
    R y;
    R d1;
    R d2;
    R d3;
};

template <class R>
SolutionJet<R> pv_solution_jet(const R& t, const R& y, const R& yp,
                               const PVParams<R>& p) {
    R d2 = pv_rhs(t, y, yp, p);
    // The yp-jet's second slot never reaches the first derivative of the
    // result, so seeding it with zero is harmless.
    Jet2<R> f = pv_rhs(Jet2<R>::variable(t), Jet2<R>(y, yp, d2),
                       Jet2<R>(yp, d2, R(0)), p);
    return {t, y, yp, d2, f.d1};
}

template <class R>
Jet2<R> to_jet(const SolutionJet<R>& s) {
    return Jet2<R>(s.y, s.d1, s.d2);
}

} // namespace meixnerpv
