#pragma once

#include <utility>

#include "meixnerpv/errors.hpp"
#include "meixnerpv/jet.hpp"
#include "meixnerpv/painleve.hpp"
#include "meixnerpv/real.hpp"

namespace meixnerpv {

// The three parameter families under which the scaled lattice flow reduces
// to Painleve V. k1 is the scaling c = k1 t.
enum class PVCase { Case1 = 1, Case2 = 2, Case3 = 3 };

template <class T>
struct CaseSpec {
    PVCase id;
    int n;
    T k1;
    T gamma;
    T beta;
};

template <class T>
void require_case_spec(const CaseSpec<T>& cs) {
    if (cs.k1 == T(0))
        throw DomainError("case spec: k1 must be nonzero");
    if (cs.gamma == T(1))
        throw DomainError("case spec: gamma must differ from 1");
}

// Exact over exact scalar types; all entries are polynomials in the inputs
// over halves.
template <class T>
PVParams<T> case_params(const CaseSpec<T>& cs) {
    require_case_spec(cs);
    const T n(cs.n), two(2);
    const T& g = cs.gamma;
    const T& b = cs.beta;
    const T& k = cs.k1;
    switch (cs.id) {
        case PVCase::Case1:
            return {(b - T(1)) * (b - T(1)) / two, -(n * n) / two,
                    k * (n - b + two * g), -(k * k) / two};
        case PVCase::Case2:
            return {(b - g) * (b - g) / two,
                    -((g + n - T(1)) * (g + n - T(1))) / two,
                    k * (two + n - b), -(k * k) / two};
        case PVCase::Case3:
            return {(g - T(1)) * (g - T(1)) / two,
                    -((g - b + n) * (g - b + n)) / two, k * (b + n),
                    -(k * k) / two};
    }
    throw DomainError("case spec: bad case id");
}

// V(t) recovered from a Painleve V solution jet in the given family:
//   case 1:  V = k1 t (t y' - (1+beta-2gamma) y^2 + (1+n-k1 t+beta-2gamma) y - n) / q
//   case 2:  V = k1 t (t y' - (beta-gamma)  y^2 + (n-1-k1 t+beta)        y + 1-n-gamma) / q
//   case 3:  V = k1 t (t y' + (gamma-1)     y^2 + (1+n-k1 t-beta)        y - n+beta-gamma) / q
// with q = 2 (gamma-1)(y-1) y.
template <class R>
R v_from_y(const CaseSpec<R>& cs, const R& t, const Jet2<R>& yj) {
    require_case_spec(cs);
    const R& y = yj.f;
    const R& yp = yj.d1;
    if (y == R(0) || y == R(1))
        throw SingularityError("v_from_y: y at a fixed singular value");
    const R n(cs.n);
    const R& g = cs.gamma;
    const R& b = cs.beta;
    const R& k = cs.k1;
    R numer;
    switch (cs.id) {
        case PVCase::Case1:
            numer = t * yp - (R(1) + b - R(2) * g) * y * y +
                    (R(1) + n - k * t + b - R(2) * g) * y - n;
            break;
        case PVCase::Case2:
            numer = t * yp - (b - g) * y * y + (n - R(1) - k * t + b) * y +
                    R(1) - n - g;
            break;
        case PVCase::Case3:
            numer = t * yp + (g - R(1)) * y * y + (R(1) + n - k * t - b) * y -
                    n + b - g;
            break;
        default:
            throw DomainError("v_from_y: bad case id");
    }
    return k * t * numer / (R(2) * (g - R(1)) * (y - R(1)) * y);
}

// First-order equation whose solutions seed the n = 0 member of family 2:
//   t y' = (beta-gamma) y^2 + (t-1-beta+2gamma) y + 1-gamma.
template <class R>
R riccati_y_rhs(const R& t, const R& y, const R& gamma, const R& beta) {
    if (t == R(0))
        throw DomainError("riccati_y_rhs: t must be nonzero");
    return ((beta - gamma) * y * y + (t - R(1) - beta + R(2) * gamma) * y +
            R(1) - gamma) /
           t;
}

// Jet (y, y', y'') of a Riccati solution through (t, y): y' from the
// equation, y'' by differentiating it along the solution.
template <class R>
Jet2<R> riccati_jet(const R& t, const R& y, const R& gamma, const R& beta) {
    R yp = riccati_y_rhs(t, y, gamma, beta);
    Jet2<R> T = Jet2<R>::variable(t);
    Jet2<R> Y(y, yp, R(0)); // second slot does not reach d1 below
    Jet2<R> f = ((beta - gamma) * Y * Y + (T - R(1) - beta + R(2) * gamma) * Y +
                 R(1) - gamma) /
                T;
    return Jet2<R>(y, yp, f.d1);
}

// Ladder in n within family 1 (k1 = 1): closed-form maps sending a solution
// at n to solutions at n+1 / n-1. Both denominators carry the factor
// (beta - 1).
enum class LadderDirection { Up, Down };

template <class R>
Jet2<R> ladder(const R& t, const Jet2<R>& yj, LadderDirection dir, int n,
               const R& gamma, const R& beta) {
    using std::abs;
    if (abs(beta - R(1)) < R(1e-9))
        throw DomainError("ladder: beta = 1 degenerates the maps");
    CaseSpec<R> cs{PVCase::Case1, n, R(1), gamma, beta};
    PVParams<R> p = case_params(cs);
    SolutionJet<R> sj = pv_solution_jet(t, yj.f, yj.d1, p);
    Jet2<R> T = Jet2<R>::variable(t);
    Jet2<R> Y(sj.y, sj.d1, sj.d2);
    Jet2<R> YP(sj.d1, sj.d2, sj.d3);
    const R nn(n);
    const R bm1 = beta - R(1);

    Jet2<R> inner1 = T * YP + Y * (R(1) + nn + T - beta + bm1 * Y) - nn;
    Jet2<R> inner2 = T * YP + Y * (nn - R(1) + T + beta - bm1 * Y) - nn;
    if (dir == LadderDirection::Down) {
        inner1 = T * YP - Y * (R(1) + nn + T - beta + bm1 * Y) + nn;
        inner2 = T * YP - Y * (nn - R(1) + T + beta - bm1 * Y) + nn;
    }
    if (inner1.f == R(0) || inner2.f == R(0))
        throw DenominatorZero("ladder: map denominator vanished");

    if (dir == LadderDirection::Up)
        return R(1) - R(2) * (nn + gamma) * T * Y / (bm1 * inner1) +
               R(2) * (R(1) + nn - beta + gamma) * T * Y / (bm1 * inner2);
    return R(1) + R(2) * (gamma + nn - R(1)) * T * Y / (bm1 * inner1) -
           R(2) * (nn - beta + gamma) * T * Y / (bm1 * inner2);
}

// Direct closed forms of the two transform compositions within family 1
// (shared denominator is the case-1 V numerator):
//   Y1 = y - 2 (gamma-1)    (y-1)^2 y / den   (lands in family 2)
//   Y2 = y + 2 (beta-gamma) (y-1)^2 y / den   (lands in family 3)
//   den = t y' - (1+beta-2gamma) y^2 + (1+n-k1 t+beta-2gamma) y - n.
template <class R>
std::pair<Jet2<R>, Jet2<R>> remark2_transforms(const R& t, const Jet2<R>& yj,
                                               int n, const R& gamma,
                                               const R& beta) {
    CaseSpec<R> cs{PVCase::Case1, n, R(1), gamma, beta};
    PVParams<R> p = case_params(cs);
    SolutionJet<R> sj = pv_solution_jet(t, yj.f, yj.d1, p);
    Jet2<R> T = Jet2<R>::variable(t);
    Jet2<R> Y(sj.y, sj.d1, sj.d2);
    Jet2<R> YP(sj.d1, sj.d2, sj.d3);
    const R nn(n);
    Jet2<R> den = T * YP - (R(1) + beta - R(2) * gamma) * Y * Y +
                  (R(1) + nn - T + beta - R(2) * gamma) * Y - nn;
    if (den.f == R(0))
        throw DenominatorZero("remark2_transforms: denominator vanished");
    Jet2<R> shared = (Y - R(1)) * (Y - R(1)) * Y / den;
    return {Y - R(2) * (gamma - R(1)) * shared,
            Y + R(2) * (beta - gamma) * shared};
}

} // namespace meixnerpv
