#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "meixnerpv/errors.hpp"
#include "meixnerpv/real.hpp"

namespace meixnerpv {

namespace detail {

// Dormand-Prince 5(4) tableau. Entries are exact rationals, so the
// coefficients are correct at any working precision.
template <class R>
struct Dp54 {
    R c2, c3, c4, c5;
    R a21;
    R a31, a32;
    R a41, a42, a43;
    R a51, a52, a53, a54;
    R a61, a62, a63, a64, a65;
    R a71, a73, a74, a75, a76;
    R e1, e3, e4, e5, e6, e7;

    Dp54()
        : c2(R(1) / R(5)), c3(R(3) / R(10)), c4(R(4) / R(5)), c5(R(8) / R(9)),
          a21(R(1) / R(5)),
          a31(R(3) / R(40)), a32(R(9) / R(40)),
          a41(R(44) / R(45)), a42(R(-56) / R(15)), a43(R(32) / R(9)),
          a51(R(19372) / R(6561)), a52(R(-25360) / R(2187)),
          a53(R(64448) / R(6561)), a54(R(-212) / R(729)),
          a61(R(9017) / R(3168)), a62(R(-355) / R(33)),
          a63(R(46732) / R(5247)), a64(R(49) / R(176)), a65(R(-5103) / R(18656)),
          a71(R(35) / R(384)), a73(R(500) / R(1113)), a74(R(125) / R(192)),
          a75(R(-2187) / R(6784)), a76(R(11) / R(84)),
          e1(R(71) / R(57600)), e3(R(-71) / R(16695)), e4(R(71) / R(1920)),
          e5(R(-17253) / R(339200)), e6(R(22) / R(525)), e7(R(-1) / R(40)) {}
};

} // namespace detail

// Adaptive embedded Runge-Kutta 5(4) for y' = rhs(t, y), integrating from t0
// to t1 (either direction). Local error is controlled against
// cfg.abs_tol + cfg.rel_tol * |y| componentwise. Throws StepSizeUnderflow
// when the controller cannot meet tolerance with a representable step,
// which signals a singularity on the path.
template <class R, class F>
std::vector<R> integrate_ode(F&& rhs, const R& t0, std::vector<R> y,
                             const R& t1, const PrecisionConfig<R>& cfg) {
    using std::abs;
    using std::pow;

    if (t1 == t0) return y;
    const std::size_t dim = y.size();
    if (dim == 0)
        throw DomainError("integrate_ode: empty state vector");

    // Built per call so the entries pick up the caller's working precision.
    const detail::Dp54<R> tb{};
    const R dir = t1 > t0 ? R(1) : R(-1);
    const R span = abs(t1 - t0);
    const R hmin_floor = cfg.working_eps() * R(64);

    R t = t0;
    R h = span / R(100);
    std::vector<R> k1 = rhs(t, y);
    if (k1.size() != dim)
        throw DomainError("integrate_ode: rhs dimension mismatch");
    std::vector<R> k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
    std::vector<R> work(dim), y5(dim);

    const unsigned long max_steps = 20000000ul;
    unsigned long steps = 0;

    while (abs(t1 - t) > R(0)) {
        if (++steps > max_steps)
            throw StepSizeUnderflow("integrate_ode: step budget exhausted");
        R remaining = abs(t1 - t);
        if (h > remaining) h = remaining;
        if (h < hmin_floor * (R(1) + abs(t)))
            throw StepSizeUnderflow("integrate_ode: step size underflow");
        const R hs = dir * h;

        for (std::size_t i = 0; i < dim; ++i)
            work[i] = y[i] + hs * tb.a21 * k1[i];
        k2 = rhs(t + tb.c2 * hs, work);
        for (std::size_t i = 0; i < dim; ++i)
            work[i] = y[i] + hs * (tb.a31 * k1[i] + tb.a32 * k2[i]);
        k3 = rhs(t + tb.c3 * hs, work);
        for (std::size_t i = 0; i < dim; ++i)
            work[i] = y[i] + hs * (tb.a41 * k1[i] + tb.a42 * k2[i] + tb.a43 * k3[i]);
        k4 = rhs(t + tb.c4 * hs, work);
        for (std::size_t i = 0; i < dim; ++i)
            work[i] = y[i] + hs * (tb.a51 * k1[i] + tb.a52 * k2[i] + tb.a53 * k3[i] +
                                   tb.a54 * k4[i]);
        k5 = rhs(t + tb.c5 * hs, work);
        for (std::size_t i = 0; i < dim; ++i)
            work[i] = y[i] + hs * (tb.a61 * k1[i] + tb.a62 * k2[i] + tb.a63 * k3[i] +
                                   tb.a64 * k4[i] + tb.a65 * k5[i]);
        k6 = rhs(t + hs, work);
        for (std::size_t i = 0; i < dim; ++i)
            y5[i] = y[i] + hs * (tb.a71 * k1[i] + tb.a73 * k3[i] + tb.a74 * k4[i] +
                                 tb.a75 * k5[i] + tb.a76 * k6[i]);
        k7 = rhs(t + hs, y5);

        R err(0);
        for (std::size_t i = 0; i < dim; ++i) {
            R ei = hs * (tb.e1 * k1[i] + tb.e3 * k3[i] + tb.e4 * k4[i] +
                         tb.e5 * k5[i] + tb.e6 * k6[i] + tb.e7 * k7[i]);
            R scale = cfg.abs_tol + cfg.rel_tol * (abs(y[i]) > abs(y5[i]) ? abs(y[i]) : abs(y5[i]));
            R ratio = abs(ei) / scale;
            if (ratio > err) err = ratio;
        }

        if (err <= R(1)) {
            t = (remaining == h) ? t1 : t + hs;
            y.swap(y5);
            k1.swap(k7); // first-same-as-last
            R factor = err == R(0) ? R(5) : R(0.9) * pow(err, R(-0.2));
            if (factor > R(5)) factor = R(5);
            if (factor < R(0.2)) factor = R(0.2);
            h *= factor;
        } else {
            R factor = R(0.9) * pow(err, R(-0.2));
            if (factor > R(0.9)) factor = R(0.9);
            if (factor < R(0.1)) factor = R(0.1);
            h *= factor;
        }
    }
    return y;
}

} // namespace meixnerpv
