#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "meixnerpv/errors.hpp"
#include "meixnerpv/measure.hpp"
#include "meixnerpv/real.hpp"
#include "meixnerpv/stieltjes.hpp"

namespace meixnerpv {

// Auxiliary variables of the discrete system attached to the recurrence:
//   a_n^2 = n c - (gamma - 1) u_n
//   b_n   = n + gamma - beta + c - (gamma - 1) v_n / c.
// Everything below divides by gamma - 1, hence the hard gamma != 1 guard.
template <class R>
struct UVState {
    int n;
    R u;
    R v;
    R c;
    R gamma;
    R beta;
};

template <class R>
void require_gamma_not_one(const R& gamma) {
    using std::abs;
    if (abs(gamma - R(1)) < R(1e-9))
        throw DomainError("gamma = 1 is outside the (u,v) parametrization");
}

template <class R>
UVState<R> ab_to_uv(int n, const R& a2, const R& b, const ModelParams<R>& p) {
    require_gamma_not_one(p.gamma);
    R nn(n);
    R gm1 = p.gamma - R(1);
    return {n, (nn * p.c - a2) / gm1,
            p.c * (nn + p.gamma - p.beta + p.c - b) / gm1,
            p.c, p.gamma, p.beta};
}

template <class R>
std::pair<R, R> uv_to_ab(const UVState<R>& s) {
    require_gamma_not_one(s.gamma);
    R nn(s.n);
    R gm1 = s.gamma - R(1);
    return {nn * s.c - gm1 * s.u,
            nn + s.gamma - s.beta + s.c - gm1 * s.v / s.c};
}

template <class R>
std::vector<UVState<R>> uv_chain(const RecurrenceTable<R>& table) {
    std::vector<UVState<R>> chain;
    chain.reserve(table.entries.size());
    for (const auto& e : table.entries)
        chain.push_back(ab_to_uv(e.n, e.a2, e.b, table.params));
    return chain;
}

namespace detail {

// Right side of the first lattice equation:
//   (u_n + v_n)(u_{n+1} + v_n) = (gamma-1)/c^2 * v (v - c)(v - c(gamma-beta)/(gamma-1)).
template <class R>
R discrete_rhs1(const R& v, const R& c, const R& gamma, const R& beta) {
    R gm1 = gamma - R(1);
    return gm1 / (c * c) * v * (v - c) * (v - c * (gamma - beta) / gm1);
}

// Pole-free right side of the second lattice equation multiplied through by
// (u - c n/(gamma-1)):
//   u (u + c)(u + c(gamma-beta)/(gamma-1)).
template <class R>
R discrete_rhs2_numerator(const R& u, const R& c, const R& gamma, const R& beta) {
    R gm1 = gamma - R(1);
    return u * (u + c) * (u + c * (gamma - beta) / gm1);
}

} // namespace detail

// Residuals of the coupled first-order lattice system in the form that is
// polynomial in all inputs (no poles):
//   r1 = (u + v)(u_next + v) - rhs1(v)
//   r2 = (u + v)(u + v_prev)(u - c n/(gamma-1)) - u (u + c)(u + c(gamma-beta)/(gamma-1)).
template <class R>
std::pair<R, R> discrete_residuals(int n, const R& u, const R& v,
                                   const R& u_next, const R& v_prev,
                                   const ModelParams<R>& p) {
    require_gamma_not_one(p.gamma);
    R gm1 = p.gamma - R(1);
    R r1 = (u + v) * (u_next + v) - detail::discrete_rhs1(v, p.c, p.gamma, p.beta);
    R r2 = (u + v) * (u + v_prev) * (u - p.c * R(n) / gm1) -
           detail::discrete_rhs2_numerator(u, p.c, p.gamma, p.beta);
    return {r1, r2};
}

// b_0 = m_1 / m_0 from the Kummer closed forms; falls back to lattice
// summation where the shifted closed form degenerates (beta near 1).
template <class R>
R initial_b0(const ModelParams<R>& p,
             const PrecisionConfig<R>& cfg = PrecisionConfig<R>{}) {
    require_valid(p);
    try {
        return moment_closed_form(p, 1) / moment_closed_form(p, 0);
    } catch (const PoleError&) {
        auto mv = moments(p, 1, cfg);
        if (!(mv.values[0] > R(0)))
            throw PrecisionExhausted("initial_b0: nonpositive mass in fallback");
        return mv.values[1] / mv.values[0];
    }
}

// One forward step of the lattice system:
//   u_{n+1} = rhs1(v_n) / (u_n + v_n) - v_n
//   v_{n+1} = rhs2(u_{n+1}) / (u_{n+1} + v_n) - u_{n+1}.
// An exact 0/0 (both numerator and divisor zero, as on the Charlier ray)
// raises IndeterminateStep: the step is genuinely underdetermined there and
// callers should use the moment pipeline instead. A lone zero divisor raises
// DivisionByZero. digits_lost, when given, receives a cancellation estimate
// for the step.
template <class R>
UVState<R> step_uv(const UVState<R>& s, const ModelParams<R>& p,
                   double* digits_lost = nullptr) {
    using std::abs;
    using std::log10;
    require_gamma_not_one(p.gamma);
    R gm1 = p.gamma - R(1);
    double loss = 0.0;

    auto stage = [&](const R& num, const R& den, const R& sub,
                     const char* what) -> R {
        if (den == R(0)) {
            if (num == R(0))
                throw IndeterminateStep(std::string("step_uv: 0/0 in ") + what);
            throw DivisionByZero(std::string("step_uv: zero divisor in ") + what);
        }
        R quotient = num / den;
        R out = quotient - sub;
        R scale = abs(quotient) > abs(sub) ? abs(quotient) : abs(sub);
        if (out != R(0) && scale > R(0)) {
            double l = static_cast<double>(log10(scale / abs(out)));
            if (l > loss) loss = l;
        }
        return out;
    };

    R u_next = stage(detail::discrete_rhs1(s.v, p.c, p.gamma, p.beta),
                     s.u + s.v, s.v, "u update");

    R pole = p.c * R(s.n + 1) / gm1;
    if (u_next == pole)
        throw DivisionByZero("step_uv: u_{n+1} at the rhs2 pole");
    R num2 = detail::discrete_rhs2_numerator(u_next, p.c, p.gamma, p.beta) /
             (u_next - pole);
    R v_next = stage(num2, u_next + s.v, u_next, "v update");

    if (digits_lost) *digits_lost = loss;
    return {s.n + 1, u_next, v_next, p.c, p.gamma, p.beta};
}

// Toda flow in the spectral parameter c:
//   d(a_n^2)/dc = a_n^2 (b_n - b_{n-1}) / c,   d(b_n)/dc = (a_{n+1}^2 - a_n^2) / c.
template <class R>
std::pair<R, R> toda_rhs(const R& a2, const R& b, const R& b_prev,
                         const R& a2_next, const R& c) {
    if (c == R(0))
        throw DomainError("toda_rhs: c must be nonzero");
    return {a2 * (b - b_prev) / c, (a2_next - a2) / c};
}

// c-flow of (u_n, v_n) induced by the Toda equations, with the neighbor
// values u_{n+1}, v_{n-1} eliminated through the lattice equations:
//   du/dc = [n - a_n^2 (1 - (gamma-1)(v_n - v_{n-1})/c) / c] / (gamma-1)
//   dv/dc = v_n / c + (u_{n+1} - u_n).
// On the fully degenerate ray u = v = 0 with gamma = beta (the Charlier
// chain) the flow is stationary and (0, 0) is returned directly; any other
// u + v = 0 configuration is singular.
template <class R>
std::pair<R, R> uv_ode_rhs(const UVState<R>& s) {
    require_gamma_not_one(s.gamma);
    if (s.c == R(0))
        throw DomainError("uv_ode_rhs: c must be nonzero");
    R gm1 = s.gamma - R(1);
    R den = s.u + s.v;
    if (den == R(0)) {
        if (s.u == R(0) && s.v == R(0) && s.gamma == s.beta)
            return {R(0), R(0)};
        throw IndeterminateStep("uv_ode_rhs: u + v = 0 is singular");
    }

    R u_next = detail::discrete_rhs1(s.v, s.c, s.gamma, s.beta) / den - s.v;

    R v_prev;
    if (s.n == 0) {
        // rhs2 numerator and pole factor share the root u = 0 at n = 0.
        v_prev = (s.u + s.c) * (s.u + s.c * (s.gamma - s.beta) / gm1) / den - s.u;
    } else {
        R pole = s.c * R(s.n) / gm1;
        if (s.u == pole)
            throw DivisionByZero("uv_ode_rhs: u at the rhs2 pole");
        v_prev = detail::discrete_rhs2_numerator(s.u, s.c, s.gamma, s.beta) /
                     ((s.u - pole) * den) -
                 s.u;
    }

    R a2 = R(s.n) * s.c - gm1 * s.u;
    R du = (R(s.n) - a2 * (R(1) - gm1 * (s.v - v_prev) / s.c) / s.c) / gm1;
    R dv = s.v / s.c + (u_next - s.u);
    return {du, dv};
}

// Riccati equation satisfied by v_0(t) (t plays the role of c):
//   t^2 v' = (gamma-1) v^2 + t (2 - t + beta - 2 gamma) v + (gamma - beta) t^2.
template <class R>
R riccati_v0_rhs(const R& t, const R& v, const R& gamma, const R& beta) {
    require_gamma_not_one(gamma);
    if (t == R(0))
        throw DomainError("riccati_v0_rhs: t must be nonzero");
    return ((gamma - R(1)) * v * v + t * (R(2) - t + beta - R(2) * gamma) * v +
            (gamma - beta) * t * t) /
           (t * t);
}

// v_0 at spectral parameter t, from the closed-form b_0:
//   v_0 = t (gamma - beta + t - b_0(t)) / (gamma - 1).
template <class R>
R v0_value(const ModelParams<R>& base, const R& t,
           const PrecisionConfig<R>& cfg = PrecisionConfig<R>{}) {
    require_gamma_not_one(base.gamma);
    ModelParams<R> p = base;
    p.c = t;
    return t * (p.gamma - p.beta + t - initial_b0(p, cfg)) / (p.gamma - R(1));
}

// Residual of the v_0 Riccati equation with all derivatives taken
// analytically through the Kummer closed forms:
//   t^2 v_0' - [(gamma-1) v_0^2 + t (2 - t + beta - 2 gamma) v_0 + (gamma-beta) t^2].
// Propagates PoleError near beta = 1 (no summation fallback for the
// derivative path).
template <class R>
R riccati_v0_residual(const ModelParams<R>& base, const R& t) {
    require_gamma_not_one(base.gamma);
    ModelParams<R> p = base;
    p.c = t;
    R m0 = moment_closed_form(p, 0);
    R m1 = moment_closed_form(p, 1);
    R m0d = moment_closed_form_dc(p, 0);
    R m1d = moment_closed_form_dc(p, 1);
    R b0 = m1 / m0;
    R b0d = (m1d * m0 - m1 * m0d) / (m0 * m0);
    R gm1 = p.gamma - R(1);
    R v0 = t * (p.gamma - p.beta + t - b0) / gm1;
    R v0d = ((p.gamma - p.beta + t - b0) + t * (R(1) - b0d)) / gm1;
    return t * t * v0d - (gm1 * v0 * v0 + t * (R(2) - t + p.beta - R(2) * p.gamma) * v0 +
                          (p.gamma - p.beta) * t * t);
}

} // namespace meixnerpv
