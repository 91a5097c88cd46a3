#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "meixnerpv/errors.hpp"
#include "meixnerpv/real.hpp"
#include "meixnerpv/special_functions.hpp"

namespace meixnerpv {

// Support of the discrete measure:
//   PlainN     {0, 1, 2, ...}
//   Shifted    {1-beta, 2-beta, 3-beta, ...}
//   BiLattice  union of the two, with the shifted part weighted by tau.
enum class Lattice { PlainN, Shifted, BiLattice };

inline const char* lattice_name(Lattice l) {
    switch (l) {
        case Lattice::PlainN: return "n";
        case Lattice::Shifted: return "shifted";
        case Lattice::BiLattice: return "bilattice";
    }
    return "?";
}

template <class R>
struct ModelParams {
    R gamma;
    R beta;
    R c;
    Lattice lattice{Lattice::PlainN};
    R tau{1}; // bi-lattice mixing weight; ignored elsewhere
};

// Positivity conditions per lattice. Returns the list of violated
// conditions; empty means admissible.
template <class R>
std::vector<std::string> validate(const ModelParams<R>& p) {
    using std::abs;
    std::vector<std::string> bad;
    if (!(p.c > R(0))) bad.push_back("c_positive");
    switch (p.lattice) {
        case Lattice::PlainN:
            if (!(p.beta > R(0))) bad.push_back("beta_positive");
            if (!(p.gamma > R(0))) bad.push_back("gamma_positive");
            break;
        case Lattice::Shifted:
            if (!(p.beta < R(2))) bad.push_back("beta_below_two");
            if (!(p.gamma > p.beta - R(1))) bad.push_back("gamma_above_beta_minus_one");
            break;
        case Lattice::BiLattice:
            if (!(p.beta > R(0))) bad.push_back("beta_positive");
            if (!(p.beta < R(2))) bad.push_back("beta_below_two");
            if (!(p.gamma > R(0))) bad.push_back("gamma_positive");
            if (!(p.gamma > p.beta - R(1))) bad.push_back("gamma_above_beta_minus_one");
            if (!(p.tau > R(0))) bad.push_back("tau_positive");
            // Integer beta collapses the two sublattices into each other.
            if (abs(p.beta - R(std::lround(static_cast<double>(p.beta)))) < R(1e-9))
                bad.push_back("beta_not_integer");
            break;
    }
    return bad;
}

template <class R>
void require_valid(const ModelParams<R>& p) {
    auto bad = validate(p);
    if (!bad.empty()) {
        std::string msg = "invalid parameters:";
        for (const auto& b : bad) msg += " " + b;
        throw ValidationError(msg);
    }
}

// log of w(x) = Gamma(beta) Gamma(gamma+x) c^x / (Gamma(gamma) Gamma(beta+x) Gamma(x+1)).
// Defined for x with gamma+x, beta+x, x+1 all positive; w(0) = 1.
template <class R>
R log_weight(const ModelParams<R>& p, const R& x) {
    using std::log;
    return log_gamma(p.beta) - log_gamma(p.gamma) + log_gamma(p.gamma + x) -
           log_gamma(p.beta + x) - log_gamma(x + R(1)) + x * log(p.c);
}

namespace detail {

template <class R>
bool is_nonneg_integer_offset(const R& x, const R& origin) {
    using std::abs;
    R k = x - origin;
    if (k < R(-0.5)) return false;
    long rounded = std::lround(static_cast<double>(k));
    if (rounded < 0) return false;
    return abs(k - R(rounded)) < R(1e-9);
}

} // namespace detail

template <class R>
bool is_lattice_point(const ModelParams<R>& p, const R& x) {
    bool plain = detail::is_nonneg_integer_offset(x, R(0));
    bool shifted = detail::is_nonneg_integer_offset(x, R(1) - p.beta);
    switch (p.lattice) {
        case Lattice::PlainN: return plain;
        case Lattice::Shifted: return shifted;
        case Lattice::BiLattice: return plain || shifted;
    }
    return false;
}

// Weight at a lattice point; DomainError off the lattice. On the bi-lattice
// the shifted sublattice carries the extra factor tau.
template <class R>
R weight_at(const ModelParams<R>& p, const R& x) {
    using std::exp;
    require_valid(p);
    if (!is_lattice_point(p, x))
        throw DomainError("weight_at: x is not on the lattice");
    R w = exp(log_weight(p, x));
    if (p.lattice == Lattice::BiLattice &&
        !detail::is_nonneg_integer_offset(x, R(0)))
        w *= p.tau;
    return w;
}

// Constant relating the shifted-lattice weight to a plain-lattice weight with
// transformed parameters:
//   w_{gamma,beta,c}(k+1-beta)
//     = c^(1-beta) Gamma(beta) Gamma(gamma+1-beta) / (Gamma(2-beta) Gamma(gamma))
//       * w_{gamma+1-beta,2-beta,c}(k).
template <class R>
R shifted_weight_factor(const ModelParams<R>& p) {
    using std::exp;
    using std::log;
    if (!(p.beta < R(2)))
        throw DomainError("shifted_weight_factor: requires beta < 2");
    if (!(p.gamma > p.beta - R(1)))
        throw DomainError("shifted_weight_factor: requires gamma > beta - 1");
    return exp(log_gamma(p.beta) + log_gamma(p.gamma + R(1) - p.beta) -
               log_gamma(R(2) - p.beta) - log_gamma(p.gamma) +
               (R(1) - p.beta) * log(p.c));
}

// Truncated lattice with weights, sized so that the tail beyond the kept
// points is negligible for moments up to order j_max.
template <class R>
struct LatticePoints {
    std::vector<R> x;
    std::vector<R> w;
    long k_plain{0};   // points kept on the plain sublattice
    long k_shifted{0}; // points kept on the shifted sublattice
    R tail_bound{0};   // bound on the dropped mass times |x|^j_max
};

namespace detail {

// Appends one sublattice starting at x0 with weight scale * w(x0).
// Weights advance by the exact ratio w(x+1)/w(x) = c (gamma+x) / ((beta+x)(x+1)).
// Truncation: walk until the majorant max(1,|x|)^j_max * w stays below
// threshold for 20 consecutive points, then keep twice as many points as a
// guard band. Returns the count kept and adds a geometric tail bound.
template <class R>
long append_sublattice(const ModelParams<R>& p, const R& x0, const R& scale,
                       unsigned j_max, const R& threshold,
                       std::vector<R>& xs, std::vector<R>& ws, R& tail) {
    using std::abs;
    using std::exp;
    const long hard_cap = 200000;
    R x = x0;
    R w = scale * exp(log_weight(p, x0));
    long small_run = 0;
    long k_found = -1;
    std::vector<R> majorant;
    long k = 0;
    for (; k < hard_cap; ++k) {
        xs.push_back(x);
        ws.push_back(w);
        R mag = abs(x);
        R maj = (mag > R(1) ? power_int(mag, j_max) : R(1)) * w;
        majorant.push_back(maj);
        if (k_found < 0) {
            small_run = maj < threshold ? small_run + 1 : 0;
            if (small_run >= 20) k_found = k + 1;
        } else if (k + 1 >= 2 * k_found) {
            ++k;
            break;
        }
        w *= p.c * (p.gamma + x) / ((p.beta + x) * (x + R(1)));
        x += R(1);
    }
    if (k_found < 0)
        throw Error("lattice truncation failed to converge");
    R m_last = majorant[majorant.size() - 1];
    R m_prev = majorant[majorant.size() - 2];
    R rho = m_prev > R(0) ? m_last / m_prev : R(0);
    if (rho > R(0.9)) rho = R(0.9); // weights decay superlinearly past the kept range
    tail += R(10) * m_last * rho / (R(1) - rho);
    return k;
}

} // namespace detail

template <class R>
LatticePoints<R> lattice_points(const ModelParams<R>& p,
                                const PrecisionConfig<R>& cfg, unsigned j_max) {
    require_valid(p);
    LatticePoints<R> pts;
    const R threshold = cfg.abs_tol / R(10);
    if (p.lattice == Lattice::PlainN || p.lattice == Lattice::BiLattice)
        pts.k_plain = detail::append_sublattice(p, R(0), R(1), j_max, threshold,
                                                pts.x, pts.w, pts.tail_bound);
    if (p.lattice == Lattice::Shifted || p.lattice == Lattice::BiLattice) {
        R scale = p.lattice == Lattice::BiLattice ? p.tau : R(1);
        pts.k_shifted = detail::append_sublattice(p, R(1) - p.beta, scale, j_max,
                                                  threshold, pts.x, pts.w,
                                                  pts.tail_bound);
    }
    return pts;
}

template <class R>
struct MomentVector {
    std::vector<R> values; // m_0 .. m_j_max
    long truncation_k{0};  // total lattice points used
    R tail_bound{0};
};

// j-th raw moment sum_x x^j w(x) over the truncated lattice.
template <class R>
R moment(const ModelParams<R>& p, unsigned j, const PrecisionConfig<R>& cfg) {
    auto pts = lattice_points(p, cfg, j);
    R sum(0);
    for (std::size_t i = 0; i < pts.x.size(); ++i)
        sum += power_int(pts.x[i], j) * pts.w[i];
    return sum;
}

template <class R>
MomentVector<R> moments(const ModelParams<R>& p, unsigned j_max,
                        const PrecisionConfig<R>& cfg) {
    auto pts = lattice_points(p, cfg, j_max);
    MomentVector<R> mv;
    mv.truncation_k = static_cast<long>(pts.x.size());
    mv.tail_bound = pts.tail_bound;
    mv.values.resize(j_max + 1);
    for (unsigned j = 0; j <= j_max; ++j) {
        R sum(0);
        for (std::size_t i = 0; i < pts.x.size(); ++i)
            sum += power_int(pts.x[i], j) * pts.w[i];
        mv.values[j] = sum;
    }
    return mv;
}

namespace detail {

// Plain-lattice moments in closed form:
//   m0 = M(gamma, beta, c),   m1 = (gamma c / beta) M(gamma+1, beta+1, c).
template <class R>
R plain_moment_closed(const ModelParams<R>& p, unsigned j) {
    if (j == 0) return kummer_m(KummerArgs<R>{p.gamma, p.beta, p.c});
    return (p.gamma * p.c / p.beta) *
           kummer_m(KummerArgs<R>{p.gamma + R(1), p.beta + R(1), p.c});
}

template <class R>
R plain_moment_closed_dc(const ModelParams<R>& p, unsigned j) {
    if (j == 0)
        return (p.gamma / p.beta) *
               kummer_m(KummerArgs<R>{p.gamma + R(1), p.beta + R(1), p.c});
    // d/dc [ (gamma c / beta) M(gamma+1, beta+1, c) ]
    R m = kummer_m(KummerArgs<R>{p.gamma + R(1), p.beta + R(1), p.c});
    R mp = kummer_m(KummerArgs<R>{p.gamma + R(2), p.beta + R(2), p.c});
    return (p.gamma / p.beta) * (m + p.c * (p.gamma + R(1)) / (p.beta + R(1)) * mp);
}

// Shifted-lattice moments in closed form (no tau factor):
//   mh0 = Ch c^(1-beta) M(gamma-beta+1, 2-beta, c)
//   mh1 = Ch c^(1-beta) (1-beta) M(gamma-beta+1, 1-beta, c)
// with Ch = Gamma(beta) Gamma(gamma-beta+1) / (Gamma(gamma) Gamma(2-beta)).
// mh1 carries a Gamma(1-beta)-type factor; near beta = 1 it is a 0 * pole
// product, so we refuse |beta-1| < 1e-6 and let callers fall back to
// summation.
template <class R>
R shifted_moment_closed(const ModelParams<R>& p, unsigned j) {
    using std::abs;
    using std::exp;
    using std::log;
    R ch = exp(log_gamma(p.beta) + log_gamma(p.gamma - p.beta + R(1)) -
               log_gamma(p.gamma) - log_gamma(R(2) - p.beta) +
               (R(1) - p.beta) * log(p.c));
    if (j == 0)
        return ch * kummer_m(KummerArgs<R>{p.gamma - p.beta + R(1), R(2) - p.beta, p.c});
    if (abs(p.beta - R(1)) < R(1e-6))
        throw PoleError("shifted moment m1: beta too close to 1");
    return ch * (R(1) - p.beta) *
           kummer_m(KummerArgs<R>{p.gamma - p.beta + R(1), R(1) - p.beta, p.c});
}

template <class R>
R shifted_moment_closed_dc(const ModelParams<R>& p, unsigned j) {
    using std::abs;
    using std::exp;
    using std::log;
    R ch = exp(log_gamma(p.beta) + log_gamma(p.gamma - p.beta + R(1)) -
               log_gamma(p.gamma) - log_gamma(R(2) - p.beta) +
               (R(1) - p.beta) * log(p.c));
    R a = p.gamma - p.beta + R(1);
    if (j == 0) {
        R b = R(2) - p.beta;
        R m = kummer_m(KummerArgs<R>{a, b, p.c});
        R mp = kummer_m(KummerArgs<R>{a + R(1), b + R(1), p.c});
        return ch * ((R(1) - p.beta) / p.c * m + (a / b) * mp);
    }
    if (abs(p.beta - R(1)) < R(1e-6))
        throw PoleError("shifted moment m1 derivative: beta too close to 1");
    R b = R(1) - p.beta;
    R m = kummer_m(KummerArgs<R>{a, b, p.c});
    R mp = kummer_m(KummerArgs<R>{a + R(1), b + R(1), p.c});
    return ch * (R(1) - p.beta) * ((R(1) - p.beta) / p.c * m + (a / b) * mp);
}

} // namespace detail

// Closed-form moment of order j in {0, 1} via Kummer functions, per lattice.
// Throws PoleError near beta = 1 where the shifted m1 formula degenerates.
template <class R>
R moment_closed_form(const ModelParams<R>& p, unsigned j) {
    require_valid(p);
    if (j > 1)
        throw DomainError("moment_closed_form: only j in {0,1}");
    switch (p.lattice) {
        case Lattice::PlainN: return detail::plain_moment_closed(p, j);
        case Lattice::Shifted: return detail::shifted_moment_closed(p, j);
        case Lattice::BiLattice:
            return detail::plain_moment_closed(p, j) +
                   p.tau * detail::shifted_moment_closed(p, j);
    }
    throw DomainError("moment_closed_form: bad lattice");
}

// c-derivative of moment_closed_form, used by the confluent Riccati check.
template <class R>
R moment_closed_form_dc(const ModelParams<R>& p, unsigned j) {
    require_valid(p);
    if (j > 1)
        throw DomainError("moment_closed_form_dc: only j in {0,1}");
    switch (p.lattice) {
        case Lattice::PlainN: return detail::plain_moment_closed_dc(p, j);
        case Lattice::Shifted: return detail::shifted_moment_closed_dc(p, j);
        case Lattice::BiLattice:
            return detail::plain_moment_closed_dc(p, j) +
                   p.tau * detail::shifted_moment_closed_dc(p, j);
    }
    throw DomainError("moment_closed_form_dc: bad lattice");
}

// Pearson-equation residual for the classical Meixner weight
// v(x) = (beta)_x c^x / x! at integer k >= 1:
//   nabla[(beta + x) v(x)] - (beta + x - x/c) v(x),  nabla f(x) = f(x) - f(x-1).
// Vanishes identically; evaluated as a cross-check of weight ratios.
template <class R>
R pearson_residual_classical(const R& beta, const R& c, long k) {
    using std::exp;
    using std::log;
    if (!(c > R(0)) || !(c < R(1)))
        throw DomainError("pearson_residual_classical: requires 0 < c < 1");
    if (!(beta > R(0)))
        throw DomainError("pearson_residual_classical: requires beta > 0");
    if (k < 1)
        throw DomainError("pearson_residual_classical: requires k >= 1");
    R xk(k);
    R v_k = exp(log_gamma(beta + xk) - log_gamma(beta) + xk * log(c) -
                log_gamma(xk + R(1)));
    R v_km1 = exp(log_gamma(beta + xk - R(1)) - log_gamma(beta) +
                  (xk - R(1)) * log(c) - log_gamma(xk));
    return (beta + xk) * v_k - (beta + xk - R(1)) * v_km1 -
           (beta + xk - xk / c) * v_k;
}

} // namespace meixnerpv
