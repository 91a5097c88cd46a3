#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "meixnerpv/errors.hpp"
#include "meixnerpv/measure.hpp"
#include "meixnerpv/real.hpp"

namespace meixnerpv {

template <class R>
struct RecurrenceEntry {
    int n;
    R a2; // a_n^2, with a_0^2 = 0 by convention
    R b;  // b_n
};

template <class R>
struct RecurrenceTable {
    std::vector<RecurrenceEntry<R>> entries; // n = 0 .. n_max
    ModelParams<R> params;
    PrecisionConfig<R> precision;
    R norm0{0};                  // squared norm of P_0, i.e. m_0
    long truncation_k{0};        // lattice points used
    R tail_bound{0};
    double est_correct_digits{0};
};

// Three-term recurrence coefficients of the monic orthogonal polynomials by
// discretized Stieltjes iteration on the truncated lattice:
//   P_{n+1}(x) = (x - b_n) P_n(x) - a_n^2 P_{n-1}(x)
//   b_n = <x P_n, P_n> / <P_n, P_n>,   a_{n+1}^2 = <P_{n+1}, P_{n+1}> / <P_n, P_n>.
// Inner products cancel digits as n grows; est_correct_digits tracks the
// worst cancellation seen, and PrecisionExhausted fires below 5 digits.
template <class R>
RecurrenceTable<R> stieltjes_coeffs(const ModelParams<R>& p, int n_max,
                                    const PrecisionConfig<R>& cfg) {
    using std::abs;
    using std::log10;
    if (n_max < 0)
        throw DomainError("stieltjes_coeffs: n_max must be >= 0");
    require_valid(p);

    auto pts = lattice_points(p, cfg, 2 * static_cast<unsigned>(n_max + 1) + 2);
    const std::size_t m = pts.x.size();

    RecurrenceTable<R> table;
    table.params = p;
    table.precision = cfg;
    table.truncation_k = static_cast<long>(m);
    table.tail_bound = pts.tail_bound;

    std::vector<R> p_prev(m, R(0)), p_cur(m, R(1)), p_next(m);

    R norm_cur(0), xdot(0);
    for (std::size_t i = 0; i < m; ++i) {
        norm_cur += pts.w[i];
        xdot += pts.x[i] * pts.w[i];
    }
    if (!(norm_cur > R(0)))
        throw PrecisionExhausted("stieltjes_coeffs: nonpositive total mass");
    table.norm0 = norm_cur;

    R b_cur = xdot / norm_cur;
    R a2_cur(0);
    table.entries.push_back({0, a2_cur, b_cur});

    double min_est = cfg.working_digits10();
    for (int n = 1; n <= n_max; ++n) {
        R norm_next(0), xnext(0), ingredients(0);
        for (std::size_t i = 0; i < m; ++i) {
            R shifted = (pts.x[i] - b_cur) * p_cur[i];
            R carried = a2_cur * p_prev[i];
            p_next[i] = shifted - carried;
            norm_next += p_next[i] * p_next[i] * pts.w[i];
            xnext += pts.x[i] * p_next[i] * p_next[i] * pts.w[i];
            R mag = abs(shifted) + abs(carried);
            ingredients += mag * mag * pts.w[i];
        }
        if (!(norm_next > R(0)))
            throw PrecisionExhausted("stieltjes_coeffs: norm lost to cancellation at n = " +
                                     std::to_string(n));
        double ratio = static_cast<double>(norm_next / ingredients);
        double est = cfg.working_digits10() + 0.5 * std::log10(ratio);
        if (est < min_est) min_est = est;
        if (min_est < 5.0)
            throw PrecisionExhausted("stieltjes_coeffs: fewer than 5 trusted digits at n = " +
                                     std::to_string(n));

        R a2_next = norm_next / norm_cur;
        R b_next = xnext / norm_next;
        table.entries.push_back({n, a2_next, b_next});

        p_prev.swap(p_cur);
        p_cur.swap(p_next);
        a2_cur = a2_next;
        b_cur = b_next;
        norm_cur = norm_next;
    }
    table.est_correct_digits = min_est;
    return table;
}

// Monic P_n(x) from the table's recurrence coefficients.
template <class R>
R eval_monic(const RecurrenceTable<R>& table, int n, const R& x) {
    if (n < 0 || static_cast<std::size_t>(n) >= table.entries.size() + 1)
        throw IndexError("eval_monic: n outside tabulated range");
    R prev(0), cur(1);
    for (int k = 0; k < n; ++k) {
        R next = (x - table.entries[k].b) * cur - table.entries[k].a2 * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// <P_n, P_m> / (|P_n| |P_m|) - delta_nm over the truncated lattice.
template <class R>
R orthonormality_residual(const RecurrenceTable<R>& table, int n, int m_idx,
                          const PrecisionConfig<R>& cfg) {
    using std::abs;
    using std::sqrt;
    if (n < 0 || m_idx < 0 ||
        static_cast<std::size_t>(std::max(n, m_idx)) >= table.entries.size())
        throw IndexError("orthonormality_residual: index outside tabulated range");
    auto pts = lattice_points(table.params, cfg,
                              static_cast<unsigned>(n + m_idx) + 2);
    R dot(0);
    for (std::size_t i = 0; i < pts.x.size(); ++i)
        dot += eval_monic(table, n, pts.x[i]) * eval_monic(table, m_idx, pts.x[i]) *
               pts.w[i];
    R norm_n = table.norm0, norm_m = table.norm0;
    for (int k = 1; k <= n; ++k) norm_n *= table.entries[k].a2;
    for (int k = 1; k <= m_idx; ++k) norm_m *= table.entries[k].a2;
    R value = dot / sqrt(norm_n * norm_m);
    return n == m_idx ? value - R(1) : value;
}

// Classical Meixner recurrence (0 < c < 1, beta > 0):
//   a_n^2 = n (n + beta - 1) c / (1-c)^2,   b_n = (n + (n + beta) c) / (1 - c).
template <class R>
RecurrenceEntry<R> classical_meixner_coeffs(const R& beta, const R& c, int n) {
    if (!(c > R(0)) || !(c < R(1)))
        throw DomainError("classical_meixner_coeffs: requires 0 < c < 1");
    if (!(beta > R(0)))
        throw DomainError("classical_meixner_coeffs: requires beta > 0");
    if (n < 0)
        throw DomainError("classical_meixner_coeffs: requires n >= 0");
    R nn(n);
    R one_minus_c = R(1) - c;
    return {n, nn * (nn + beta - R(1)) * c / (one_minus_c * one_minus_c),
            (nn + (nn + beta) * c) / one_minus_c};
}

} // namespace meixnerpv
