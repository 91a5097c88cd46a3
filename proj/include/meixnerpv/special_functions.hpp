#pragma once

#include <cmath>
#include <limits>

#include "meixnerpv/errors.hpp"
#include "meixnerpv/real.hpp"

namespace meixnerpv {

// log Gamma(x) for x > 0. Dispatches to std::lgamma for builtin floats and
// to the MPFR-backed overload for BigFloat; both are accurate to working
// precision over the positive axis.
template <class R>
R log_gamma(const R& x) {
    if (!(x > R(0)))
        throw DomainError("log_gamma: requires x > 0");
    using std::lgamma;
    return lgamma(x);
}

// Rising factorial (x)_k = x (x+1) ... (x+k-1); empty product for k = 0.
// Computed as an explicit product so exact (e.g. negative integer) bases
// give exact zeros.
template <class R>
R pochhammer(const R& x, unsigned k) {
    R prod(1);
    R factor = x;
    for (unsigned i = 0; i < k; ++i) {
        prod *= factor;
        factor += R(1);
    }
    return prod;
}

template <class R>
struct KummerArgs {
    R a;
    R b;
    R z;
};

namespace detail {

template <class R>
bool near_nonpositive_integer(const R& b) {
    using std::abs;
    if (b > R(0.5)) return false;
    R nearest = R(std::lround(static_cast<double>(b)));
    return abs(b - nearest) < R(1e-9);
}

} // namespace detail

// Confluent hypergeometric M(a, b, z) = sum_k (a)_k z^k / ((b)_k k!) by
// direct Maclaurin summation with the term recurrence
//   term_{k+1} = term_k * (a+k) z / ((b+k)(k+1)).
// The series is entire in z; permitted parameter ranges keep the terms from
// growing far beyond the sum, so direct summation is stable here.
// Stops once |term| <= eps * |sum| with |term| decreasing, twice in a row.
template <class R>
R kummer_m(const KummerArgs<R>& args, const R& eps_in = R(0)) {
    using std::abs;
    if (detail::near_nonpositive_integer(args.b))
        throw PoleError("kummer_m: b at a nonpositive integer");
    const R eps = eps_in > R(0) ? eps_in : std::numeric_limits<R>::epsilon();

    R sum(1);
    R term(1);
    R prev_abs(0);
    bool had_small = false;
    const unsigned long max_terms = 1000000ul;
    for (unsigned long k = 0; k < max_terms; ++k) {
        R kk(static_cast<long>(k));
        term *= (args.a + kk) * args.z / ((args.b + kk) * (kk + R(1)));
        sum += term;
        R t = abs(term);
        bool small = t <= eps * abs(sum) && (k == 0 || t <= prev_abs);
        if (small && had_small) return sum;
        had_small = small;
        prev_abs = t;
    }
    throw Error("kummer_m: series failed to converge");
}

// d/dz M(a, b, z) = (a/b) M(a+1, b+1, z).
template <class R>
R kummer_m_dz(const KummerArgs<R>& args, const R& eps_in = R(0)) {
    if (detail::near_nonpositive_integer(args.b))
        throw PoleError("kummer_m_dz: b at a nonpositive integer");
    KummerArgs<R> shifted{args.a + R(1), args.b + R(1), args.z};
    return (args.a / args.b) * kummer_m(shifted, eps_in);
}

} // namespace meixnerpv
