// Acceptance gate: one line per criterion, nonzero exit if anything fails.
// Tolerances are pinned here as literals; they are the contract, not knobs.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "meixnerpv/meixnerpv.hpp"

using namespace meixnerpv;

using BF = BigFloat;
using Q = boost::multiprecision::cpp_rational;

namespace {

struct Gate {
    bool all_ok = true;

    void line(int id, const char* name, bool ok, const std::string& detail) {
        std::printf("%s %2d %-24s %s\n", ok ? "PASS" : "FAIL", id, name,
                    detail.c_str());
        std::fflush(stdout);
        all_ok = all_ok && ok;
    }
};

template <class R>
R rel(const R& x, const R& ref) {
    using std::abs;
    return abs(x - ref) / abs(ref);
}

template <class R>
void track(R& worst, const R& value) {
    using std::abs;
    if (abs(value) > worst) worst = abs(value);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

PrecisionConfig<BF> big_cfg() {
    return PrecisionConfig<BF>(256, BF(1e-40), BF(1e-40));
}

// Sample points for the residual-identity checks: t away from 0, y away
// from the fixed singularities 0 and 1.
struct PointSampler {
    std::mt19937_64 rng;

    explicit PointSampler(unsigned long long seed) : rng(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    template <class R>
    void sample(R& t, R& y, R& yp) {
        t = R(uniform(0.2, 2.0));
        double span = uniform(0.0, 2.7);
        y = R(span < 0.8 ? 0.1 + span : 1.1 + (span - 0.8));
        yp = R(uniform(-2.0, 2.0));
    }
};

// --------------------------------------------------------------- criterion 1

void criterion_charlier(Gate& gate) {
    const BF tol(1e-20);
    BF worst(0);
    double slowest = 0.0;
    bool ok = true;
    for (double g : {0.8, 1.2, 2.5}) {
        for (double c : {0.3, 0.7}) {
            auto start = std::chrono::steady_clock::now();
            ModelParams<BF> p{BF(g), BF(g), BF(c), Lattice::PlainN, BF(1)};
            auto table = stieltjes_coeffs(p, 15, big_cfg());
            for (int n = 0; n <= 15; ++n) {
                const auto& e = table.entries[n];
                if (n == 0)
                    track(worst, e.a2);
                else
                    track(worst, rel(e.a2, BF(n) * p.c));
                track(worst, rel(e.b, BF(n) + p.c));
            }
            double secs = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
            slowest = std::max(slowest, secs);
            ok = ok && secs < 10.0;
        }
    }
    ok = ok && worst <= tol;
    gate.line(1, "charlier-oracle", ok,
              "max rel err " + fmt(static_cast<double>(worst)) +
                  " (tol 1e-20), slowest set " + fmt(slowest) + " s (cap 10)");
}

// --------------------------------------------------------------- criterion 2

void criterion_shifted_charlier(Gate& gate) {
    const BF tol(1e-20);
    BF worst(0);
    for (double b : {0.4, 0.7, 1.6}) {
        ModelParams<BF> p{BF(1), BF(b), BF(0.4), Lattice::Shifted, BF(1)};
        auto table = stieltjes_coeffs(p, 15, big_cfg());
        for (int n = 0; n <= 15; ++n) {
            const auto& e = table.entries[n];
            if (n == 0)
                track(worst, e.a2);
            else
                track(worst, rel(e.a2, BF(n) * p.c));
            track(worst, rel(e.b, BF(n) + p.c + BF(1) - p.beta));
        }
    }
    gate.line(2, "shifted-charlier-oracle", worst <= tol,
              "max rel err " + fmt(static_cast<double>(worst)) + " (tol 1e-20)");
}

// --------------------------------------------------------------- criterion 3

void criterion_residuals(Gate& gate) {
    const BF tol(1e-20);
    BF worst(0);
    std::mt19937_64 rng(2026);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    std::vector<std::array<double, 3>> triples{{1.5, 0.7, 0.4}};
    for (int i = 0; i < 2; ++i)
        triples.push_back(
            {uniform(1.1, 2.4), uniform(0.15, 0.85), uniform(0.2, 0.7)});

    for (const auto& [g, b, c] : triples) {
        std::vector<ModelParams<BF>> models{
            {BF(g), BF(b), BF(c), Lattice::PlainN, BF(1)},
            {BF(g), BF(b), BF(c), Lattice::Shifted, BF(1)},
        };
        for (double tau : {0.5, 1.0, 2.0})
            models.push_back({BF(g), BF(b), BF(c), Lattice::BiLattice, BF(tau)});
        for (const auto& p : models) {
            auto chain = uv_chain(stieltjes_coeffs(p, 16, big_cfg()));
            for (int n = 1; n <= 15; ++n) {
                auto [r1, r2] = discrete_residuals(n, chain[n].u, chain[n].v,
                                                   chain[n + 1].u, chain[n - 1].v, p);
                track(worst, r1);
                track(worst, r2);
            }
        }
    }
    gate.line(3, "lattice-residuals", worst <= tol,
              "max |r1|,|r2| " + fmt(static_cast<double>(worst)) +
                  " (tol 1e-20), 3 triples x 5 measures, n <= 15");
}

// --------------------------------------------------------------- criterion 4

void criterion_initial(Gate& gate) {
    const BF tol(1e-25);
    auto cfg = big_cfg();
    BF worst(0);
    for (auto lat : {Lattice::PlainN, Lattice::Shifted, Lattice::BiLattice}) {
        ModelParams<BF> p{BF(1.5), BF(0.7), BF(0.4), lat, BF(2)};
        auto mv = moments(p, 1, cfg);
        track(worst, rel(initial_b0(p, cfg), mv.values[1] / mv.values[0]));
    }
    ModelParams<BF> charlier{BF(1.2), BF(1.2), BF(0.7), Lattice::PlainN, BF(1)};
    BF corner1 = abs(initial_b0(charlier, cfg) - charlier.c);
    ModelParams<BF> shifted{BF(1), BF(0.7), BF(0.4), Lattice::Shifted, BF(1)};
    BF corner2 = abs(initial_b0(shifted, cfg) - (BF(1) - shifted.beta + shifted.c));
    track(worst, corner1);
    track(worst, corner2);
    gate.line(4, "initial-b0", worst <= tol,
              "max err " + fmt(static_cast<double>(worst)) +
                  " (tol 1e-25), 3 lattices + 2 closed-form corners");
}

// --------------------------------------------------------------- criterion 5

void criterion_toda(Gate& gate) {
    const BF err_cap(1e-3); // K h^2 with K = 1000 at h = 1e-3
    const BF floor_(1e-12);
    const int n_top = 10;
    auto cfg = big_cfg();
    ModelParams<BF> base{BF(1.5), BF(0.7), BF(0.4), Lattice::PlainN, BF(1)};
    const BF h = BF(1) / 1000;

    auto coeffs_at = [&](const BF& c) {
        ModelParams<BF> p = base;
        p.c = c;
        return stieltjes_coeffs(p, n_top + 1, cfg);
    };
    auto center = coeffs_at(base.c);
    auto ph = coeffs_at(base.c + h), mh = coeffs_at(base.c - h);
    auto ph2 = coeffs_at(base.c + h / 2), mh2 = coeffs_at(base.c - h / 2);

    BF worst(0);
    double ratio_lo = 1e300, ratio_hi = 0.0;
    auto check_pair = [&](const BF& cd_h, const BF& cd_h2, const BF& rhs) {
        BF e1 = abs(cd_h - rhs), e2 = abs(cd_h2 - rhs);
        track(worst, e1);
        if (e2 > floor_) {
            double q = static_cast<double>(e1 / e2);
            ratio_lo = std::min(ratio_lo, q);
            ratio_hi = std::max(ratio_hi, q);
        }
    };
    for (int n = 0; n <= n_top; ++n) {
        auto rhs = toda_rhs(center.entries[n].a2, center.entries[n].b,
                            n > 0 ? center.entries[n - 1].b : BF(0),
                            center.entries[n + 1].a2, base.c);
        if (n > 0)
            check_pair((ph.entries[n].a2 - mh.entries[n].a2) / (2 * h),
                       (ph2.entries[n].a2 - mh2.entries[n].a2) / h, rhs.first);
        check_pair((ph.entries[n].b - mh.entries[n].b) / (2 * h),
                   (ph2.entries[n].b - mh2.entries[n].b) / h, rhs.second);
    }
    bool ok = worst <= err_cap && ratio_lo >= 3.5 && ratio_hi <= 4.5;
    gate.line(5, "toda-flow", ok,
              "max fd err " + fmt(static_cast<double>(worst)) +
                  " (cap 1e-3), h/(h/2) ratios in [" + fmt(ratio_lo) + ", " +
                  fmt(ratio_hi) + "] (window [3.5, 4.5]), n <= 10");
}

// --------------------------------------------------------------- criterion 6

template <class R>
R uv_flow_worst(const PrecisionConfig<R>& pipeline_cfg, const R& solver_tol) {
    using std::abs;
    ModelParams<R> base{R(1.7), R(0.3), R(0.3), Lattice::PlainN, R(1)};
    ModelParams<R> target = base;
    target.c = R(0.5);
    auto chain0 = uv_chain(stieltjes_coeffs(base, 4, pipeline_cfg));
    auto chain1 = uv_chain(stieltjes_coeffs(target, 4, pipeline_cfg));
    PrecisionConfig<R> ode_cfg(pipeline_cfg.mantissa_bits, solver_tol, solver_tol);
    R worst(0);
    for (int n : {1, 2, 3}) {
        auto rhs = [&](const R& t, const std::vector<R>& s) {
            UVState<R> st{n, s[0], s[1], t, base.gamma, base.beta};
            auto d = uv_ode_rhs(st);
            return std::vector<R>{d.first, d.second};
        };
        auto end = integrate_ode(rhs, base.c,
                                 std::vector<R>{chain0[n].u, chain0[n].v},
                                 target.c, ode_cfg);
        R su = abs(chain1[n].u) > R(1) ? abs(chain1[n].u) : R(1);
        R sv = abs(chain1[n].v) > R(1) ? abs(chain1[n].v) : R(1);
        track(worst, (end[0] - chain1[n].u) / su);
        track(worst, (end[1] - chain1[n].v) / sv);
    }
    return worst;
}

void criterion_uv_flow(Gate& gate) {
    double worst_d =
        uv_flow_worst(PrecisionConfig<double>(53, 1e-12, 1e-12), 1e-12);
    BF worst_b = uv_flow_worst(big_cfg(), BF(1e-24));
    bool ok = worst_d <= 1e-8 && worst_b <= BF(1e-20);
    gate.line(6, "uv-flow-endpoint", ok,
              "double " + fmt(worst_d) + " (tol 1e-8), 256-bit " +
                  fmt(static_cast<double>(worst_b)) +
                  " (tol 1e-20), n in {1,2,3}, c: 0.3 -> 0.5");
}

// --------------------------------------------------------------- criterion 7

void criterion_riccati(Gate& gate) {
    BF worst_v0(0);
    for (auto lat : {Lattice::PlainN, Lattice::Shifted, Lattice::BiLattice}) {
        ModelParams<BF> base{BF(1.5), BF(0.7), BF(0.4), lat, BF(2)};
        for (double t : {0.2, 0.4, 0.8, 1.3})
            track(worst_v0, riccati_v0_residual(base, BF(t)));
    }

    double g = 1.5, b = 0.7;
    CaseSpec<double> cs{PVCase::Case2, 0, 1.0, g, b};
    PVParams<double> p = case_params(cs);
    PointSampler sampler(20260816);
    double worst_pv = 0.0;
    for (int i = 0; i < 100; ++i) {
        double t, y, yp;
        sampler.sample(t, y, yp);
        auto jet = riccati_jet(t, y, g, b);
        track(worst_pv, pv_residual(t, jet, p));
    }
    bool ok = worst_v0 <= BF(1e-25) && worst_pv <= 1e-10;
    gate.line(7, "riccati-seeds", ok,
              "(Ric v) residual " + fmt(static_cast<double>(worst_v0)) +
                  " (tol 1e-25, 3 lattices); P_V residual " + fmt(worst_pv) +
                  " (tol 1e-10, 100 samples)");
}

// --------------------------------------------------------------- criterion 8

void criterion_backlund(Gate& gate) {
    const BF g(1.5), b(0.7), guard(1e-6);
    std::vector<CaseSpec<BF>> families{
        {PVCase::Case1, 1, BF(1), g, b},
        {PVCase::Case2, 0, BF(1), g, b},
        {PVCase::Case3, 2, BF(1), g, b},
    };
    PointSampler sampler(8316);
    BF worst(0);
    bool d_fixed = true;
    long total = 0;
    for (const auto& fam : families) {
        PVParams<BF> p = case_params(fam);
        for (int i = 0; i < 8; ++i) {
            SignTriple s = sign_triple_by_index(i);
            int done = 0, attempts = 0;
            while (done < 100 && ++attempts < 10000) {
                BF t, y, yp;
                sampler.sample(t, y, yp);
                try {
                    auto res = backlund(t, Jet2<BF>(y, yp, BF(0)), p, s);
                    if (abs(res.y1.f) < guard || abs(res.y1.f - 1) < guard ||
                        abs(res.y1.f) > 1 / guard)
                        continue;
                    track(worst, pv_residual(t, res.y1, res.params));
                    if (!(res.params.D == p.D)) d_fixed = false;
                } catch (const Error&) {
                    continue;
                }
                ++done;
                ++total;
            }
        }
    }

    bool composites = true;
    for (int n = 0; n <= 2; ++n) {
        composites = composites && remark2_param_composites_exact(Q(3) / 2, Q(7) / 10, n);
        composites = composites && remark2_param_composites_exact(Q(5) / 4, Q(1) / 3, n);
    }

    bool ok = worst <= BF(1e-10) && d_fixed && composites;
    gate.line(8, "backlund-suite", ok,
              "max residual " + fmt(static_cast<double>(worst)) +
                  " (tol 1e-10, " + std::to_string(total) +
                  " samples), D fixed: " + (d_fixed ? "yes" : "no") +
                  ", rational composites: " + (composites ? "exact" : "BROKEN"));
}

// --------------------------------------------------------------- criterion 9

void criterion_ladder(Gate& gate) {
    const BF g(1.5), b(0.7), guard(1e-6);
    PointSampler sampler(91);
    BF worst(0);
    long total = 0;
    for (int n : {0, 1, 2}) {
        for (LadderDirection dir : {LadderDirection::Up, LadderDirection::Down}) {
            int target = dir == LadderDirection::Up ? n + 1 : n - 1;
            PVParams<BF> pt = case_params(CaseSpec<BF>{PVCase::Case1, target, BF(1), g, b});
            int done = 0, attempts = 0;
            while (done < 100 && ++attempts < 10000) {
                BF t, y, yp;
                sampler.sample(t, y, yp);
                try {
                    Jet2<BF> next = ladder(t, Jet2<BF>(y, yp, BF(0)), dir, n, g, b);
                    if (abs(next.f) < guard || abs(next.f - 1) < guard ||
                        abs(next.f) > 1 / guard)
                        continue;
                    track(worst, pv_residual(t, next, pt));
                } catch (const Error&) {
                    continue;
                }
                ++done;
                ++total;
            }
        }
    }
    gate.line(9, "ladder-suite", worst <= BF(1e-10),
              "max residual " + fmt(static_cast<double>(worst)) +
                  " (tol 1e-10, " + std::to_string(total) +
                  " samples), n in {0,1,2}, both directions");
}

// -------------------------------------------------------------- criterion 10

void criterion_lincomb(Gate& gate) {
    const BF b(0.7), guard(1e-6);
    auto family = [&](int n) {
        return PVParams<BF>{(b - 1) * (b - 1) / 2, -((b + n) * (b + n)) / 2,
                            BF(2 * n), BF(-2)};
    };
    PointSampler sampler(1006);
    BF worst(0);
    long total = 0;
    for (bool flip_b : {true, false}) {
        for (int i = 0; i < 8; ++i) {
            SignTriple eps = sign_triple_by_index(i);
            SignTriple delta = flip_b ? SignTriple{eps.e1, -eps.e2, eps.e3}
                                      : SignTriple{-eps.e1, eps.e2, eps.e3};
            PVParams<BF> p = family(1);
            std::optional<LinCombData<BF>> data;
            try {
                data = lincomb(p, eps, delta);
            } catch (const DegenerateM&) {
                continue;
            }
            if (!data) continue;
            int done = 0, attempts = 0;
            while (done < 25 && ++attempts < 10000) {
                BF t, y, yp;
                sampler.sample(t, y, yp);
                try {
                    auto ye = backlund(t, Jet2<BF>(y, yp, BF(0)), p, eps);
                    auto yd = backlund(t, Jet2<BF>(y, yp, BF(0)), p, delta);
                    Jet2<BF> v = data->M * ye.y1 + (BF(1) - data->M) * yd.y1;
                    if (abs(v.f) < guard || abs(v.f - 1) < guard ||
                        abs(v.f) > 1 / guard)
                        continue;
                    track(worst, pv_residual(t, v, data->params));
                } catch (const Error&) {
                    continue;
                }
                ++done;
                ++total;
            }
        }
    }

    bool m_exact = true;
    for (int n = 0; n <= 2; ++n)
        m_exact = m_exact && lincomb_m_example_exact(Q(7) / 10, n);

    PVParams<BF> p = family(1);
    bool excluded = !lincomb(p, SignTriple{1, 1, 1}, SignTriple{1, 1, -1}) &&
                    !lincomb(p, SignTriple{1, 1, 1}, SignTriple{-1, -1, 1});

    bool ok = worst <= BF(1e-10) && m_exact && excluded;
    gate.line(10, "lincomb-theorem", ok,
              "max residual " + fmt(static_cast<double>(worst)) +
                  " (tol 1e-10, " + std::to_string(total) +
                  " samples), M example exact: " + (m_exact ? "yes" : "no") +
                  ", excluded patterns NA: " + (excluded ? "yes" : "no"));
}

// -------------------------------------------------------------- criterion 11

void criterion_remark1(Gate& gate) {
    bool ok = true;
    for (int n : {0, 1, 3})
        ok = ok && remark1_invariance_exact(Q(3) / 2, Q(7) / 10, Q(1), n);
    ok = ok && remark1_invariance_exact(Q(5) / 4, Q(1) / 3, Q(2), 2);
    gate.line(11, "remark1-invariance", ok,
              "case-1 parameters exactly invariant under (beta, gamma) -> "
              "(2-beta, gamma+1-beta) over rationals");
}

// ------------------------------------------------------- verify-all runtime

void criterion_runtime(Gate& gate) {
    auto start = std::chrono::steady_clock::now();
    auto rs_d = verify_suite("all", PrecisionConfig<double>{});
    PrecisionConfig<BF> cfg(256, BF(1e-30), BF(1e-30));
    auto rs_b = verify_suite("all", cfg);
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    bool clean = true;
    for (const auto& c : rs_d)
        clean = clean && c.status != CheckStatus::Fail;
    for (const auto& c : rs_b)
        clean = clean && c.status != CheckStatus::Fail;
    gate.line(12, "verify-all-runtime", clean && secs < 300.0,
              "double + 256-bit sweeps in " + fmt(secs) +
                  " s (cap 300), all checks " + (clean ? "green" : "RED"));
}

} // namespace

int main() {
    set_working_precision(256);
    Gate gate;
    criterion_charlier(gate);
    criterion_shifted_charlier(gate);
    criterion_residuals(gate);
    criterion_initial(gate);
    criterion_toda(gate);
    criterion_uv_flow(gate);
    criterion_riccati(gate);
    criterion_backlund(gate);
    criterion_ladder(gate);
    criterion_lincomb(gate);
    criterion_remark1(gate);
    criterion_runtime(gate);
    return gate.all_ok ? 0 : 1;
}
