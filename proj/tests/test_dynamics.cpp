#include "support.hpp"

#include <vector>

namespace {

template <class R>
mpv::ModelParams<R> std_params(mpv::Lattice lat = mpv::Lattice::PlainN) {
    return {R(15) / 10, R(7) / 10, R(4) / 10, lat, R(2)};
}

} // namespace

TEST_CASE("(a^2, b) <-> (u, v) is the affine map from the recurrence", "[dynamics]") {
    mpv::ModelParams<double> p{1.5, 0.7, 0.4, mpv::Lattice::PlainN, 1.0};
    auto s = mpv::ab_to_uv(2, 0.9, 2.3, p);
    // u = (nc - a^2)/(gamma-1), v = c (n + gamma - beta + c - b)/(gamma-1).
    REQUIRE_THAT(s.u, Catch::Matchers::WithinAbs(-0.2, 1e-14));
    REQUIRE_THAT(s.v, Catch::Matchers::WithinAbs(0.72, 1e-14));
    auto [a2, b] = mpv::uv_to_ab(s);
    REQUIRE_THAT(a2, Catch::Matchers::WithinAbs(0.9, 1e-14));
    REQUIRE_THAT(b, Catch::Matchers::WithinAbs(2.3, 1e-14));
}

TEST_CASE("gamma = 1 has no (u, v) chart", "[dynamics]") {
    mpv::ModelParams<double> p{1.0, 0.7, 0.4, mpv::Lattice::Shifted, 1.0};
    REQUIRE_THROWS_AS(mpv::ab_to_uv(1, 0.4, 1.0, p), mpv::DomainError);
    mpv::ModelParams<double> q{1.0 + 1e-10, 0.7, 0.4, mpv::Lattice::Shifted, 1.0};
    REQUIRE_THROWS_AS(mpv::ab_to_uv(1, 0.4, 1.0, q), mpv::DomainError);
}

TEST_CASE("initial_b0 closed forms at the degenerate corners", "[dynamics]") {
    mpv::PrecisionConfig<double> cfg;
    // gamma = beta is the Charlier measure: b_0 = c.
    mpv::ModelParams<double> ch{1.2, 1.2, 0.7, mpv::Lattice::PlainN, 1.0};
    REQUIRE_THAT(mpv::initial_b0(ch, cfg), Catch::Matchers::WithinAbs(0.7, 1e-12));
    // gamma = 1 on the shifted lattice: b_0 = 1 - beta + c.
    mpv::ModelParams<double> sh{1.0, 0.7, 0.4, mpv::Lattice::Shifted, 1.0};
    REQUIRE_THAT(mpv::initial_b0(sh, cfg), Catch::Matchers::WithinAbs(0.7, 1e-12));
}

TEST_CASE("initial_b0 survives the beta = 1 pole by summing", "[dynamics]") {
    mpv::PrecisionConfig<double> cfg;
    auto at_beta = [&](double beta) {
        mpv::ModelParams<double> p{1.5, beta, 0.4, mpv::Lattice::Shifted, 1.0};
        return mpv::initial_b0(p, cfg);
    };
    // The closed form is refused inside |beta-1| < 1e-6; the summation
    // fallback has to line up with the closed form just outside.
    double mid = at_beta(1.0);
    double lo = at_beta(1.0 - 1e-4);
    double hi = at_beta(1.0 + 1e-4);
    REQUIRE_THAT(mid, Catch::Matchers::WithinAbs(0.5 * (lo + hi), 1e-5));
}

TEST_CASE("step_uv reproduces the orthogonality pipeline", "[dynamics]") {
    use_bits(256);
    mpv::PrecisionConfig<BigFloat> cfg(256, BigFloat(1e-50), BigFloat(1e-50));
    auto p = std_params<BigFloat>(mpv::Lattice::PlainN);
    auto table = mpv::stieltjes_coeffs(p, 3, cfg);
    auto chain = mpv::uv_chain(table);
    double lost = -1.0;
    auto next = mpv::step_uv(chain[1], p, &lost);
    REQUIRE(close(next.u, chain[2].u, BigFloat(1e-45)));
    REQUIRE(close(next.v, chain[2].v, BigFloat(1e-45)));
    REQUIRE(next.n == 2);
    REQUIRE(lost >= 0.0);
    REQUIRE(lost < 5.0);
}

TEST_CASE("step_uv distinguishes 0/0 from a plain zero divisor", "[dynamics]") {
    mpv::ModelParams<double> p{1.5, 0.7, 0.4, mpv::Lattice::PlainN, 1.0};
    mpv::UVState<double> zero{1, 0.0, 0.0, 0.4, 1.5, 0.7};
    REQUIRE_THROWS_AS(mpv::step_uv(zero, p), mpv::IndeterminateStep);
    mpv::UVState<double> pole{1, 1.0, -1.0, 0.4, 1.5, 0.7};
    REQUIRE_THROWS_AS(mpv::step_uv(pole, p), mpv::DivisionByZero);
}

TEST_CASE("discrete residuals vanish on pipeline chains", "[dynamics]") {
    use_bits(256);
    mpv::PrecisionConfig<BigFloat> cfg(256, BigFloat(1e-50), BigFloat(1e-50));
    for (auto lat : {mpv::Lattice::PlainN, mpv::Lattice::Shifted, mpv::Lattice::BiLattice}) {
        auto p = std_params<BigFloat>(lat);
        auto chain = mpv::uv_chain(mpv::stieltjes_coeffs(p, 4, cfg));
        for (int n = 1; n <= 3; ++n) {
            auto [r1, r2] = mpv::discrete_residuals(n, chain[n].u, chain[n].v,
                                                    chain[n + 1].u, chain[n - 1].v, p);
            INFO("lattice " << mpv::lattice_name(lat) << " n=" << n);
            REQUIRE(abs(r1) < BigFloat(1e-45));
            REQUIRE(abs(r2) < BigFloat(1e-45));
        }
    }
}

TEST_CASE("Toda flow matches finite differences of the pipeline", "[dynamics]") {
    use_bits(256);
    mpv::PrecisionConfig<BigFloat> cfg(256, BigFloat(1e-50), BigFloat(1e-50));
    auto p = std_params<BigFloat>(mpv::Lattice::PlainN);
    BigFloat h = BigFloat(1) / 1000;
    auto lo = p, hi = p;
    lo.c -= h;
    hi.c += h;
    auto t0 = mpv::stieltjes_coeffs(lo, 3, cfg);
    auto t1 = mpv::stieltjes_coeffs(p, 3, cfg);
    auto t2 = mpv::stieltjes_coeffs(hi, 3, cfg);
    int n = 2;
    auto [da2, db] = mpv::toda_rhs(t1.entries[n].a2, t1.entries[n].b,
                                   t1.entries[n - 1].b, t1.entries[n + 1].a2, p.c);
    BigFloat fd_a2 = (t2.entries[n].a2 - t0.entries[n].a2) / (2 * h);
    BigFloat fd_b = (t2.entries[n].b - t0.entries[n].b) / (2 * h);
    REQUIRE(close(da2, fd_a2, BigFloat(1e-4)));
    REQUIRE(close(db, fd_b, BigFloat(1e-4)));
    REQUIRE_THROWS_AS(mpv::toda_rhs(BigFloat(1), BigFloat(1), BigFloat(1), BigFloat(1),
                                    BigFloat(0)),
                      mpv::DomainError);
}

TEST_CASE("uv_ode_rhs is stationary exactly at the Charlier point", "[dynamics]") {
    mpv::UVState<double> s{2, 0.0, 0.0, 0.4, 1.2, 1.2};
    auto [du, dv] = mpv::uv_ode_rhs(s);
    REQUIRE(du == 0.0);
    REQUIRE(dv == 0.0);
    // Off the Charlier locus, u + v = 0 is a genuine singularity.
    mpv::UVState<double> sing{2, 0.0, 0.0, 0.4, 1.5, 0.7};
    REQUIRE_THROWS_AS(mpv::uv_ode_rhs(sing), mpv::IndeterminateStep);
    mpv::UVState<double> czero{2, 0.1, 0.2, 0.0, 1.5, 0.7};
    REQUIRE_THROWS_AS(mpv::uv_ode_rhs(czero), mpv::DomainError);
}

TEST_CASE("uv_ode_rhs matches c-derivatives of the pipeline", "[dynamics]") {
    use_bits(256);
    mpv::PrecisionConfig<BigFloat> cfg(256, BigFloat(1e-50), BigFloat(1e-50));
    auto p = std_params<BigFloat>(mpv::Lattice::PlainN);
    BigFloat h = BigFloat(1) / 10000;
    auto lo = p, hi = p;
    lo.c -= h;
    hi.c += h;
    auto c0 = mpv::uv_chain(mpv::stieltjes_coeffs(lo, 2, cfg));
    auto c1 = mpv::uv_chain(mpv::stieltjes_coeffs(p, 2, cfg));
    auto c2 = mpv::uv_chain(mpv::stieltjes_coeffs(hi, 2, cfg));
    auto [du, dv] = mpv::uv_ode_rhs(c1[1]);
    REQUIRE(close(du, (c2[1].u - c0[1].u) / (2 * h), BigFloat(1e-6)));
    REQUIRE(close(dv, (c2[1].v - c0[1].v) / (2 * h), BigFloat(1e-6)));
}

TEST_CASE("riccati_v0_rhs evaluates its quadratic", "[dynamics]") {
    // t^2 v' = (gamma-1) v^2 + t (2 - t + beta - 2 gamma) v + (gamma - beta) t^2
    // at t = 1, v = 2, (gamma, beta) = (1.5, 0.7): v' = 2 - 2.6 + 0.8 = 0.2.
    REQUIRE_THAT(mpv::riccati_v0_rhs(1.0, 2.0, 1.5, 0.7),
                 Catch::Matchers::WithinAbs(0.2, 1e-14));
    REQUIRE_THROWS_AS(mpv::riccati_v0_rhs(0.0, 2.0, 1.5, 0.7), mpv::DomainError);
}

TEST_CASE("v_0(t) satisfies its confluent Riccati equation", "[dynamics]") {
    use_bits(256);
    for (auto lat : {mpv::Lattice::PlainN, mpv::Lattice::Shifted, mpv::Lattice::BiLattice}) {
        auto base = std_params<BigFloat>(lat);
        for (int i = 1; i <= 3; ++i) {
            BigFloat t = BigFloat(i * 2) / 10;
            INFO("lattice " << mpv::lattice_name(lat) << " t=" << t);
            REQUIRE(abs(mpv::riccati_v0_residual(base, t)) < BigFloat(1e-30));
        }
    }
}

TEST_CASE("v0_value agrees with the n = 0 chain entry", "[dynamics]") {
    use_bits(256);
    mpv::PrecisionConfig<BigFloat> cfg(256, BigFloat(1e-50), BigFloat(1e-50));
    auto p = std_params<BigFloat>(mpv::Lattice::PlainN);
    auto chain = mpv::uv_chain(mpv::stieltjes_coeffs(p, 1, cfg));
    REQUIRE(close(mpv::v0_value(p, p.c, cfg), chain[0].v, BigFloat(1e-50)));
}
