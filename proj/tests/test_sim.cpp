#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vds/integrate.hpp"
#include "vds/sensitivity.hpp"
#include "vds/sim.hpp"

using namespace vds;

TEST_CASE("rk4 basics") {
    Rk4Workspace ws;

    SUBCASE("zero rhs keeps the state") {
        std::vector<double> x = {1.0, -2.0};
        auto rhs = [](double, const std::vector<double>&, std::vector<double>& dx) {
            dx[0] = dx[1] = 0.0;
        };
        rk4_step(rhs, x, 0.0, 1e-3, ws);
        CHECK(x[0] == 1.0);
        CHECK(x[1] == -2.0);
    }
    SUBCASE("4th order convergence on the exponential") {
        auto rhs = [](double, const std::vector<double>& x, std::vector<double>& dx) {
            dx[0] = -x[0];
        };
        auto err_at = [&](double h) {
            std::vector<double> x = {1.0};
            const long n = std::lround(1.0 / h);
            for (long i = 0; i < n; ++i) rk4_step(rhs, x, i * h, h, ws);
            return std::abs(x[0] - std::exp(-1.0));
        };
        const double e1 = err_at(1e-2), e2 = err_at(5e-3);
        CHECK(e1 / e2 > 16.0 * 0.8);
        CHECK(e1 / e2 < 16.0 * 1.2);
    }
    SUBCASE("quadrature of cos(t) matches sin(t) to 1e-10") {
        auto rhs = [](double t, const std::vector<double>&, std::vector<double>& dx) {
            dx[0] = std::cos(t);
        };
        std::vector<double> x = {0.0};
        const double h = 1e-3;
        for (long i = 0; i < 1000; ++i) rk4_step(rhs, x, i * h, h, ws);
        CHECK(std::abs(x[0] - std::sin(1.0)) <= 1e-10);
    }
    SUBCASE("h <= 0 is rejected") {
        std::vector<double> x = {1.0};
        auto rhs = [](double, const std::vector<double>&, std::vector<double>& dx) {
            dx[0] = 0.0;
        };
        CHECK_THROWS_AS(rk4_step(rhs, x, 0.0, 0.0, ws), std::invalid_argument);
    }
}

TEST_CASE("zero-input replay from rest stays at rest") {
    Scenario sc;
    sc.kind = ScenarioKind::trajectory_replay;
    sc.duration = 1.0;
    sc.inputs = {{0.0, {}, {}, 0.0, 0.0}, {1.0, {}, {}, 0.0, 0.0}};
    sc.sensitivity = false;
    IntegratorConfig cfg;
    const SimOutput out = run_scenario(ModelKind::double_track, sc, reference_params(), cfg);
    REQUIRE(!out.diverged);
    for (std::size_t i = 0; i < out.t.size(); ++i)
        for (std::size_t j = 0; j < out.n_states(); ++j)
            CHECK(std::abs(out.states(i, j)) <= 1e-9);
}

TEST_CASE("determinism and augmentation invariance") {
    Scenario sc = make_circle(100.0, 12.0, 2.0);
    const ParamSet p = reference_params();
    IntegratorConfig cfg;
    cfg.sensitivity = true;

    const SimOutput a = run_scenario(ModelKind::double_track, sc, p, cfg);
    const SimOutput b = run_scenario(ModelKind::double_track, sc, p, cfg);
    REQUIRE(a.t.size() == b.t.size());
    CHECK(a.states.a == b.states.a);  // bit-identical
    CHECK(a.Z.a == b.Z.a);

    IntegratorConfig cfg_off = cfg;
    cfg_off.sensitivity = false;
    const SimOutput c = run_scenario(ModelKind::double_track, sc, p, cfg_off);
    CHECK(a.states.a == c.states.a);  // sensitivity on/off: same state path
}

TEST_CASE("decimation changes sampling only") {
    Scenario sc = make_circle(100.0, 12.0, 1.0);
    const ParamSet p = reference_params();
    IntegratorConfig c1, c10;
    c1.decimation = 1;
    c10.decimation = 10;
    const SimOutput a = run_scenario(ModelKind::double_track, sc, p, c1);
    const SimOutput b = run_scenario(ModelKind::double_track, sc, p, c10);
    REQUIRE((a.t.size() - 1) == (b.t.size() - 1) * 10);
    for (std::size_t i = 0; i < b.t.size(); ++i) {
        CHECK(a.t[i * 10] == b.t[i]);
        for (std::size_t j = 0; j < a.n_states(); ++j)
            CHECK(a.states(i * 10, j) == b.states(i, j));
    }
}

TEST_CASE("halving h moves a smooth 5 s run by <= 1e-7") {
    Scenario sc = make_circle(100.0, 12.0, 5.0);
    const ParamSet p = reference_params();
    IntegratorConfig ch, ch2;
    ch.h = 1e-3;
    ch.decimation = 5000;
    ch2.h = 5e-4;
    ch2.decimation = 10000;
    const SimOutput a = run_scenario(ModelKind::double_track, sc, p, ch);
    const SimOutput b = run_scenario(ModelKind::double_track, sc, p, ch2);
    for (std::size_t j = 0; j < a.n_states(); ++j)
        CHECK(std::abs(a.states(a.t.size() - 1, j) - b.states(b.t.size() - 1, j)) <= 1e-7);
}

TEST_CASE("faults override the controller") {
    const ParamSet p = reference_params();

    SUBCASE("identity before the fault time") {
        DtInput u{};
        u.delta = {0.1, 0.1, 0.0, 0.0};
        u.torque = {50.0, 50.0, 50.0, 50.0};
        DtInput v = u;
        std::vector<FaultEvent> faults = {{1.0, kFL, FaultKind::locked_steering, 0.5}};
        apply_faults(v, faults, 0.5);
        CHECK(v.delta == u.delta);
        CHECK(v.torque == u.torque);
        apply_faults(v, faults, 1.0);
        CHECK(v.delta[kFL] == 0.5);
        CHECK(v.delta[kFR] == 0.1);
    }
    SUBCASE("locked steering wins against the controller in closed loop") {
        Scenario sc = make_circle(100.0, 10.0, 2.0);
        const double angle = 30.0 * M_PI / 180.0;
        sc.faults = {{1.0, kFL, FaultKind::locked_steering, angle}};
        sc.sensitivity = false;
        IntegratorConfig cfg;
        const SimOutput out = run_scenario(ModelKind::double_track, sc, p, cfg);
        REQUIRE(!out.diverged);
        // recorded inputs hold the locked angle after t = 1 s
        bool checked = false;
        for (std::size_t i = 0; i < out.t.size(); ++i)
            if (out.t[i] >= 1.0) {
                CHECK(out.inputs(i, 0) == doctest::Approx(angle).epsilon(1e-12));
                checked = true;
            }
        CHECK(checked);
        REQUIRE(out.fault_log.size() == 1);
        CHECK(out.fault_log[0].kind == FaultKind::locked_steering);
    }
    SUBCASE("locked wheel pins omega to zero and logs a holding torque") {
        Scenario sc = make_circle(100.0, 10.0, 2.0);
        sc.faults = {{1.0, kRR, FaultKind::locked_wheel, 0.0}};
        sc.sensitivity = false;
        IntegratorConfig cfg;
        const SimOutput out = run_scenario(ModelKind::double_track, sc, p, cfg);
        REQUIRE(!out.diverged);
        const std::size_t iw = out.state_index("omega_rr");
        for (std::size_t i = 0; i < out.t.size(); ++i)
            if (out.t[i] > 1.0) CHECK(out.states(i, iw) == 0.0);
        REQUIRE(out.fault_log.size() == 1);
        CHECK(std::isfinite(out.fault_log[0].info));
    }
}

TEST_CASE("single-track runner reaches the steady-state yaw gain") {
    const ParamSet p = reference_params();
    const double v = 15.0, delta = 0.02;
    Scenario sc = make_steering_step(v, 0.0, delta, 0.5, 6.0);
    sc.sensitivity = false;
    const StParams sp = st_params_from_dt(p, v);
    IntegratorConfig cfg;
    const SimOutput out = run_st_scenario(sc, sp, cfg);
    REQUIRE(!out.diverged);

    const double L = sp.l_f + sp.l_r;
    const double K = understeer_gradient(sp);
    const double gain = v / (L + K * v * v);  // steady yaw rate per axle angle
    const double psi_end = out.states(out.t.size() - 1, out.state_index("psi_dot"));
    CHECK(psi_end == doctest::Approx(gain * delta).epsilon(1e-6));
}

TEST_CASE("divergence is reported, not thrown") {
    // Absurd cornering stiffness puts the linear model far outside the
    // integrator's stability region; the unbounded growth must be reported.
    StParams sp = st_params_from_dt(reference_params(), 15.0);
    sp.c_alpha_f = sp.c_alpha_r = 1e9;
    Scenario sc = make_steering_step(15.0, 0.0, 0.01, 0.1, 2.0);
    sc.sensitivity = false;
    IntegratorConfig cfg;
    const SimOutput out = run_st_scenario(sc, sp, cfg);
    CHECK(out.diverged);
    CHECK(out.last_valid_time < 2.0);
}

TEST_CASE("circle runs report steady-state values") {
    Scenario sc = make_circle(100.0, 12.0, 5.0);
    sc.sensitivity = false;
    IntegratorConfig cfg;
    const SimOutput out = run_scenario(ModelKind::double_track, sc, reference_params(), cfg);
    REQUIRE(out.has_steady_state);
    CHECK(out.steady_state[kPsiDot] == doctest::Approx(0.12).epsilon(0.05));
}
