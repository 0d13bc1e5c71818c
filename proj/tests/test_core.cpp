#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vds/dual.hpp"
#include "vds/dynamics.hpp"
#include "vds/geometry.hpp"
#include "vds/params.hpp"
#include "vds/scenario.hpp"
#include "vds/smooth.hpp"

using namespace vds;

TEST_CASE("flatten/unflatten is a bijection") {
    const ParamSet p = reference_params();
    const auto c = flatten(p);
    const ParamSet q = unflatten_params(std::span<const double, kNumDtParams>(c));
    const auto c2 = flatten(q);
    for (std::size_t i = 0; i < kNumDtParams; ++i) CHECK(c[i] == c2[i]);

    StParams sp = st_params_from_dt(p, 12.0);
    const auto cs = flatten(sp);
    const StParams sq = unflatten_st_params(std::span<const double, kNumStParams>(cs));
    const auto cs2 = flatten(sq);
    for (std::size_t i = 0; i < kNumStParams; ++i) CHECK(cs[i] == cs2[i]);
}

TEST_CASE("validate_params accepts the reference set and flags violations") {
    ParamSet p = reference_params();
    CHECK(validate_params(p).empty());

    p.m = 0.0;
    auto v = validate_params(p);
    REQUIRE(!v.empty());
    CHECK(v.front().field == "m");

    p = reference_params();
    p.mu = 2.5;
    v = validate_params(p);
    REQUIRE(!v.empty());
    CHECK(v.front().field == "mu");

    StParams sp = st_params_from_dt(reference_params(), 0.5);
    CHECK(!validate_params(sp).empty());  // v below v_min
}

TEST_CASE("ackermann conversions") {
    const ParamSet p = reference_params();

    SUBCASE("zero angles map to zero") {
        auto [df, dr] = ackermann_convert({0.0, 0.0, 0.0, 0.0}, p);
        CHECK(df == 0.0);
        CHECK(dr == 0.0);
    }
    SUBCASE("parallel steering degenerates to the common angle") {
        auto [df, dr] = ackermann_convert({0.1, 0.1, 0.0, 0.0}, p);
        CHECK(df == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(dr == 0.0);
    }
    SUBCASE("20 m radius turn matches the cot-mean oracle") {
        // Wheel angles laid out about the instantaneous center at R = 20 m.
        const double L = p.l_f + p.l_r;
        const double R = 20.0;
        const double d_l = std::atan(L / (R - p.s_f / 2.0));
        const double d_r = std::atan(L / (R + p.s_f / 2.0));
        auto [df, dr] = ackermann_convert({d_l, d_r, 0.0, 0.0}, p);
        const double oracle =
            std::atan(1.0 / (0.5 * (1.0 / std::tan(d_l) + 1.0 / std::tan(d_r))));
        CHECK(df == doctest::Approx(oracle).epsilon(1e-14));
    }
    SUBCASE("axle -> wheels -> axle round trip is identity") {
        const double L = p.l_f + p.l_r;
        for (double axle : {-0.6, -0.3, -0.01, 1e-12, 0.0, 0.05, 0.2, 0.6}) {
            const auto w = ackermann_wheels(axle, axle / 2.0, p.s_f, p.s_r, L);
            auto [df, dr] = ackermann_convert(w, p);
            CHECK(df == doctest::Approx(axle).epsilon(1e-12).scale(1.0));
            CHECK(dr == doctest::Approx(axle / 2.0).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("synthetic ODD trajectories") {
    SUBCASE("acceleration limits hold under finite differencing") {
        for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
            const auto traj = synth_odd_trajectory(seed, 20.0, 3.0);
            REQUIRE(traj.size() > 10);
            for (std::size_t i = 1; i < traj.size(); ++i) {
                const double dt = traj[i].t - traj[i - 1].t;
                const double ax = (traj[i].v - traj[i - 1].v) / dt;
                CHECK(std::abs(ax) <= 3.0 + 1e-9);
                const double ay = traj[i].kappa * traj[i].v * traj[i].v;
                CHECK(std::abs(ay) <= 3.0 + 1e-9);
            }
        }
    }
    SUBCASE("deterministic per seed") {
        const auto a = synth_odd_trajectory(123, 5.0, 3.0);
        const auto b = synth_odd_trajectory(123, 5.0, 3.0);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].v == b[i].v);
            CHECK(a[i].kappa == b[i].kappa);
        }
        const auto c = synth_odd_trajectory(124, 5.0, 3.0);
        CHECK(a[10].v != c[10].v);
    }
    SUBCASE("duration 0 is an error") {
        CHECK_THROWS_AS(synth_odd_trajectory(1, 0.0), std::invalid_argument);
    }
}

TEST_CASE("scenario validation") {
    Scenario s = make_circle(50.0, 10.0, 5.0);
    CHECK(validate_scenario(s).empty());

    s.duration = 0.0;
    CHECK(!validate_scenario(s).empty());

    s = make_circle(50.0, 10.0, 5.0);
    s.faults.push_back({6.0, kFL, FaultKind::locked_wheel, 0.0});
    CHECK(!validate_scenario(s).empty());

    s.faults = {{1.0, kFL, FaultKind::locked_steering, 0.9}};  // beyond delta_max
    CHECK(!validate_scenario(s).empty());
}

TEST_CASE("dual numbers differentiate elementary compositions exactly") {
    using D = Dual<2>;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    for (int it = 0; it < 200; ++it) {
        const double a = dist(rng), b = dist(rng) + 2.0;
        const D x = D::seeded(a, 0), y = D::seeded(b, 1);
        const D f = sin(x * y) / y + sqrt(y) * atan(x) - x * x / (y + 1.0);
        const double fa = std::cos(a * b) * b / b + std::sqrt(b) / (1.0 + a * a) -
                          2.0 * a / (b + 1.0);
        const double fb = (std::cos(a * b) * a * b - std::sin(a * b)) / (b * b) +
                          0.5 / std::sqrt(b) * std::atan(a) + a * a / ((b + 1.0) * (b + 1.0));
        CHECK(f.v == doctest::Approx(std::sin(a * b) / b + std::sqrt(b) * std::atan(a) -
                                     a * a / (b + 1.0))
                         .epsilon(1e-14));
        CHECK(f.d[0] == doctest::Approx(fa).epsilon(1e-12));
        CHECK(f.d[1] == doctest::Approx(fb).epsilon(1e-12));
    }
}

TEST_CASE("smooth primitives are C1 across their blend points") {
    // Values and one-sided slopes agree at the joints.
    const double eps = 0.5;
    CHECK(soft_abs(eps, eps) == doctest::Approx(eps).epsilon(1e-12));
    const double h = 1e-7;
    const double slope_in = (soft_abs(eps, eps) - soft_abs(eps - h, eps)) / h;
    const double slope_out = (soft_abs(eps + h, eps) - soft_abs(eps, eps)) / h;
    CHECK(slope_in == doctest::Approx(slope_out).epsilon(1e-5));

    const double w = 1.0;
    CHECK(smooth_hinge(-1e-9, w) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(smooth_hinge(w, w) == doctest::Approx(w).epsilon(1e-12));
    const double sh_in = (smooth_hinge(w, w) - smooth_hinge(w - h, w)) / h;
    const double sh_out = (smooth_hinge(w + h, w) - smooth_hinge(w, w)) / h;
    CHECK(sh_in == doctest::Approx(sh_out).epsilon(1e-5));

    const double lim = 0.6;
    CHECK(smooth_sat(0.1, lim) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(std::abs(smooth_sat(10.0, lim)) <= lim + 1e-12);
    CHECK(smooth_sat(-10.0, lim) == -smooth_sat(10.0, lim));
}
