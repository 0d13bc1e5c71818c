#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vds/tire.hpp"

using namespace vds;

TEST_CASE("magic formula matches the closed form and its symmetries") {
    const ParamSet p = reference_params();
    const auto& c = p.tire_lat;

    SUBCASE("direct evaluation") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> dist(-0.5, 0.5);
        for (int i = 0; i < 100; ++i) {
            const double a = dist(rng);
            const double bx = c.B * a;
            const double oracle =
                p.mu * c.D * std::sin(c.C * std::atan(bx - c.E * (bx - std::atan(bx))));
            CHECK(magic_formula(a, c, p.mu, 1.0, 0.0) ==
                  doctest::Approx(oracle).epsilon(1e-14));
        }
    }
    SUBCASE("odd in slip for zero offset") {
        for (double a : {0.01, 0.1, 0.3}) {
            CHECK(magic_formula(-a, c, p.mu, 1.0, 0.0) ==
                  doctest::Approx(-magic_formula(a, c, p.mu, 1.0, 0.0)).epsilon(1e-14));
        }
        CHECK(magic_formula(0.0, c, p.mu, 1.0, 0.0) == 0.0);
    }
    SUBCASE("offset shifts the curve vertically") {
        CHECK(magic_formula(0.1, c, p.mu, 1.0, 50.0) ==
              doctest::Approx(magic_formula(0.1, c, p.mu, 1.0, 0.0) + 50.0).epsilon(1e-14));
    }
    SUBCASE("load scale and mu act multiplicatively") {
        const double f = magic_formula(0.2, c, p.mu, 1.0, 0.0);
        CHECK(magic_formula(0.2, c, p.mu, 0.5, 0.0) == doctest::Approx(0.5 * f).epsilon(1e-14));
        CHECK(magic_formula(0.2, c, 0.5 * p.mu, 1.0, 0.0) ==
              doctest::Approx(0.5 * f).epsilon(1e-14));
    }
}

TEST_CASE("cornering stiffness equals the FD slope at zero slip") {
    const ParamSet p = reference_params();
    for (const auto& c : {p.tire_lat, p.tire_lon}) {
        const double h = 1e-7;
        const double fd = (magic_formula(h, c, p.mu, 1.0, 0.0) -
                           magic_formula(-h, c, p.mu, 1.0, 0.0)) /
                          (2.0 * h);
        CHECK(cornering_stiffness(c, p.mu, 1.0) == doctest::Approx(fd).epsilon(1e-6));
        CHECK(cornering_stiffness(c, p.mu, 0.7) ==
              doctest::Approx(0.7 * p.mu * c.B * c.C * c.D).epsilon(1e-14));
    }
}

TEST_CASE("slip quantities") {
    SUBCASE("free rolling gives zero slip") {
        const auto s = slip_quantities(WheelKinematics{10.0, 0.0, 10.0 / 0.31, 0.31});
        CHECK(s.lambda == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        CHECK(s.alpha == 0.0);
    }
    SUBCASE("driving faster than rolling gives positive lambda") {
        const auto s = slip_quantities(WheelKinematics{10.0, 0.0, 1.1 * 10.0 / 0.31, 0.31});
        CHECK(s.lambda == doctest::Approx(0.1).epsilon(1e-12));
    }
    SUBCASE("pure lateral velocity gives alpha = -atan(v_y / v_x)") {
        const auto s = slip_quantities(WheelKinematics{10.0, 1.0, 10.0 / 0.31, 0.31});
        CHECK(s.alpha == doctest::Approx(-std::atan(0.1)).epsilon(1e-12));
    }
    SUBCASE("finite at standstill") {
        const auto s = slip_quantities(WheelKinematics{0.0, 0.0, 0.0, 0.31});
        CHECK(std::isfinite(s.lambda));
        CHECK(std::isfinite(s.alpha));
        CHECK(s.lambda == 0.0);
        CHECK(s.alpha == 0.0);
    }
    SUBCASE("regularization is C1 at |v| = v_eps") {
        const double ve = kSlipVeps, h = 1e-7;
        auto lam = [&](double vx) {
            return slip_quantities(WheelKinematics{vx, 0.5, 3.0, 0.31}, ve).lambda;
        };
        const double in = (lam(ve) - lam(ve - h)) / h;
        const double out = (lam(ve + h) - lam(ve)) / h;
        CHECK(in == doctest::Approx(out).epsilon(1e-4));
    }
}

TEST_CASE("vertical loads") {
    const ParamSet p = reference_params();

    SUBCASE("stationary loads sum to m g with the axle split by lever arms") {
        DtState x{};
        const auto loads = vertical_loads(std::span<const double, kNumDtStates>(x), p);
        double sum = 0.0;
        for (int i = 0; i < 4; ++i) {
            CHECK(loads.F_z[i] == doctest::Approx(loads.F_stat[i]).epsilon(1e-12));
            CHECK(!loads.lift[i]);
            sum += loads.F_z[i];
        }
        CHECK(sum == doctest::Approx(p.m * p.g).epsilon(1e-12));
        const double L = p.l_f + p.l_r;
        CHECK(loads.F_z[kFL] == doctest::Approx(p.m * p.g * p.l_r / (2.0 * L)).epsilon(1e-12));
        CHECK(loads.F_z[kRL] == doctest::Approx(p.m * p.g * p.l_f / (2.0 * L)).epsilon(1e-12));
    }
    SUBCASE("positive roll loads the left wheels") {
        DtState x{};
        x[kPhi] = 0.01;
        const auto loads = vertical_loads(std::span<const double, kNumDtStates>(x), p);
        CHECK(loads.F_z[kFL] > loads.F_z[kFR]);
        CHECK(loads.F_z[kRL] > loads.F_z[kRR]);
        CHECK(loads.F_z[kFL] - loads.F_stat[kFL] ==
              doctest::Approx(p.k_f * p.s_f / 2.0 * 0.01).epsilon(1e-9));
    }
    SUBCASE("body drop compresses all wheels") {
        DtState x{};
        x[kZs] = -0.01;
        const auto loads = vertical_loads(std::span<const double, kNumDtStates>(x), p);
        for (int i = 0; i < 4; ++i) CHECK(loads.F_z[i] > loads.F_stat[i]);
    }
    SUBCASE("extreme extension clamps at zero and flags lift") {
        DtState x{};
        x[kZs] = 1.0;  // body far above ride height: all wheels unloaded
        const auto loads = vertical_loads(std::span<const double, kNumDtStates>(x), p);
        for (int i = 0; i < 4; ++i) {
            CHECK(loads.F_z[i] == 0.0);
            CHECK(loads.lift[i]);
        }
    }
}
