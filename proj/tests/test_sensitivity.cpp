#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vds/sensitivity.hpp"

using namespace vds;

namespace {

// Small nonlinear ODE with a known closed-form Jacobian, used to check the
// dual-number machinery independently of the vehicle models.
struct ToyOde {
    static constexpr std::size_t kNX = 2;
    static constexpr std::size_t kNP = 3;

    template <class S>
    void rhs(double /*t*/, std::span<const S> x, std::span<const S> c,
             std::span<S> dx) const {
        using std::sin;
        dx[0] = c[0] * x[0] * x[1] + sin(c[1] * x[0]);
        dx[1] = -c[2] * x[1] + x[0] * x[0];
    }
};

}  // namespace

TEST_CASE("model_jacobian matches the hand Jacobian of a toy ODE") {
    ToyOde ode;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int it = 0; it < 50; ++it) {
        const std::vector<double> x = {dist(rng), dist(rng)};
        const std::vector<double> c = {dist(rng), dist(rng), dist(rng)};
        const Mat J = model_jacobian(ode, 0.0, x, c);
        CHECK(J(0, 0) == doctest::Approx(c[0] * x[1] + c[1] * std::cos(c[1] * x[0]))
                             .epsilon(1e-14));
        CHECK(J(0, 1) == doctest::Approx(c[0] * x[0]).epsilon(1e-14));
        CHECK(J(1, 0) == doctest::Approx(2.0 * x[0]).epsilon(1e-14));
        CHECK(J(1, 1) == doctest::Approx(-c[2]).epsilon(1e-14));
    }
}

TEST_CASE("param_jacobian matches the hand derivative of a toy ODE") {
    ToyOde ode;
    const std::vector<double> x = {0.7, -0.3};
    const std::vector<double> c = {1.2, 0.8, 0.5};
    const Mat fc = param_jacobian(ode, 0.0, x, c);
    CHECK(fc(0, 0) == doctest::Approx(x[0] * x[1]).epsilon(1e-14));
    CHECK(fc(0, 1) == doctest::Approx(x[0] * std::cos(c[1] * x[0])).epsilon(1e-14));
    CHECK(fc(0, 2) == 0.0);
    CHECK(fc(1, 0) == 0.0);
    CHECK(fc(1, 2) == doctest::Approx(-x[1]).epsilon(1e-14));
}

TEST_CASE("jacobians match central differences on the single-track model") {
    StConstInputOde ode{{0.05, -0.01}};
    const StParams sp = st_params_from_dt(reference_params(), 18.0);
    const auto ca = flatten(sp);
    const std::vector<double> c(ca.begin(), ca.end());
    const std::vector<double> x = {0.02, 0.1};

    const Mat J = model_jacobian(ode, 0.0, x, c);
    const Mat fc = param_jacobian(ode, 0.0, x, c);

    auto eval = [&](const std::vector<double>& xx, const std::vector<double>& cc) {
        std::vector<double> dx(2);
        ode.rhs(0.0, std::span<const double>(xx), std::span<const double>(cc),
                std::span<double>(dx));
        return dx;
    };
    for (std::size_t j = 0; j < 2; ++j) {
        std::vector<double> xp = x, xm = x;
        const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
        xp[j] += h;
        xm[j] -= h;
        const auto fp = eval(xp, c), fm = eval(xm, c);
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(J(i, j) == doctest::Approx((fp[i] - fm[i]) / (2.0 * h)).epsilon(1e-6));
    }
    for (std::size_t k = 0; k < kNumStParams; ++k) {
        std::vector<double> cp = c, cm = c;
        const double h = 1e-6 * std::abs(c[k]);
        cp[k] += h;
        cm[k] -= h;
        const auto fp = eval(x, cp), fm = eval(x, cm);
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(fc(i, k) ==
                  doctest::Approx((fp[i] - fm[i]) / (2.0 * h)).epsilon(1e-5).scale(1e-3));
    }
}

TEST_CASE("sensitivity_rhs implements Zdot = fc + J Z and superposition") {
    Mat J(2, 2), fc(2, 3), Z1(2, 3), Z2(2, 3);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (auto* m : {&J, &fc, &Z1, &Z2})
        for (double& v : m->a) v = dist(rng);

    const Mat r1 = sensitivity_rhs(J, fc, Z1);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 3; ++k) {
            double expect = fc(i, k);
            for (std::size_t j = 0; j < 2; ++j) expect += J(i, j) * Z1(j, k);
            CHECK(r1(i, k) == doctest::Approx(expect).epsilon(1e-15));
        }

    // Superposition in the homogeneous part: rhs(Z1 + Z2) - rhs(Z2) = J Z1.
    Mat Zsum(2, 3);
    for (std::size_t i = 0; i < Zsum.a.size(); ++i) Zsum.a[i] = Z1.a[i] + Z2.a[i];
    const Mat r2 = sensitivity_rhs(J, fc, Z2);
    const Mat rsum = sensitivity_rhs(J, fc, Zsum);
    const Mat JZ1 = J * Z1;
    for (std::size_t i = 0; i < rsum.a.size(); ++i)
        CHECK(rsum.a[i] - r2.a[i] == doctest::Approx(JZ1.a[i]).epsilon(1e-12));

    Mat bad(3, 3);
    CHECK_THROWS_AS(sensitivity_rhs(J, fc, bad), std::invalid_argument);
}

TEST_CASE("beta sensitivity chain rule") {
    // beta = atan(v_y / v_x); check against the dual-number derivative.
    const double vx = 12.0, vy = 0.8;
    const double Zvx = 0.3, Zvy = -0.1;
    using D = Dual<1>;
    D dvx(vx), dvy(vy);
    dvx.d[0] = Zvx;
    dvy.d[0] = Zvy;
    const D beta = atan(dvy / dvx);
    CHECK(beta_sensitivity(vx, vy, Zvx, Zvy) == doctest::Approx(beta.d[0]).epsilon(1e-14));
    CHECK_THROWS_AS(beta_sensitivity(0.0, 0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("single-track steady state and its sensitivities match FD") {
    const StParams sp = st_params_from_dt(reference_params(), 15.0);
    const StInput u{0.03, 0.0};
    const auto ss = steady_state_sensitivity_st(sp, u);

    // Steady state: A x + B u = 0.
    const auto m = st_matrices(sp);
    for (int i = 0; i < 2; ++i) {
        const double res = m.A[i][0] * ss.x_ss[0] + m.A[i][1] * ss.x_ss[1] +
                           m.B[i][0] * u.delta_f + m.B[i][1] * u.delta_r;
        CHECK(res == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }

    const auto ca = flatten(sp);
    for (std::size_t k = 0; k < kNumStParams; ++k) {
        std::array<double, kNumStParams> cp = ca, cm = ca;
        const double h = 1e-6 * std::abs(ca[k]);
        cp[k] += h;
        cm[k] -= h;
        const auto sp_p = unflatten_st_params(std::span<const double, kNumStParams>(cp));
        const auto sp_m = unflatten_st_params(std::span<const double, kNumStParams>(cm));
        const auto xp = steady_state_sensitivity_st(sp_p, u).x_ss;
        const auto xm = steady_state_sensitivity_st(sp_m, u).x_ss;
        for (int i = 0; i < 2; ++i) {
            const double fd = (xp[i] - xm[i]) / (2.0 * h);
            CHECK(ss.Z_ss(i, k) == doctest::Approx(fd).epsilon(1e-5).scale(1e-6));
        }
    }
}
