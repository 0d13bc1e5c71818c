#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "vds/dual.hpp"
#include "vds/dynamics.hpp"
#include "vds/mat.hpp"
#include "vds/params.hpp"

namespace vds {

// Default relative step of the finite-difference oracle, near the central-
// difference optimum eps^(1/3); absolute fallback for parameters whose
// nominal value is zero.
inline constexpr double kFdRelStep = 1e-5;
inline constexpr double kFdAbsStep = 1e-4;

// An ODE suitable for direct-method sensitivity analysis exposes compile-time
// state/parameter counts and a right-hand side that is generic in the scalar
// type, so exact Jacobians fall out of forward-mode dual numbers.
template <class Ode>
concept SensitivityOde = requires(const Ode& ode, double t,
                                  std::span<const double> x, std::span<const double> c,
                                  std::span<double> dx) {
    { Ode::kNX } -> std::convertible_to<std::size_t>;
    { Ode::kNP } -> std::convertible_to<std::size_t>;
    ode.rhs(t, x, c, dx);
};

// Exact Jacobian d f / d x of the model right-hand side, one dual-number
// evaluation with the state channels seeded.
template <class Ode>
Mat model_jacobian(const Ode& ode, double t, std::span<const double> x,
                   std::span<const double> c) {
    constexpr std::size_t NX = Ode::kNX;
    using D = Dual<NX>;
    std::array<D, NX> xd;
    for (std::size_t i = 0; i < NX; ++i) xd[i] = D::seeded(x[i], i);
    std::array<D, Ode::kNP> cd;
    for (std::size_t k = 0; k < Ode::kNP; ++k) cd[k] = D(c[k]);
    std::array<D, NX> dxd;
    ode.rhs(t, std::span<const D>(xd), std::span<const D>(cd), std::span<D>(dxd));
    Mat J(NX, NX);
    for (std::size_t i = 0; i < NX; ++i) {
        if (!std::isfinite(dxd[i].v))
            throw std::runtime_error("model_jacobian: rhs not finite at evaluation point");
        for (std::size_t j = 0; j < NX; ++j) J(i, j) = dxd[i].d[j];
    }
    return J;
}

// Exact input matrix f_c = d f / d c of the sensitivity system, one
// dual-number evaluation with the parameter channels seeded.
template <class Ode>
Mat param_jacobian(const Ode& ode, double t, std::span<const double> x,
                   std::span<const double> c) {
    constexpr std::size_t NP = Ode::kNP;
    using D = Dual<NP>;
    std::array<D, Ode::kNX> xd;
    for (std::size_t i = 0; i < Ode::kNX; ++i) xd[i] = D(x[i]);
    std::array<D, NP> cd;
    for (std::size_t k = 0; k < NP; ++k) cd[k] = D::seeded(c[k], k);
    std::array<D, Ode::kNX> dxd;
    ode.rhs(t, std::span<const D>(xd), std::span<const D>(cd), std::span<D>(dxd));
    Mat fc(Ode::kNX, NP);
    for (std::size_t i = 0; i < Ode::kNX; ++i) {
        if (!std::isfinite(dxd[i].v))
            throw std::runtime_error("param_jacobian: rhs not finite at evaluation point");
        for (std::size_t k = 0; k < NP; ++k) fc(i, k) = dxd[i].d[k];
    }
    return fc;
}

// Z_dot = f_c + J Z.
inline Mat sensitivity_rhs(const Mat& J, const Mat& fc, const Mat& Z) {
    if (J.rows != fc.rows || J.cols != Z.rows || Z.cols != fc.cols)
        throw std::invalid_argument("sensitivity_rhs: dimension mismatch");
    return fc + J * Z;
}

// Side-slip sensitivity from the velocity sensitivities (beta is part of the
// measurement equation of the double-track model):
//   Z_beta = (v_x Z_vy - v_y Z_vx) / (v_x^2 + v_y^2).
inline double beta_sensitivity(double v_x, double v_y, double Z_vx, double Z_vy) {
    const double den = v_x * v_x + v_y * v_y;
    if (den <= 0.0) throw std::domain_error("beta_sensitivity: undefined at standstill");
    return (v_x * Z_vy - v_y * Z_vx) / den;
}

// ---------------------------------------------------------------------------
// Single-track steady state.

struct StSteadyState {
    StState x_ss;
    Mat Z_ss;  // 2 x kNumStParams
};

namespace detail {

inline std::array<double, 2> solve2x2(const std::array<std::array<double, 2>, 2>& A,
                                      const std::array<double, 2>& b) {
    const double det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
    if (det == 0.0) throw std::domain_error("singular system matrix");
    return {(b[0] * A[1][1] - b[1] * A[0][1]) / det,
            (b[1] * A[0][0] - b[0] * A[1][0]) / det};
}

}  // namespace detail

// Open-loop single-track ODE with constant inputs; parameters follow
// kStParamNames ordering.
struct StConstInputOde {
    static constexpr std::size_t kNX = kNumStStates;
    static constexpr std::size_t kNP = kNumStParams;
    StInput u;

    template <class S>
    void rhs(double /*t*/, std::span<const S> x, std::span<const S> c,
             std::span<S> dx) const {
        const auto sp = unflatten_st_params(std::span<const S, kNumStParams>(c));
        const auto d = st_rhs(std::span<const S, kNumStStates>(x), S(u.delta_f), S(u.delta_r), sp);
        dx[0] = d[0];
        dx[1] = d[1];
    }
};

// Steady state and steady-state sensitivities for a constant input:
//   x_ss = -A^-1 B u,  Z_ss column k = -A^-1 f_c(x_ss, u) column k.
inline StSteadyState steady_state_sensitivity_st(const StParams& sp, const StInput& u) {
    const auto m = st_matrices(sp);
    const std::array<double, 2> bu = {m.B[0][0] * u.delta_f + m.B[0][1] * u.delta_r,
                                      m.B[1][0] * u.delta_f + m.B[1][1] * u.delta_r};
    StSteadyState out;
    out.x_ss = detail::solve2x2(m.A, {-bu[0], -bu[1]});

    StConstInputOde ode{u};
    const auto c = flatten(sp);
    const Mat fc = param_jacobian(ode, 0.0, out.x_ss, c);
    out.Z_ss = Mat(2, kNumStParams);
    for (std::size_t k = 0; k < kNumStParams; ++k) {
        const auto zk = detail::solve2x2(m.A, {-fc(0, k), -fc(1, k)});
        out.Z_ss(0, k) = zk[0];
        out.Z_ss(1, k) = zk[1];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Finite-difference oracle.

// Central-difference sensitivity of a full simulated trajectory with respect
// to parameter k. `simulate` maps a flattened parameter vector to a
// trajectory matrix (samples x states) on a fixed time grid; the oracle is
// independent of the direct-method path it validates.
template <class SimFn>
Mat fd_sensitivity_oracle(SimFn&& simulate, std::span<const double> c, std::size_t k,
                          double h_rel = kFdRelStep) {
    std::vector<double> cp(c.begin(), c.end());
    const double h = (c[k] != 0.0) ? h_rel * std::abs(c[k]) : kFdAbsStep;
    cp[k] = c[k] + h;
    Mat hi = simulate(cp);
    cp[k] = c[k] - h;
    Mat lo = simulate(cp);
    if (hi.rows != lo.rows || hi.cols != lo.cols)
        throw std::runtime_error("fd_sensitivity_oracle: perturbed runs disagree on the grid");
    Mat Z(hi.rows, hi.cols);
    for (std::size_t i = 0; i < Z.a.size(); ++i) Z.a[i] = (hi.a[i] - lo.a[i]) / (2.0 * h);
    return Z;
}

}  // namespace vds
