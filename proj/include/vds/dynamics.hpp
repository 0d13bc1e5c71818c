#pragma once

#include <array>
#include <span>
#include <stdexcept>

#include "vds/params.hpp"
#include "vds/state.hpp"
#include "vds/tire.hpp"

namespace vds {

// The single-track model is invalid near standstill (1/v and 1/v^2 terms).
inline constexpr double kStVMin = 1.0;

template <class S>
struct DtRhsInfo {
    std::array<bool, 4> lift{};
    std::array<S, 4> F_x_w{};  // wheel-frame longitudinal forces [N]
    std::array<S, 4> F_y_w{};  // wheel-frame lateral forces [N]
};

// Right-hand side of the non-linear double-track model. Wheel forces come
// from the Magic Formula on the regularized slips, scaled by the varying
// vertical loads, and are rotated between wheel and vehicle frames by the
// steering angles. Lever arms and load tables follow geometry_tables.
template <class S>
std::array<S, kNumDtStates> dt_rhs(std::span<const S, kNumDtStates> x, const DtInputT<S>& u,
                                   const ParamSetT<S>& p, DtRhsInfo<S>* info = nullptr) {
    using std::cos;
    using std::sin;
    const auto geo = geometry_tables(p);
    const auto loads = vertical_loads(x, p);

    S sum_Fx_v(0.0), sum_Fy_v(0.0), sum_Fz(0.0);
    S yaw_torque(0.0), roll_torque(0.0), pitch_torque(0.0);
    std::array<S, 4> omega_dot;
    for (int i = 0; i < 4; ++i) {
        const S cd = cos(u.delta[i]);
        const S sd = sin(u.delta[i]);
        // Contact point velocity in the vehicle frame, then in the wheel frame.
        const S v_wx = x[kVx] + x[kPsiDot] * geo.p[i];
        const S v_wy = x[kVy] + x[kPsiDot] * geo.q[i];
        WheelKinematicsT<S> kin{cd * v_wx + sd * v_wy, -sd * v_wx + cd * v_wy,
                                x[kOmegaFL + i], p.r[i]};
        const auto slip = slip_quantities(kin);
        const S load_scale = loads.F_z[i] / loads.F_stat[i];
        const S F_x_w =
            magic_formula(slip.lambda, p.tire_lon, p.mu, load_scale, S(0.0));
        const S F_y_w =
            magic_formula(slip.alpha, p.tire_lat, p.mu, load_scale, p.S_off[i]);
        const S F_x_v = cd * F_x_w - sd * F_y_w;
        const S F_y_v = sd * F_x_w + cd * F_y_w;

        sum_Fx_v += F_x_v;
        sum_Fy_v += F_y_v;
        sum_Fz += loads.F_z[i];
        yaw_torque += (geo.p[i] * cd + geo.q[i] * sd) * F_x_w +
                      (geo.q[i] * cd - geo.p[i] * sd) * F_y_w;
        roll_torque += geo.p[i] * loads.F_z[i];
        pitch_torque += geo.q[i] * loads.F_z[i];
        omega_dot[i] = (u.torque[i] - p.r[i] * F_x_w) / p.J_w[i];
        if (info) {
            info->lift[i] = loads.lift[i];
            info->F_x_w[i] = F_x_w;
            info->F_y_w[i] = F_y_w;
        }
    }

    std::array<S, kNumDtStates> dx;
    dx[kVx] = x[kVy] * x[kPsiDot] + sum_Fx_v / p.m;
    dx[kVy] = -x[kVx] * x[kPsiDot] + sum_Fy_v / p.m;
    dx[kPsiDot] = yaw_torque / p.J_z;
    dx[kZs] = x[kZsDot];
    dx[kZsDot] = -p.g + sum_Fz / p.m;
    dx[kPhi] = x[kPhiDot];
    dx[kPhiDot] = (p.h * sum_Fy_v - roll_torque) / p.J_x;
    dx[kTheta] = x[kThetaDot];
    dx[kThetaDot] = (-p.h * sum_Fx_v - pitch_torque) / p.J_y;
    for (int i = 0; i < 4; ++i) dx[kOmegaFL + i] = omega_dot[i];
    return dx;
}

template <class S>
std::array<S, kNumDtStates> dt_rhs(const std::array<S, kNumDtStates>& x, const DtInputT<S>& u,
                                   const ParamSetT<S>& p, DtRhsInfo<S>* info = nullptr) {
    return dt_rhs(std::span<const S, kNumDtStates>(x), u, p, info);
}

template <class S>
struct StMatrices {
    std::array<std::array<S, 2>, 2> A;
    std::array<std::array<S, 2>, 2> B;
};

// System and input matrices of the linear single-track model with front and
// rear steering, state (beta, psi_dot), input (delta_f, delta_r).
template <class S>
StMatrices<S> st_matrices(const StParamsT<S>& sp) {
    if (!(value(sp.v) >= kStVMin))
        throw std::domain_error("single-track model invalid below v_min = 1 m/s");
    const S cf = sp.c_alpha_f, cr = sp.c_alpha_r;
    const S lf = sp.l_f, lr = sp.l_r;
    const S m = sp.m, Jz = sp.J_z, v = sp.v;
    StMatrices<S> out;
    out.A[0][0] = -(cf + cr) / (m * v);
    out.A[0][1] = (cr * lr - cf * lf) / (m * v * v) - 1.0;
    out.A[1][0] = (cr * lr - cf * lf) / Jz;
    out.A[1][1] = -(cf * lf * lf + cr * lr * lr) / (Jz * v);
    out.B[0][0] = cf / (m * v);
    out.B[0][1] = cr / (m * v);
    out.B[1][0] = cf * lf / Jz;
    out.B[1][1] = -(cr * lr) / Jz;
    return out;
}

// dx/dt = A x + B u, exactly.
template <class S>
std::array<S, kNumStStates> st_rhs(std::span<const S, kNumStStates> x, const S& delta_f,
                                   const S& delta_r, const StParamsT<S>& sp) {
    const auto m = st_matrices(sp);
    return {m.A[0][0] * x[0] + m.A[0][1] * x[1] + m.B[0][0] * delta_f + m.B[0][1] * delta_r,
            m.A[1][0] * x[0] + m.A[1][1] * x[1] + m.B[1][0] * delta_f + m.B[1][1] * delta_r};
}

template <class S>
std::array<S, kNumStStates> st_rhs(const std::array<S, kNumStStates>& x, const S& delta_f,
                                   const S& delta_r, const StParamsT<S>& sp) {
    return st_rhs(std::span<const S, kNumStStates>(x), delta_f, delta_r, sp);
}

// Consistency mapping from the double-track parameters: per-axle cornering
// stiffness is the tire-curve slope at zero slip and stationary load
// (load_scale = 1), summed over the axle's two wheels; mass and geometry are
// copied. v must be supplied since the single-track model treats it as a
// parameter.
inline StParams st_params_from_dt(const ParamSet& p, double v) {
    StParams sp;
    sp.m = p.m;
    sp.J_z = p.J_z;
    sp.l_f = p.l_f;
    sp.l_r = p.l_r;
    sp.c_alpha_f = 2.0 * cornering_stiffness(p.tire_lat, p.mu, 1.0);
    sp.c_alpha_r = 2.0 * cornering_stiffness(p.tire_lat, p.mu, 1.0);
    sp.v = v;
    return sp;
}

// Steady-state understeer gradient of the single-track model [s^2/m],
// used by the tracking controller's steering feedforward.
inline double understeer_gradient(const StParams& sp) {
    const double L = sp.l_f + sp.l_r;
    return sp.m * (sp.c_alpha_r * sp.l_r - sp.c_alpha_f * sp.l_f) /
           (sp.c_alpha_f * sp.c_alpha_r * L);
}

}  // namespace vds
