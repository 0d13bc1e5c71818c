#pragma once

#include <span>

#include "vds/dynamics.hpp"
#include "vds/geometry.hpp"
#include "vds/scenario.hpp"
#include "vds/smooth.hpp"
#include "vds/state.hpp"

namespace vds {

// Desk-scale default gains; no claim of optimality. kp_v/ki_v act in Newton
// per (m/s) resp. per meter of accumulated speed error, kp_yaw in radians per
// (rad/s) of yaw-rate error.
struct CtrlGains {
    double kp_v = 1500.0;
    double ki_v = 300.0;
    double kp_yaw = 0.5;
};

struct CtrlConfig {
    CtrlGains gains;
    ActuatorLimits limits;
    bool yaw_feedback = true;
};

// Controller-side constants, frozen from the nominal parameter set at
// scenario setup. The plant's (possibly perturbed) parameter vector never
// feeds the controller: sensitivities are of the model under a fixed
// controller.
struct CtrlDerived {
    double L;      // wheelbase [m]
    double K;      // understeer gradient [s^2/m]
    double s_f, s_r;
    double r_avg;  // mean wheel radius [m]
    double m;

    static CtrlDerived from(const ParamSet& p) {
        const StParams sp = st_params_from_dt(p, 10.0);
        double r_sum = 0.0;
        for (double r : p.r) r_sum += r;
        return {p.l_f + p.l_r, understeer_gradient(sp), p.s_f, p.s_r, r_sum / 4.0, p.m};
    }
};

// Simple tracking controller: longitudinal PI on v_x (integrator state is
// x[13]) distributing equal wheel torques with an inertial feedforward;
// lateral Ackermann feedforward from curvature plus proportional
// yaw-rate-error feedback on the front axle; rear steering zero. Outputs run
// through the C1 saturation at the actuator limits.
template <class S>
DtInputT<S> tracking_controller(const RefPoint& ref, std::span<const S> x,
                                const CtrlConfig& cfg, const CtrlDerived& cd) {
    DtInputT<S> u;
    const S v_err = ref.v - x[kVx];
    const S force = cd.m * ref.accel + cfg.gains.kp_v * v_err + cfg.gains.ki_v * x[13];
    const S wheel_torque = smooth_sat(force * (cd.r_avg * 0.25), cfg.limits.torque_max);
    for (int i = 0; i < 4; ++i) u.torque[i] = wheel_torque;

    S delta_axle = S((cd.L + cd.K * ref.v * ref.v) * ref.kappa);
    if (cfg.yaw_feedback) {
        const S yaw_err = ref.v * ref.kappa - x[kPsiDot];
        delta_axle = delta_axle + cfg.gains.kp_yaw * yaw_err;
    }
    delta_axle = smooth_sat(delta_axle, cfg.limits.delta_max);
    u.delta = ackermann_wheels(delta_axle, S(0.0), cd.s_f, cd.s_r, cd.L);
    return u;
}

// Actuator-level fault overrides, applied after the controller. Identity
// before the fault time. Locked wheels additionally get a state projection
// (omega := 0) in the integration loop.
template <class S>
void apply_faults(DtInputT<S>& u, const std::vector<FaultEvent>& faults, double t) {
    for (const auto& f : faults) {
        if (t < f.time) continue;
        switch (f.kind) {
            case FaultKind::locked_steering: u.delta[f.wheel] = S(f.angle); break;
            case FaultKind::free_running_wheel: u.torque[f.wheel] = S(0.0); break;
            case FaultKind::locked_wheel: u.torque[f.wheel] = S(0.0); break;
        }
    }
}

inline bool wheel_locked(const std::vector<FaultEvent>& faults, int wheel, double t) {
    for (const auto& f : faults)
        if (f.kind == FaultKind::locked_wheel && f.wheel == wheel && t >= f.time) return true;
    return false;
}

}  // namespace vds
