#pragma once

#include <array>
#include <cstddef>

namespace vds {

// Double-track state vector layout (13 entries). Lift, roll and pitch
// positions are part of the state because the varying tire loads read them.
inline constexpr std::size_t kNumDtStates = 13;
enum DtStateIdx : std::size_t {
    kVx = 0,       // body-frame longitudinal velocity [m/s]
    kVy = 1,       // body-frame lateral velocity [m/s]
    kPsiDot = 2,   // yaw rate [rad/s]
    kZs = 3,       // lift [m]
    kZsDot = 4,    // lift rate [m/s]
    kPhi = 5,      // roll angle [rad]
    kPhiDot = 6,   // roll rate [rad/s]
    kTheta = 7,    // pitch angle [rad]
    kThetaDot = 8, // pitch rate [rad/s]
    kOmegaFL = 9,  // wheel spin speeds [rad/s]
    kOmegaFR = 10,
    kOmegaRL = 11,
    kOmegaRR = 12,
};
inline constexpr std::array<const char*, kNumDtStates> kDtStateNames = {
    "v_x",   "v_y",     "psi_dot", "z_s",      "z_s_dot",  "phi",      "phi_dot",
    "theta", "theta_dot", "omega_fl", "omega_fr", "omega_rl", "omega_rr"};

using DtState = std::array<double, kNumDtStates>;

// Single-track state vector (side-slip angle, yaw rate).
inline constexpr std::size_t kNumStStates = 2;
inline constexpr std::array<const char*, kNumStStates> kStStateNames = {"beta", "psi_dot"};
using StState = std::array<double, kNumStStates>;

// Double-track control input: per-wheel steering angles and drive torques.
template <class S>
struct DtInputT {
    std::array<S, 4> delta{};   // [rad]
    std::array<S, 4> torque{};  // [N m]
};
using DtInput = DtInputT<double>;

struct StInput {
    double delta_f = 0.0;
    double delta_r = 0.0;
};

// Actuator limits used for input validation and controller saturation.
struct ActuatorLimits {
    double delta_max = 0.6;    // [rad]
    double torque_max = 1500;  // [N m] per wheel
};

}  // namespace vds
