#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vds/params.hpp"
#include "vds/state.hpp"

namespace vds {

enum class FaultKind { locked_steering, free_running_wheel, locked_wheel };

const char* to_string(FaultKind k);

// Timed actuator fault on one wheel.
struct FaultEvent {
    double time = 0.0;  // [s], activation time
    int wheel = kFL;
    FaultKind kind = FaultKind::locked_steering;
    double angle = 0.0;  // [rad], locked-steering only
};

enum class ScenarioKind { circle, steering_step, trajectory_replay, odd_synthetic };

const char* to_string(ScenarioKind k);

// Time-indexed speed/curvature reference sample.
struct RefSample {
    double t = 0.0;      // [s]
    double v = 0.0;      // [m/s]
    double kappa = 0.0;  // [1/m]
};

// Explicit input sample for trajectory replay.
struct InputSample {
    double t = 0.0;
    std::array<double, 4> delta{};   // double-track wheel angles [rad]
    std::array<double, 4> torque{};  // double-track wheel torques [N m]
    double delta_f = 0.0, delta_r = 0.0;  // single-track axle angles [rad]
};

// Declarative description of reference motion, inputs, and timed faults.
struct Scenario {
    ScenarioKind kind = ScenarioKind::circle;
    double duration = 5.0;  // [s]
    double step = 1e-3;     // integrator step [s]
    bool sensitivity = true;

    std::vector<RefSample> ref;       // speed/curvature reference
    std::vector<InputSample> inputs;  // explicit inputs (trajectory_replay)
    std::vector<FaultEvent> faults;

    // steering_step: front axle angle switches at step_time, speed held.
    double step_time = 1.0;
    double delta_f_before = 0.0;
    double delta_f_after = 0.0;

    // odd_synthetic bookkeeping (ref is generated from these).
    std::uint64_t seed = 0;
    double a_limit = 3.0;  // [m/s^2]
};

struct RefPoint {
    double v = 0.0;
    double kappa = 0.0;
    double accel = 0.0;  // segment slope of v [m/s^2]
};

// Linear interpolation on the reference grid; clamped at the ends.
RefPoint interp_ref(const std::vector<RefSample>& ref, double t);

// Piecewise-smooth synthetic reference whose implied a_x and a_y stay inside
// [-a_limit, a_limit]; deterministic for a fixed seed. Replaces the
// unavailable urban-drive dataset.
std::vector<RefSample> synth_odd_trajectory(std::uint64_t seed, double duration,
                                            double a_limit = 3.0);

Scenario make_circle(double radius, double speed, double duration, double step = 1e-3);
Scenario make_steering_step(double speed, double delta_before, double delta_after,
                            double step_time, double duration, double step = 1e-3);
Scenario make_odd(std::uint64_t seed, double duration, double a_limit = 3.0,
                  double step = 1e-3);

// Empty result iff the scenario invariants hold.
std::vector<std::string> validate_scenario(const Scenario& s,
                                           const ActuatorLimits& lim = {});

}  // namespace vds
