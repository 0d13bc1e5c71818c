#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vds/controller.hpp"
#include "vds/dynamics.hpp"
#include "vds/mat.hpp"
#include "vds/params.hpp"
#include "vds/scenario.hpp"

namespace vds {

enum class ModelKind { single_track, double_track };

struct IntegratorConfig {
    double h = 1e-3;      // fixed step [s], (0, 0.01]
    int decimation = 10;  // output every n-th step
    bool sensitivity = false;
    bool include_pose = false;
};

struct FaultActivation {
    double time;
    int wheel;
    FaultKind kind;
    double info;  // locked wheel: implied holding torque [N m]
};

// Carrier for one simulated run. All series share the time grid; Z is stored
// row-major per sample as blocks Z[state][param] at column state*m + param.
struct SimOutput {
    std::string model;  // "st" | "dt"
    std::vector<std::string> state_names, input_names, param_names;
    std::vector<double> t;
    Mat states;  // samples x n_states
    Mat inputs;  // samples x n_inputs
    bool has_sensitivity = false;
    Mat Z;  // samples x (n_states * n_params)

    std::vector<FaultActivation> fault_log;
    std::vector<std::uint8_t> wheel_lift;  // per-sample bitmask (dt only)

    bool diverged = false;
    double last_valid_time = 0.0;

    bool has_steady_state = false;
    std::vector<double> steady_state;

    bool has_pose = false;
    Mat pose;  // samples x 3: X, Y, psi

    std::size_t n_states() const { return state_names.size(); }
    std::size_t n_params() const { return param_names.size(); }
    double z_at(std::size_t sample, std::size_t state, std::size_t param) const {
        return Z(sample, state * n_params() + param);
    }
    std::string z_col_name(std::size_t state, std::size_t param) const {
        return "Z_" + state_names[state] + "_" + param_names[param];
    }
    std::size_t state_index(const std::string& name) const;
    std::size_t param_index(const std::string& name) const;
};

// ---------------------------------------------------------------------------
// Scenario ODEs. Both expose the SensitivityOde shape: compile-time sizes and
// a scalar-generic rhs, so the direct method differentiates through the
// closed loop (controller included). Controller constants are frozen from
// the nominal parameters; the flattened vector c drives the plant only.

// Double-track closed loop. State: 13 model states + speed-PI integrator.
struct DtScenarioOde {
    static constexpr std::size_t kNX = kNumDtStates + 1;
    static constexpr std::size_t kNP = kNumDtParams;

    const Scenario* sc = nullptr;
    CtrlConfig ctrl;
    CtrlDerived derived{};

    template <class S>
    void rhs(double t, std::span<const S> x, std::span<const S> c, std::span<S> dx) const {
        const auto p = unflatten_params(std::span<const S, kNumDtParams>(c));
        DtInputT<S> u = input_at(t, x);
        const auto dxm =
            dt_rhs(std::span<const S, kNumDtStates>(x.data(), kNumDtStates), u, p);
        for (std::size_t i = 0; i < kNumDtStates; ++i) dx[i] = dxm[i];
        for (int w = 0; w < 4; ++w)
            if (wheel_locked(sc->faults, w, t)) dx[kOmegaFL + w] = S(0.0);
        // Speed-PI integrator state.
        if (sc->kind == ScenarioKind::trajectory_replay) {
            dx[kNumDtStates] = S(0.0);
        } else {
            dx[kNumDtStates] = interp_ref(sc->ref, t).v - x[kVx];
        }
    }

    template <class S>
    DtInputT<S> input_at(double t, std::span<const S> x) const {
        DtInputT<S> u;
        switch (sc->kind) {
            case ScenarioKind::circle:
            case ScenarioKind::odd_synthetic:
                u = tracking_controller(interp_ref(sc->ref, t), x, ctrl, derived);
                break;
            case ScenarioKind::steering_step: {
                RefPoint ref = interp_ref(sc->ref, t);
                ref.kappa = 0.0;  // speed hold only; steering is open loop
                CtrlConfig c2 = ctrl;
                c2.yaw_feedback = false;
                u = tracking_controller(ref, x, c2, derived);
                const double axle =
                    t < sc->step_time ? sc->delta_f_before : sc->delta_f_after;
                const auto w =
                    ackermann_wheels(axle, 0.0, derived.s_f, derived.s_r, derived.L);
                for (int i = 0; i < 4; ++i) u.delta[i] = S(w[i]);
                break;
            }
            case ScenarioKind::trajectory_replay: {
                const InputSample s = interp_inputs(t);
                for (int i = 0; i < 4; ++i) {
                    u.delta[i] = S(s.delta[i]);
                    u.torque[i] = S(s.torque[i]);
                }
                break;
            }
        }
        apply_faults(u, sc->faults, t);
        return u;
    }

    InputSample interp_inputs(double t) const;
};

// Single-track open loop: steering is a pure function of time.
struct StScenarioOde {
    static constexpr std::size_t kNX = kNumStStates;
    static constexpr std::size_t kNP = kNumStParams;

    const Scenario* sc = nullptr;
    double ff_L = 0.0, ff_K = 0.0;  // steering feedforward constants (nominal)

    StInput input_at(double t) const;

    template <class S>
    void rhs(double t, std::span<const S> x, std::span<const S> c, std::span<S> dx) const {
        const auto sp = unflatten_st_params(std::span<const S, kNumStParams>(c));
        const StInput u = input_at(t);
        const auto d = st_rhs(std::span<const S, kNumStStates>(x.data(), kNumStStates),
                              S(u.delta_f), S(u.delta_r), sp);
        dx[0] = d[0];
        dx[1] = d[1];
    }
};

// ---------------------------------------------------------------------------

// Fixed-step integration of model + sensitivity system with fault injection.
// Deterministic: identical inputs give bit-identical output.
SimOutput run_scenario(ModelKind model, const Scenario& sc, const ParamSet& params,
                       const IntegratorConfig& cfg);

// Single-track runner with explicit StParams (v is a model parameter).
SimOutput run_st_scenario(const Scenario& sc, const StParams& sp,
                          const IntegratorConfig& cfg);

// Plain state-trajectory runs on a caller-supplied flattened parameter
// vector, for the finite-difference oracle. The controller keeps the nominal
// parameters. Rows are decimated samples, columns the model states.
Mat simulate_dt_states(const Scenario& sc, const ParamSet& nominal,
                       std::span<const double> c, const IntegratorConfig& cfg);
Mat simulate_st_states(const Scenario& sc, const StParams& nominal,
                       std::span<const double> c, const IntegratorConfig& cfg);

// Mean reference speed; the single-track model's v parameter for a scenario.
double mean_ref_speed(const Scenario& sc);

}  // namespace vds
