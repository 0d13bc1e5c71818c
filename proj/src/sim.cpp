#include "vds/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vds/integrate.hpp"
#include "vds/sensitivity.hpp"

namespace vds {

std::size_t SimOutput::state_index(const std::string& name) const {
    for (std::size_t i = 0; i < state_names.size(); ++i)
        if (state_names[i] == name) return i;
    throw std::out_of_range("unknown state: " + name);
}

std::size_t SimOutput::param_index(const std::string& name) const {
    for (std::size_t i = 0; i < param_names.size(); ++i)
        if (param_names[i] == name) return i;
    throw std::out_of_range("unknown parameter: " + name);
}

InputSample DtScenarioOde::interp_inputs(double t) const {
    const auto& in = sc->inputs;
    if (in.empty()) throw std::invalid_argument("trajectory_replay without input samples");
    if (in.size() == 1 || t <= in.front().t) return in.front();
    if (t >= in.back().t) return in.back();
    auto it = std::upper_bound(in.begin(), in.end(), t,
                               [](double x, const InputSample& s) { return x < s.t; });
    const InputSample& b = *it;
    const InputSample& a = *(it - 1);
    const double w = (t - a.t) / (b.t - a.t);
    InputSample r = a;
    r.t = t;
    for (int i = 0; i < 4; ++i) {
        r.delta[i] = a.delta[i] + w * (b.delta[i] - a.delta[i]);
        r.torque[i] = a.torque[i] + w * (b.torque[i] - a.torque[i]);
    }
    r.delta_f = a.delta_f + w * (b.delta_f - a.delta_f);
    r.delta_r = a.delta_r + w * (b.delta_r - a.delta_r);
    return r;
}

StInput StScenarioOde::input_at(double t) const {
    switch (sc->kind) {
        case ScenarioKind::circle:
        case ScenarioKind::odd_synthetic: {
            const RefPoint r = interp_ref(sc->ref, t);
            return {(ff_L + ff_K * r.v * r.v) * r.kappa, 0.0};
        }
        case ScenarioKind::steering_step:
            return {t < sc->step_time ? sc->delta_f_before : sc->delta_f_after, 0.0};
        case ScenarioKind::trajectory_replay: {
            const auto& in = sc->inputs;
            if (in.empty())
                throw std::invalid_argument("trajectory_replay without input samples");
            if (in.size() == 1 || t <= in.front().t)
                return {in.front().delta_f, in.front().delta_r};
            if (t >= in.back().t) return {in.back().delta_f, in.back().delta_r};
            auto it = std::upper_bound(in.begin(), in.end(), t,
                                       [](double x, const InputSample& s) { return x < s.t; });
            const InputSample& b = *it;
            const InputSample& a = *(it - 1);
            const double w = (t - a.t) / (b.t - a.t);
            return {a.delta_f + w * (b.delta_f - a.delta_f),
                    a.delta_r + w * (b.delta_r - a.delta_r)};
        }
    }
    return {};
}

double mean_ref_speed(const Scenario& sc) {
    if (sc.ref.empty()) return 0.0;
    double s = 0.0;
    for (const auto& r : sc.ref) s += r.v;
    return s / static_cast<double>(sc.ref.size());
}

namespace {

void check_cfg(const IntegratorConfig& cfg) {
    if (!(cfg.h > 0.0 && cfg.h <= 0.01))
        throw std::invalid_argument("IntegratorConfig: h out of (0, 0.01]");
    if (cfg.decimation < 1) throw std::invalid_argument("IntegratorConfig: decimation >= 1");
}

// Per-sample extras: inputs and wheel-lift flags.
void record_extras(const DtScenarioOde& ode, double t, const std::vector<double>& y,
                   std::span<const double> c, std::size_t sample, SimOutput& out) {
    const auto u = ode.input_at(t, std::span<const double>(y.data(), DtScenarioOde::kNX));
    for (int i = 0; i < 4; ++i) {
        out.inputs(sample, i) = u.delta[i];
        out.inputs(sample, 4 + i) = u.torque[i];
    }
    std::array<double, kNumDtStates> x;
    std::copy_n(y.begin(), kNumDtStates, x.begin());
    const auto p =
        unflatten_params(std::span<const double, kNumDtParams>(c.data(), kNumDtParams));
    const auto loads = vertical_loads(std::span<const double, kNumDtStates>(x), p);
    std::uint8_t mask = 0;
    for (int i = 0; i < 4; ++i)
        if (loads.lift[i]) mask |= static_cast<std::uint8_t>(1u << i);
    out.wheel_lift[sample] = mask;
}

void record_extras(const StScenarioOde& ode, double t, const std::vector<double>&,
                   std::span<const double>, std::size_t sample, SimOutput& out) {
    const StInput u = ode.input_at(t);
    out.inputs(sample, 0) = u.delta_f;
    out.inputs(sample, 1) = u.delta_r;
}

double implied_holding_torque(const DtScenarioOde& ode, double t, const std::vector<double>& y,
                              std::span<const double> c, int wheel) {
    std::array<double, kNumDtStates> x;
    std::copy_n(y.begin(), kNumDtStates, x.begin());
    const auto p =
        unflatten_params(std::span<const double, kNumDtParams>(c.data(), kNumDtParams));
    const auto u = ode.input_at(t, std::span<const double>(y.data(), DtScenarioOde::kNX));
    DtRhsInfo<double> info;
    dt_rhs(x, u, p, &info);
    return p.r[wheel] * info.F_x_w[wheel];
}

double implied_holding_torque(const StScenarioOde&, double, const std::vector<double>&,
                              std::span<const double>, int) {
    return 0.0;
}

// Shared integration driver. The augmented vector is [x, vec(Z)] when the
// sensitivity system is co-integrated; the state block is advanced by the
// same plain-double evaluations either way, so fault-free trajectories are
// bit-identical with sensitivity on or off.
template <class Ode>
void integrate_run(const Ode& ode, std::span<const double> c, std::vector<double> x0,
                   const Scenario& sc, const IntegratorConfig& cfg, std::size_t n_out,
                   SimOutput& out, Mat* states_only) {
    constexpr std::size_t NX = Ode::kNX;
    constexpr std::size_t NP = Ode::kNP;
    const bool sens = cfg.sensitivity && states_only == nullptr;
    const std::size_t dim = sens ? NX + NX * NP : NX;

    std::vector<double> y(dim, 0.0);  // Z(0) = 0 by construction
    std::copy(x0.begin(), x0.end(), y.begin());

    std::vector<double> xbuf(NX), dxbuf(NX);
    auto rhs = [&](double t, const std::vector<double>& yy, std::vector<double>& dyy) {
        std::copy_n(yy.begin(), NX, xbuf.begin());
        ode.rhs(t, std::span<const double>(xbuf), c, std::span<double>(dxbuf));
        std::copy_n(dxbuf.begin(), NX, dyy.begin());
        if (sens) {
            const Mat J = model_jacobian(ode, t, xbuf, c);
            const Mat fc = param_jacobian(ode, t, xbuf, c);
            Mat Z(NX, NP);
            std::copy_n(yy.begin() + NX, NX * NP, Z.a.begin());
            const Mat Zdot = sensitivity_rhs(J, fc, Z);
            std::copy_n(Zdot.a.begin(), NX * NP, dyy.begin() + NX);
        }
    };

    const long n_steps = std::lround(sc.duration / cfg.h);
    const std::size_t n_samples = static_cast<std::size_t>(n_steps / cfg.decimation) + 1;
    if (states_only) {
        *states_only = Mat(n_samples, n_out);
    } else {
        out.t.clear();
        out.t.reserve(n_samples);
        out.states = Mat(n_samples, n_out);
        out.inputs = Mat(n_samples, out.input_names.size());
        out.has_sensitivity = sens;
        if (sens) out.Z = Mat(n_samples, n_out * NP);
        if (out.model == "dt") out.wheel_lift.assign(n_samples, 0);
        if (cfg.include_pose && out.model == "dt") {
            out.has_pose = true;
            out.pose = Mat(n_samples, 3);
        }
    }

    std::vector<char> fault_logged(sc.faults.size(), 0);
    double pose[3] = {0.0, 0.0, 0.0};
    Rk4Workspace ws;
    std::size_t sample = 0;

    auto record = [&](long step, double t) {
        if (step % cfg.decimation != 0) return;
        if (states_only) {
            for (std::size_t i = 0; i < n_out; ++i) (*states_only)(sample, i) = y[i];
            ++sample;
            return;
        }
        out.t.push_back(t);
        for (std::size_t i = 0; i < n_out; ++i) out.states(sample, i) = y[i];
        if (sens)
            for (std::size_t i = 0; i < n_out; ++i)
                for (std::size_t k = 0; k < NP; ++k)
                    out.Z(sample, i * NP + k) = y[NX + i * NP + k];
        record_extras(ode, t, y, c, sample, out);
        if (out.has_pose)
            for (int i = 0; i < 3; ++i) out.pose(sample, i) = pose[i];
        ++sample;
    };

    record(0, 0.0);
    for (long step = 0; step < n_steps; ++step) {
        const double t = step * cfg.h;
        rk4_step(rhs, y, t, cfg.h, ws);
        const double t_new = (step + 1) * cfg.h;

        for (std::size_t fi = 0; fi < sc.faults.size(); ++fi) {
            const auto& f = sc.faults[fi];
            if (t_new < f.time) continue;
            if constexpr (NX >= kNumDtStates) {
                if (f.kind == FaultKind::locked_wheel) {
                    // State projection; the sensitivity rows follow.
                    y[kOmegaFL + f.wheel] = 0.0;
                    if (sens)
                        for (std::size_t k = 0; k < NP; ++k)
                            y[NX + (kOmegaFL + f.wheel) * NP + k] = 0.0;
                }
            }
            if (!fault_logged[fi] && !states_only) {
                fault_logged[fi] = 1;
                double info = 0.0;
                if (f.kind == FaultKind::locked_wheel)
                    info = implied_holding_torque(ode, t_new, y, c, f.wheel);
                out.fault_log.push_back({f.time, f.wheel, f.kind, info});
            }
        }

        if (!states_only && out.has_pose) {
            // Auxiliary pose kinematics outside the sensitivity state (Heun
            // on the already-advanced yaw rate).
            const double vx = y[kVx], vy = y[kVy], pd = y[kPsiDot];
            const double psi0 = pose[2];
            const double psi1 = psi0 + cfg.h * pd;
            pose[0] += 0.5 * cfg.h *
                       ((vx * std::cos(psi0) - vy * std::sin(psi0)) +
                        (vx * std::cos(psi1) - vy * std::sin(psi1)));
            pose[1] += 0.5 * cfg.h *
                       ((vx * std::sin(psi0) + vy * std::cos(psi0)) +
                        (vx * std::sin(psi1) + vy * std::cos(psi1)));
            pose[2] = psi1;
        }

        if (!all_finite(y)) {
            out.diverged = true;
            out.last_valid_time = t;
            return;
        }
        out.last_valid_time = t_new;
        record(step + 1, t_new);
    }

    if (!states_only && sc.kind == ScenarioKind::circle) {
        out.has_steady_state = true;
        out.steady_state.assign(y.begin(), y.begin() + n_out);
    }
}

std::vector<std::string> dt_input_names() {
    return {"delta_fl", "delta_fr", "delta_rl", "delta_rr",
            "M_fl",     "M_fr",     "M_rl",     "M_rr"};
}

}  // namespace

SimOutput run_scenario(ModelKind model, const Scenario& sc, const ParamSet& params,
                       const IntegratorConfig& cfg) {
    check_cfg(cfg);
    {
        const auto sv = validate_scenario(sc);
        if (!sv.empty()) throw std::invalid_argument("invalid scenario: " + sv.front());
        const auto pv = validate_params(params);
        if (!pv.empty()) throw std::invalid_argument("invalid params: " + describe(pv));
    }
    if (model == ModelKind::single_track)
        return run_st_scenario(
            sc, st_params_from_dt(params, std::max(mean_ref_speed(sc), kStVMin)), cfg);

    SimOutput out;
    out.model = "dt";
    out.state_names.assign(kDtStateNames.begin(), kDtStateNames.end());
    out.input_names = dt_input_names();
    out.param_names.assign(kDtParamNames.begin(), kDtParamNames.end());

    DtScenarioOde ode;
    ode.sc = &sc;
    ode.derived = CtrlDerived::from(params);
    const auto c = flatten(params);

    std::vector<double> x0(DtScenarioOde::kNX, 0.0);
    if (!sc.ref.empty()) {
        const double v0 = interp_ref(sc.ref, 0.0).v;
        x0[kVx] = v0;
        for (int i = 0; i < 4; ++i) x0[kOmegaFL + i] = v0 / params.r[i];
    }

    IntegratorConfig c2 = cfg;
    c2.sensitivity = cfg.sensitivity && sc.sensitivity;
    integrate_run(ode, std::span<const double>(c), x0, sc, c2, kNumDtStates, out, nullptr);
    return out;
}

SimOutput run_st_scenario(const Scenario& sc, const StParams& sp, const IntegratorConfig& cfg) {
    check_cfg(cfg);
    {
        const auto pv = validate_params(sp);
        if (!pv.empty()) throw std::invalid_argument("invalid params: " + describe(pv));
    }
    SimOutput out;
    out.model = "st";
    out.state_names.assign(kStStateNames.begin(), kStStateNames.end());
    out.input_names = {"delta_f", "delta_r"};
    out.param_names.assign(kStParamNames.begin(), kStParamNames.end());

    StScenarioOde ode;
    ode.sc = &sc;
    ode.ff_L = sp.l_f + sp.l_r;
    ode.ff_K = understeer_gradient(sp);

    const auto c = flatten(sp);
    std::vector<double> x0(StScenarioOde::kNX, 0.0);
    IntegratorConfig c2 = cfg;
    c2.sensitivity = cfg.sensitivity && sc.sensitivity;
    integrate_run(ode, std::span<const double>(c), x0, sc, c2, kNumStStates, out, nullptr);
    return out;
}

Mat simulate_dt_states(const Scenario& sc, const ParamSet& nominal, std::span<const double> c,
                       const IntegratorConfig& cfg) {
    check_cfg(cfg);
    DtScenarioOde ode;
    ode.sc = &sc;
    ode.derived = CtrlDerived::from(nominal);

    // Initial state from the nominal parameters: Z(0) = 0 means the initial
    // condition does not move with c.
    std::vector<double> x0(DtScenarioOde::kNX, 0.0);
    if (!sc.ref.empty()) {
        const double v0 = interp_ref(sc.ref, 0.0).v;
        x0[kVx] = v0;
        for (int i = 0; i < 4; ++i) x0[kOmegaFL + i] = v0 / nominal.r[i];
    }
    SimOutput dummy;
    dummy.model = "dt";
    Mat states;
    integrate_run(ode, c, x0, sc, cfg, kNumDtStates, dummy, &states);
    if (dummy.diverged) throw std::runtime_error("simulation diverged at perturbed parameters");
    return states;
}

Mat simulate_st_states(const Scenario& sc, const StParams& nominal, std::span<const double> c,
                       const IntegratorConfig& cfg) {
    check_cfg(cfg);
    StScenarioOde ode;
    ode.sc = &sc;
    ode.ff_L = nominal.l_f + nominal.l_r;
    ode.ff_K = understeer_gradient(nominal);
    std::vector<double> x0(StScenarioOde::kNX, 0.0);
    SimOutput dummy;
    dummy.model = "st";
    Mat states;
    integrate_run(ode, c, x0, sc, cfg, kNumStStates, dummy, &states);
    if (dummy.diverged) throw std::runtime_error("simulation diverged at perturbed parameters");
    return states;
}

}  // namespace vds
