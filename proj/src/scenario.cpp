#include "vds/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace vds {

const char* to_string(FaultKind k) {
    switch (k) {
        case FaultKind::locked_steering: return "locked_steering";
        case FaultKind::free_running_wheel: return "free_running_wheel";
        case FaultKind::locked_wheel: return "locked_wheel";
    }
    return "?";
}

const char* to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::circle: return "circle";
        case ScenarioKind::steering_step: return "steering_step";
        case ScenarioKind::trajectory_replay: return "trajectory_replay";
        case ScenarioKind::odd_synthetic: return "odd_synthetic";
    }
    return "?";
}

RefPoint interp_ref(const std::vector<RefSample>& ref, double t) {
    if (ref.empty()) throw std::invalid_argument("interp_ref: empty reference");
    if (ref.size() == 1 || t <= ref.front().t) return {ref.front().v, ref.front().kappa, 0.0};
    if (t >= ref.back().t) return {ref.back().v, ref.back().kappa, 0.0};
    auto it = std::upper_bound(ref.begin(), ref.end(), t,
                               [](double x, const RefSample& s) { return x < s.t; });
    const RefSample& b = *it;
    const RefSample& a = *(it - 1);
    const double w = (t - a.t) / (b.t - a.t);
    const double slope = (b.v - a.v) / (b.t - a.t);
    return {a.v + w * (b.v - a.v), a.kappa + w * (b.kappa - a.kappa), slope};
}

namespace {

// Platform-independent uniform double in [lo, hi) from the raw engine.
double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = std::ldexp(static_cast<double>(rng() >> 11), -53);
    return lo + u * (hi - lo);
}

}  // namespace

std::vector<RefSample> synth_odd_trajectory(std::uint64_t seed, double duration,
                                            double a_limit) {
    if (!(duration > 0.0)) throw std::invalid_argument("synth_odd_trajectory: duration must be > 0");
    if (!(a_limit > 0.0)) throw std::invalid_argument("synth_odd_trajectory: a_limit must be > 0");

    std::mt19937_64 rng(seed);
    constexpr int kModes = 4;
    const double v0 = uniform(rng, 10.0, 13.0);

    // Speed: v(t) = v0 + sum A_i sin(w_i t + phi_i), amplitudes scaled so the
    // implied a_x = sum A_i w_i cos(.) stays within 0.6 * a_limit.
    std::array<double, kModes> Av, wv, pv;
    double ax_bound = 0.0;
    for (int i = 0; i < kModes; ++i) {
        Av[i] = uniform(rng, 0.2, 1.0);
        wv[i] = uniform(rng, 0.3, 1.5);
        pv[i] = uniform(rng, 0.0, 6.283185307179586);
        ax_bound += Av[i] * wv[i];
    }
    const double sv = 0.6 * a_limit / ax_bound;
    for (double& a : Av) a *= sv;

    // Lateral acceleration: a_y(t) = sum B_j sin(.), bounded by 0.7 * a_limit;
    // the curvature reference is kappa = a_y / v^2.
    std::array<double, kModes> Ba, wa, pa;
    double ay_bound = 0.0;
    for (int i = 0; i < kModes; ++i) {
        Ba[i] = uniform(rng, 0.2, 1.0);
        wa[i] = uniform(rng, 0.2, 1.2);
        pa[i] = uniform(rng, 0.0, 6.283185307179586);
        ay_bound += Ba[i];
    }
    const double sa = 0.7 * a_limit / ay_bound;
    for (double& b : Ba) b *= sa;

    const double dt = 0.02;
    const int n = static_cast<int>(std::ceil(duration / dt)) + 1;
    std::vector<RefSample> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double t = std::min(k * dt, duration);
        double v = v0, ay = 0.0;
        for (int i = 0; i < kModes; ++i) {
            v += Av[i] * std::sin(wv[i] * t + pv[i]);
            ay += Ba[i] * std::sin(wa[i] * t + pa[i]);
        }
        out.push_back({t, v, ay / (v * v)});
    }
    return out;
}

Scenario make_circle(double radius, double speed, double duration, double step) {
    Scenario s;
    s.kind = ScenarioKind::circle;
    s.duration = duration;
    s.step = step;
    s.ref = {{0.0, speed, 1.0 / radius}, {duration, speed, 1.0 / radius}};
    return s;
}

Scenario make_steering_step(double speed, double delta_before, double delta_after,
                            double step_time, double duration, double step) {
    Scenario s;
    s.kind = ScenarioKind::steering_step;
    s.duration = duration;
    s.step = step;
    s.step_time = step_time;
    s.delta_f_before = delta_before;
    s.delta_f_after = delta_after;
    s.ref = {{0.0, speed, 0.0}, {duration, speed, 0.0}};
    return s;
}

Scenario make_odd(std::uint64_t seed, double duration, double a_limit, double step) {
    Scenario s;
    s.kind = ScenarioKind::odd_synthetic;
    s.duration = duration;
    s.step = step;
    s.seed = seed;
    s.a_limit = a_limit;
    s.ref = synth_odd_trajectory(seed, duration, a_limit);
    return s;
}

std::vector<std::string> validate_scenario(const Scenario& s, const ActuatorLimits& lim) {
    std::vector<std::string> out;
    if (!(s.duration > 0.0)) out.push_back("duration must be > 0");
    if (!(s.step > 0.0 && s.step <= 0.01)) out.push_back("step out of (0, 0.01]");
    for (std::size_t i = 1; i < s.ref.size(); ++i)
        if (!(s.ref[i].t > s.ref[i - 1].t)) {
            out.push_back("reference sample times must be strictly increasing");
            break;
        }
    for (std::size_t i = 1; i < s.inputs.size(); ++i)
        if (!(s.inputs[i].t > s.inputs[i - 1].t)) {
            out.push_back("input sample times must be strictly increasing");
            break;
        }
    for (const auto& f : s.faults) {
        if (f.time < 0.0 || f.time > s.duration)
            out.push_back("fault time outside [0, duration]");
        if (f.wheel < 0 || f.wheel > 3) out.push_back("fault wheel index out of range");
        if (f.kind == FaultKind::locked_steering && std::abs(f.angle) > lim.delta_max)
            out.push_back("locked-steering angle outside actuator range");
    }
    return out;
}

}  // namespace vds
