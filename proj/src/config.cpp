#include "vds/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <string>

#include <json.hpp>

namespace vds {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("config: " + msg); }

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(where + " must be an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items())
        if (!ok.count(key)) fail("unknown key '" + key + "' in " + where);
}

double get_num(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) fail(std::string(key) + " must be a number");
    return obj[key].get<double>();
}

void get_arr4(const json& obj, const char* key, std::array<double, 4>& out) {
    if (!obj.contains(key)) return;
    const auto& a = obj[key];
    if (!a.is_array() || a.size() != 4)
        fail(std::string(key) + " must be an array of 4 numbers (fl, fr, rl, rr)");
    for (int i = 0; i < 4; ++i) {
        if (!a[i].is_number()) fail(std::string(key) + " must contain numbers only");
        out[i] = a[i].get<double>();
    }
}

MagicFormulaCoeffs parse_mf(const json& obj, const char* key, MagicFormulaCoeffs fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& t = obj[key];
    check_keys(t, key, {"B", "C", "D", "E"});
    return {get_num(t, "B", fallback.B), get_num(t, "C", fallback.C),
            get_num(t, "D", fallback.D), get_num(t, "E", fallback.E)};
}

ParamSet parse_params(const json& j) {
    ParamSet p = reference_params();
    check_keys(j, "params",
               {"m", "g", "h", "l_f", "l_r", "s_f", "s_r", "J_x", "J_y", "J_z", "J_w", "r",
                "k_f", "k_r", "d_f", "d_r", "mu", "tire_lat", "tire_lon", "S_off"});
    p.m = get_num(j, "m", p.m);
    p.g = get_num(j, "g", p.g);
    p.h = get_num(j, "h", p.h);
    p.l_f = get_num(j, "l_f", p.l_f);
    p.l_r = get_num(j, "l_r", p.l_r);
    p.s_f = get_num(j, "s_f", p.s_f);
    p.s_r = get_num(j, "s_r", p.s_r);
    p.J_x = get_num(j, "J_x", p.J_x);
    p.J_y = get_num(j, "J_y", p.J_y);
    p.J_z = get_num(j, "J_z", p.J_z);
    get_arr4(j, "J_w", p.J_w);
    get_arr4(j, "r", p.r);
    p.k_f = get_num(j, "k_f", p.k_f);
    p.k_r = get_num(j, "k_r", p.k_r);
    p.d_f = get_num(j, "d_f", p.d_f);
    p.d_r = get_num(j, "d_r", p.d_r);
    p.mu = get_num(j, "mu", p.mu);
    p.tire_lat = parse_mf(j, "tire_lat", p.tire_lat);
    p.tire_lon = parse_mf(j, "tire_lon", p.tire_lon);
    get_arr4(j, "S_off", p.S_off);
    return p;
}

FaultKind parse_fault_kind(const std::string& s) {
    if (s == "locked_steering") return FaultKind::locked_steering;
    if (s == "free_running_wheel") return FaultKind::free_running_wheel;
    if (s == "locked_wheel") return FaultKind::locked_wheel;
    fail("unknown fault kind '" + s + "'");
}

ScenarioKind parse_scenario_kind(const std::string& s) {
    if (s == "circle") return ScenarioKind::circle;
    if (s == "steering_step") return ScenarioKind::steering_step;
    if (s == "trajectory_replay") return ScenarioKind::trajectory_replay;
    if (s == "odd_synthetic") return ScenarioKind::odd_synthetic;
    fail("unknown scenario kind '" + s + "'");
}

Scenario parse_scenario(const json& j) {
    Scenario s;
    check_keys(j, "scenario",
               {"kind", "duration", "step", "sensitivity", "ref", "inputs", "faults",
                "step_time", "delta_f_before", "delta_f_after", "seed", "a_limit"});
    if (!j.contains("kind") || !j["kind"].is_string()) fail("scenario.kind is required");
    s.kind = parse_scenario_kind(j["kind"].get<std::string>());
    s.duration = get_num(j, "duration", s.duration);
    s.step = get_num(j, "step", s.step);
    if (j.contains("sensitivity")) {
        if (!j["sensitivity"].is_boolean()) fail("scenario.sensitivity must be a boolean");
        s.sensitivity = j["sensitivity"].get<bool>();
    }
    if (j.contains("ref")) {
        if (!j["ref"].is_array()) fail("scenario.ref must be an array");
        for (const auto& r : j["ref"]) {
            check_keys(r, "scenario.ref[]", {"t", "v", "kappa"});
            s.ref.push_back({get_num(r, "t", 0.0), get_num(r, "v", 0.0),
                             get_num(r, "kappa", 0.0)});
        }
    }
    if (j.contains("inputs")) {
        if (!j["inputs"].is_array()) fail("scenario.inputs must be an array");
        for (const auto& r : j["inputs"]) {
            check_keys(r, "scenario.inputs[]",
                       {"t", "delta", "torque", "delta_f", "delta_r"});
            InputSample in;
            in.t = get_num(r, "t", 0.0);
            get_arr4(r, "delta", in.delta);
            get_arr4(r, "torque", in.torque);
            in.delta_f = get_num(r, "delta_f", 0.0);
            in.delta_r = get_num(r, "delta_r", 0.0);
            s.inputs.push_back(in);
        }
    }
    if (j.contains("faults")) {
        if (!j["faults"].is_array()) fail("scenario.faults must be an array");
        for (const auto& r : j["faults"]) {
            check_keys(r, "scenario.faults[]", {"time", "wheel", "kind", "angle"});
            FaultEvent f;
            f.time = get_num(r, "time", 0.0);
            if (r.contains("wheel")) {
                if (!r["wheel"].is_number_integer()) fail("fault wheel must be an integer 0..3");
                f.wheel = r["wheel"].get<int>();
            }
            if (!r.contains("kind") || !r["kind"].is_string()) fail("fault kind is required");
            f.kind = parse_fault_kind(r["kind"].get<std::string>());
            f.angle = get_num(r, "angle", 0.0);
            s.faults.push_back(f);
        }
    }
    s.step_time = get_num(j, "step_time", s.step_time);
    s.delta_f_before = get_num(j, "delta_f_before", s.delta_f_before);
    s.delta_f_after = get_num(j, "delta_f_after", s.delta_f_after);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) fail("scenario.seed must be a non-negative integer");
        s.seed = j["seed"].get<std::uint64_t>();
    }
    s.a_limit = get_num(j, "a_limit", s.a_limit);

    if (s.kind == ScenarioKind::odd_synthetic && s.ref.empty())
        s.ref = synth_odd_trajectory(s.seed, s.duration, s.a_limit);
    return s;
}

IntegratorConfig parse_integrator(const json& j) {
    IntegratorConfig c;
    check_keys(j, "integrator", {"h", "decimation", "sensitivity", "include_pose"});
    c.h = get_num(j, "h", c.h);
    if (j.contains("decimation")) {
        if (!j["decimation"].is_number_integer()) fail("integrator.decimation must be an integer");
        c.decimation = j["decimation"].get<int>();
    }
    if (j.contains("sensitivity")) {
        if (!j["sensitivity"].is_boolean()) fail("integrator.sensitivity must be a boolean");
        c.sensitivity = j["sensitivity"].get<bool>();
    }
    if (j.contains("include_pose")) {
        if (!j["include_pose"].is_boolean()) fail("integrator.include_pose must be a boolean");
        c.include_pose = j["include_pose"].get<bool>();
    }
    return c;
}

}  // namespace

Config load_config(const std::filesystem::path& file) {
    std::ifstream f(file);
    if (!f) fail("cannot open " + file.string());
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error& e) {
        fail(std::string("JSON syntax error: ") + e.what());
    }

    Config cfg;
    check_keys(j, "config", {"model", "params", "scenario", "integrator", "output_dir"});
    if (j.contains("model")) {
        if (!j["model"].is_string()) fail("model must be a string");
        const std::string m = j["model"].get<std::string>();
        if (m == "single_track")
            cfg.model = ModelKind::single_track;
        else if (m == "double_track")
            cfg.model = ModelKind::double_track;
        else
            fail("model must be 'single_track' or 'double_track'");
    }
    if (j.contains("params")) cfg.params = parse_params(j["params"]);
    if (!j.contains("scenario")) fail("scenario is required");
    cfg.scenario = parse_scenario(j["scenario"]);
    if (j.contains("integrator")) cfg.integrator = parse_integrator(j["integrator"]);
    cfg.integrator.sensitivity = cfg.integrator.sensitivity || cfg.scenario.sensitivity;
    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string()) fail("output_dir must be a string");
        cfg.output_dir = j["output_dir"].get<std::string>();
    }
    return cfg;
}

}  // namespace vds
