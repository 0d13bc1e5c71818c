// vdsim: scenario runner and reporting CLI for the sensitivity toolkit.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vds/config.hpp"
#include "vds/csv.hpp"
#include "vds/report.hpp"
#include "vds/sensitivity.hpp"
#include "vds/sim.hpp"
#include "vds/stats.hpp"
#include "vds/svg.hpp"

namespace fs = std::filesystem;
using namespace vds;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitDivergence = 2;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Config load_and_validate(const std::string& path) {
    Config cfg;
    try {
        cfg = load_config(path);
    } catch (const std::exception& e) {
        throw ValidationError(e.what());
    }
    const auto pv = validate_params(cfg.params);
    if (!pv.empty()) throw ValidationError("invalid params: " + describe(pv));
    const auto sv = validate_scenario(cfg.scenario);
    if (!sv.empty()) throw ValidationError("invalid scenario: " + sv.front());
    return cfg;
}

fs::path ensure_out(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

SimOutput run_or_throw(const Config& cfg, const Scenario& sc) {
    SimOutput out = run_scenario(cfg.model, sc, cfg.params, cfg.integrator);
    if (out.diverged)
        throw DivergenceError("simulation diverged; last valid time " +
                              std::to_string(out.last_valid_time) + " s");
    return out;
}

Series state_series(const SimOutput& out, const std::string& state, const std::string& label) {
    const std::size_t si = out.state_index(state);
    Series s{label, out.t, {}};
    s.y.resize(out.t.size());
    for (std::size_t i = 0; i < out.t.size(); ++i) s.y[i] = out.states(i, si);
    return s;
}

Series z_series(const SimOutput& out, const std::string& state, const std::string& param,
                const std::string& label) {
    const std::size_t si = out.state_index(state);
    const std::size_t pi = out.param_index(param);
    Series s{label, out.t, {}};
    s.y.resize(out.t.size());
    for (std::size_t i = 0; i < out.t.size(); ++i) s.y[i] = out.z_at(i, si, pi);
    return s;
}

int cmd_validate(const std::string& config_path) {
    const Config cfg = load_and_validate(config_path);
    std::cout << "OK: model=" << (cfg.model == ModelKind::single_track ? "single_track"
                                                                       : "double_track")
              << " scenario=" << to_string(cfg.scenario.kind)
              << " duration=" << cfg.scenario.duration << " s"
              << " faults=" << cfg.scenario.faults.size() << "\n";
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, std::string out_dir) {
    const Config cfg = load_and_validate(config_path);
    if (out_dir.empty()) out_dir = cfg.output_dir;
    const fs::path out = ensure_out(out_dir);

    const SimOutput r = run_or_throw(cfg, cfg.scenario);
    write_csv(r, out / "simulate.csv");
    write_timeseries_svg(out / "simulate_psi_dot.svg", {state_series(r, "psi_dot", "psi_dot")},
                         "Yaw rate", "t [s]", "psi_dot [rad/s]");
    std::cout << "wrote " << (out / "simulate.csv").string() << " ("
              << r.t.size() << " samples)\n";
    return kExitOk;
}

// Steady-state Table-I style sweep on the single-track model: circles of
// fixed radius, speed set from the requested lateral acceleration.
int cmd_circle_sweep(const std::string& config_path, const std::vector<double>& ay_list,
                     std::string out_dir) {
    const Config cfg = load_and_validate(config_path);
    if (out_dir.empty()) out_dir = cfg.output_dir;
    const fs::path out = ensure_out(out_dir);

    constexpr double kRadius = 100.0;
    std::ofstream f(out / "circle_sweep.csv");
    if (!f) throw std::runtime_error("cannot open circle_sweep.csv");
    f << "ay,v";
    for (const char* p : kStParamNames) f << ",Z_beta_" << p;
    for (const char* p : kStParamNames) f << ",Z_psi_dot_" << p;
    f << "\n";

    Series s_beta{"|Z_beta_c_alpha_f|", {}, {}}, s_psi{"|Z_psi_dot_c_alpha_f|", {}, {}};
    for (double ay : ay_list) {
        if (!(ay > 0.0)) throw ValidationError("--ay values must be > 0");
        const double v = std::sqrt(ay * kRadius);
        const StParams sp = st_params_from_dt(cfg.params, v);
        const double K = understeer_gradient(sp);
        const StInput u{(sp.l_f + sp.l_r + K * v * v) / kRadius, 0.0};
        const StSteadyState ss = steady_state_sensitivity_st(sp, u);

        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g", ay, v);
        f << buf;
        for (int row = 0; row < 2; ++row)
            for (std::size_t k = 0; k < kNumStParams; ++k) {
                std::snprintf(buf, sizeof(buf), ",%.17g", ss.Z_ss(row, k));
                f << buf;
            }
        f << "\n";
        s_beta.x.push_back(ay);
        s_beta.y.push_back(std::abs(ss.Z_ss(0, 0)));
        s_psi.x.push_back(ay);
        s_psi.y.push_back(std::abs(ss.Z_ss(1, 0)));
    }
    write_timeseries_svg(out / "circle_sweep.svg", {s_beta, s_psi},
                         "Steady-state sensitivity vs lateral acceleration", "a_y [m/s^2]",
                         "|Z|");
    std::cout << "wrote " << (out / "circle_sweep.csv").string() << "\n";
    return kExitOk;
}

int cmd_fault_sweep(const std::string& config_path, std::string out_dir) {
    Config cfg = load_and_validate(config_path);
    if (out_dir.empty()) out_dir = cfg.output_dir;
    const fs::path out = ensure_out(out_dir);
    if (cfg.model != ModelKind::double_track)
        throw ValidationError("fault-sweep requires the double-track model");

    std::vector<FaultEvent> faults = cfg.scenario.faults;
    if (faults.empty())
        faults.push_back({1.0, kFL, FaultKind::locked_steering, 30.0 * M_PI / 180.0});

    Scenario nominal_sc = cfg.scenario;
    nominal_sc.faults.clear();
    nominal_sc.sensitivity = true;
    cfg.integrator.sensitivity = true;
    const SimOutput nominal = run_or_throw(cfg, nominal_sc);
    write_csv(nominal, out / "nominal.csv");

    std::ofstream f(out / "fault_shift.csv");
    if (!f) throw std::runtime_error("cannot open fault_shift.csv");
    f << "fault,kind,wheel,time,param,nominal_mean,faulted_mean,mean_ratio,max_ratio,"
         "nominal_bucket,faulted_bucket\n";

    for (std::size_t i = 0; i < faults.size(); ++i) {
        Scenario sc = nominal_sc;
        sc.faults = {faults[i]};
        const SimOutput faulted = run_or_throw(cfg, sc);
        const std::string tag = "fault_" + std::to_string(i) + "_" + to_string(faults[i].kind);
        write_csv(faulted, out / (tag + ".csv"));

        for (const std::string param : {"mu", "l_f"}) {
            const FaultShift fsr =
                fault_shift_report(nominal, faulted, "psi_dot", param, faults[i].time);
            char buf[256];
            std::snprintf(buf, sizeof(buf), "%zu,%s,%d,%.17g,%s,%.17g,%.17g,%.17g,%.17g,%d,%d\n",
                          i, to_string(faults[i].kind), faults[i].wheel, faults[i].time,
                          param.c_str(), fsr.nominal_mean, fsr.faulted_mean, fsr.mean_ratio,
                          fsr.max_ratio, fsr.nominal_bucket, fsr.faulted_bucket);
            f << buf;
        }
        write_two_panel_svg(out / (tag + ".svg"),
                            {state_series(nominal, "psi_dot", "nominal"),
                             state_series(faulted, "psi_dot", "fault")},
                            "psi_dot [rad/s]",
                            {z_series(nominal, "psi_dot", "mu", "nominal"),
                             z_series(faulted, "psi_dot", "mu", "fault")},
                            "Z_psi_dot_mu", "Yaw rate and sensitivity, nominal vs fault",
                            "t [s]");
    }
    std::cout << "wrote " << (out / "fault_shift.csv").string() << "\n";
    return kExitOk;
}

int cmd_odd_batch(const std::string& config_path, int n, std::uint64_t seed,
                  std::string out_dir) {
    Config cfg = load_and_validate(config_path);
    if (out_dir.empty()) out_dir = cfg.output_dir;
    const fs::path out = ensure_out(out_dir);
    if (n < 1) throw ValidationError("--n must be >= 1");

    cfg.integrator.sensitivity = true;
    const std::vector<std::string> params =
        cfg.model == ModelKind::single_track
            ? std::vector<std::string>(kStParamNames.begin(), kStParamNames.end())
            : std::vector<std::string>(kDtParamNames.begin(), kDtParamNames.end());

    // One scenario per execution context; merge is by run index.
    auto one_run = [&](std::uint64_t s) {
        Scenario sc = make_odd(s, cfg.scenario.duration, cfg.scenario.a_limit,
                               cfg.scenario.step);
        const SimOutput r = run_scenario(cfg.model, sc, cfg.params, cfg.integrator);
        if (r.diverged) throw DivergenceError("run diverged (seed " + std::to_string(s) + ")");
        const std::size_t si = r.state_index("psi_dot");
        std::vector<double> med(params.size());
        std::vector<double> col(r.t.size());
        for (std::size_t k = 0; k < params.size(); ++k) {
            for (std::size_t i = 0; i < r.t.size(); ++i) col[i] = std::abs(r.z_at(i, si, k));
            med[k] = summarize(col).median;
        }
        return med;
    };

    std::vector<std::future<std::vector<double>>> futs;
    futs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        futs.push_back(std::async(std::launch::async, one_run, seed + static_cast<unsigned>(i)));

    std::vector<std::vector<double>> per_param(params.size());
    std::ofstream f(out / "odd_batch.csv");
    if (!f) throw std::runtime_error("cannot open odd_batch.csv");
    f << "seed";
    for (const auto& p : params) f << ",median_abs_Z_psi_dot_" << p;
    f << "\n";
    for (int i = 0; i < n; ++i) {
        const auto med = futs[static_cast<std::size_t>(i)].get();
        f << (seed + static_cast<unsigned>(i));
        for (std::size_t k = 0; k < med.size(); ++k) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), ",%.17g", med[k]);
            f << buf;
            per_param[k].push_back(med[k]);
        }
        f << "\n";
    }

    const auto ranking = dominance_ranking(params, per_param);
    std::ofstream rf(out / "ranking.csv");
    rf << "rank,param,median_abs_z,bucket\n";
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%zu,%s,%.17g,%d\n", i + 1, ranking[i].param.c_str(),
                      ranking[i].median_abs_z, ranking[i].bucket);
        rf << buf;
        std::cout << (i + 1) << ". " << ranking[i].param << "  median |Z| = "
                  << ranking[i].median_abs_z << "  (1e" << ranking[i].bucket << ")\n";
    }

    std::vector<NamedStats> boxes;
    for (std::size_t k = 0; k < params.size(); ++k)
        boxes.push_back({params[k], summarize(per_param[k])});
    write_boxplot_svg(out / "odd_batch_boxplot.svg", boxes,
                      "Median |Z_psi_dot| per parameter over the batch", "|Z|");
    std::cout << "wrote " << (out / "odd_batch.csv").string() << "\n";
    return kExitOk;
}

int cmd_report(const std::vector<std::string>& csvs, const std::string& state,
               const std::vector<std::string>& params, std::string out_dir) {
    if (out_dir.empty()) out_dir = "out";
    const fs::path out = ensure_out(out_dir);

    std::vector<std::vector<double>> samples(params.size());
    for (const auto& path : csvs) {
        CsvTable t;
        try {
            t = read_csv(path);
        } catch (const std::exception& e) {
            throw ValidationError(e.what());
        }
        for (std::size_t k = 0; k < params.size(); ++k) {
            const std::string col_name = "Z_" + state + "_" + params[k];
            if (!t.has_col(col_name))
                throw ValidationError("column " + col_name + " missing in " + path);
            const std::size_t c = t.col(col_name);
            for (std::size_t i = 0; i < t.data.rows; ++i)
                samples[k].push_back(std::abs(t.data(i, c)));
        }
    }
    for (std::size_t k = 0; k < params.size(); ++k)
        if (samples[k].empty()) throw ValidationError("no data rows in the given CSV files");

    std::vector<NamedStats> boxes;
    std::ofstream f(out / "report_summary.csv");
    f << "param,n,median,q1,q3,iqr,whisker_low,whisker_high,mean,outliers\n";
    for (std::size_t k = 0; k < params.size(); ++k) {
        const SummaryStats st = summarize(samples[k]);
        boxes.push_back({params[k], st});
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%zu\n",
                      params[k].c_str(), st.n, st.median, st.q1, st.q3, st.iqr, st.whisker_low,
                      st.whisker_high, st.mean, st.outliers.size());
        f << buf;
    }
    const auto ranking = dominance_ranking(params, samples);
    for (std::size_t i = 0; i < ranking.size(); ++i)
        std::cout << (i + 1) << ". " << ranking[i].param << "  median |Z| = "
                  << ranking[i].median_abs_z << "  (1e" << ranking[i].bucket << ")\n";
    write_boxplot_svg(out / "report_boxplot.svg", boxes, "|Z_" + state + "_*| distribution",
                      "|Z|");
    std::cout << "wrote " << (out / "report_summary.csv").string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vehicle-dynamics parameter-sensitivity toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir, state = "psi_dot";
    std::vector<double> ay_list = {3.0, 4.0, 4.9, 6.0};
    std::vector<std::string> csvs, params;
    int n = 20;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("config", config_path, "JSON configuration file")
                ->required()
                ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (default: config output_dir)");
    };

    auto* sub_validate = app.add_subcommand("validate", "check a configuration file");
    sub_validate->add_option("config", config_path, "JSON configuration file")->required();

    add_common(app.add_subcommand("simulate", "run one scenario, write CSV"), true);
    auto* sub_circle =
        app.add_subcommand("circle-sweep", "steady-state sensitivity vs lateral acceleration");
    add_common(sub_circle, true);
    sub_circle->add_option("--ay", ay_list, "lateral accelerations [m/s^2]")->delimiter(',');
    add_common(app.add_subcommand("fault-sweep", "nominal vs faulted runs and shift report"),
               true);
    auto* sub_odd = app.add_subcommand("odd-batch", "batch of synthetic ODD runs");
    add_common(sub_odd, true);
    sub_odd->add_option("--n", n, "number of runs");
    sub_odd->add_option("--seed", seed, "base seed");
    auto* sub_report = app.add_subcommand("report", "statistics over existing run CSVs");
    sub_report->add_option("csv", csvs, "input CSV files")->required();
    sub_report->add_option("--state", state, "state name (default psi_dot)");
    sub_report->add_option("--params", params, "parameter names")->delimiter(',')->required();
    sub_report->add_option("--out", out_dir, "output directory (default: out)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help/error text
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (sub_validate->parsed()) return cmd_validate(config_path);
        if (app.got_subcommand("simulate")) return cmd_simulate(config_path, out_dir);
        if (app.got_subcommand("circle-sweep"))
            return cmd_circle_sweep(config_path, ay_list, out_dir);
        if (app.got_subcommand("fault-sweep")) return cmd_fault_sweep(config_path, out_dir);
        if (app.got_subcommand("odd-batch")) return cmd_odd_batch(config_path, n, seed, out_dir);
        if (app.got_subcommand("report")) return cmd_report(csvs, state, params, out_dir);
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
