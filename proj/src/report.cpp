#include "vds/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vds {

int oom_bucket(double x) {
    const double m = std::max(std::abs(x), 1e-300);
    return static_cast<int>(std::floor(std::log10(m)));
}

namespace {

std::vector<RankingEntry> rank(std::vector<RankingEntry> entries) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const RankingEntry& a, const RankingEntry& b) {
                         return a.median_abs_z > b.median_abs_z;
                     });
    return entries;
}

}  // namespace

std::vector<RankingEntry> dominance_ranking(const SimOutput& out, const std::string& state) {
    if (!out.has_sensitivity)
        throw std::invalid_argument("dominance_ranking: run has no sensitivity data");
    const std::size_t si = out.state_index(state);
    const std::size_t n = out.t.size();

    std::vector<RankingEntry> entries;
    entries.reserve(out.n_params());
    std::vector<double> col(n);
    for (std::size_t k = 0; k < out.n_params(); ++k) {
        for (std::size_t i = 0; i < n; ++i) col[i] = std::abs(out.z_at(i, si, k));
        const double med = summarize(col).median;
        entries.push_back({out.param_names[k], med, oom_bucket(med)});
    }
    return rank(std::move(entries));
}

std::vector<RankingEntry> dominance_ranking(const std::vector<std::string>& params,
                                            const std::vector<std::vector<double>>& abs_z) {
    if (params.size() != abs_z.size())
        throw std::invalid_argument("dominance_ranking: params/samples size mismatch");
    std::vector<RankingEntry> entries;
    entries.reserve(params.size());
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double med = summarize(abs_z[k]).median;
        entries.push_back({params[k], med, oom_bucket(med)});
    }
    return rank(std::move(entries));
}

FaultShift fault_shift_report(const SimOutput& nominal, const SimOutput& faulted,
                              const std::string& state, const std::string& param,
                              double fault_time) {
    if (!nominal.has_sensitivity || !faulted.has_sensitivity)
        throw std::invalid_argument("fault_shift_report: sensitivity data required");
    if (nominal.t.size() != faulted.t.size() || nominal.t != faulted.t)
        throw std::invalid_argument("fault_shift_report: runs are on different time grids");

    const std::size_t si = nominal.state_index(state);
    const std::size_t pi = nominal.param_index(param);

    auto stats = [&](const SimOutput& run, double t_from, double& mean, double& mx) {
        double sum = 0.0;
        std::size_t cnt = 0;
        mx = 0.0;
        for (std::size_t i = 0; i < run.t.size(); ++i) {
            if (run.t[i] < t_from) continue;
            const double z = std::abs(run.z_at(i, si, pi));
            sum += z;
            mx = std::max(mx, z);
            ++cnt;
        }
        if (cnt == 0) throw std::invalid_argument("fault_shift_report: empty window");
        mean = sum / static_cast<double>(cnt);
    };

    FaultShift fs;
    fs.fault_time = fault_time;
    stats(nominal, fault_time, fs.nominal_mean, fs.nominal_max);
    stats(faulted, fault_time, fs.faulted_mean, fs.faulted_max);
    stats(nominal, 0.0, fs.nominal_full_mean, fs.nominal_full_max);
    stats(faulted, 0.0, fs.faulted_full_mean, fs.faulted_full_max);
    auto ratio = [](double num, double den) { return num == den ? 1.0 : num / den; };
    fs.mean_ratio = ratio(fs.faulted_mean, fs.nominal_mean);
    fs.max_ratio = ratio(fs.faulted_max, fs.nominal_max);
    fs.nominal_bucket = oom_bucket(fs.nominal_mean);
    fs.faulted_bucket = oom_bucket(fs.faulted_mean);
    return fs;
}

}  // namespace vds
