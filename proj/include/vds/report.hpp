#pragma once

#include <string>
#include <vector>

#include "vds/sim.hpp"
#include "vds/stats.hpp"

namespace vds {

// Order-of-magnitude bucket: floor(log10 |x|), guarded at 1e-300 so zero maps
// to a finite sentinel bucket rather than -inf.
int oom_bucket(double x);

struct RankingEntry {
    std::string param;
    double median_abs_z = 0.0;
    int bucket = 0;
};

// Parameters ranked by median |Z| of the selected state over all samples of
// one run, descending; ties keep the parameter-vector order. Throws
// std::invalid_argument when the run carries no sensitivity data.
std::vector<RankingEntry> dominance_ranking(const SimOutput& out, const std::string& state);

// Same ranking over externally aggregated per-parameter samples (e.g. pooled
// batch medians); sample order within a parameter does not matter.
std::vector<RankingEntry> dominance_ranking(const std::vector<std::string>& params,
                                            const std::vector<std::vector<double>>& abs_z);

// Pre/post-fault comparison of |Z| for one (state, param) pair. Both runs are
// evaluated over the same post-fault window [t_fault, end] so identical runs
// give ratios of exactly 1; full-run statistics are reported alongside.
struct FaultShift {
    double fault_time = 0.0;
    double nominal_mean = 0.0, nominal_max = 0.0;  // post-fault window
    double faulted_mean = 0.0, faulted_max = 0.0;
    double nominal_full_mean = 0.0, nominal_full_max = 0.0;
    double faulted_full_mean = 0.0, faulted_full_max = 0.0;
    double mean_ratio = 0.0, max_ratio = 0.0;
    int nominal_bucket = 0, faulted_bucket = 0;  // of the window means
};

// Throws std::invalid_argument when the two runs are not on the same time
// grid or lack sensitivity data.
FaultShift fault_shift_report(const SimOutput& nominal, const SimOutput& faulted,
                              const std::string& state, const std::string& param,
                              double fault_time);

}  // namespace vds
