#include "vds/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vds {

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile_sorted: empty input");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    const double w = pos - static_cast<double>(lo);
    return sorted[lo] + w * (sorted[hi] - sorted[lo]);
}

SummaryStats summarize(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("summarize: empty input");
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());

    SummaryStats out;
    out.n = s.size();
    out.q1 = quantile_sorted(s, 0.25);
    out.median = quantile_sorted(s, 0.5);
    out.q3 = quantile_sorted(s, 0.75);
    out.iqr = out.q3 - out.q1;

    const double fence_lo = out.q1 - 1.5 * out.iqr;
    const double fence_hi = out.q3 + 1.5 * out.iqr;
    out.whisker_low = std::max(s.front(), fence_lo);
    out.whisker_high = std::min(s.back(), fence_hi);

    double sum = 0.0;
    for (double v : s) {
        sum += v;
        if (v < fence_lo || v > fence_hi) out.outliers.push_back(v);
    }
    out.mean = sum / static_cast<double>(s.size());
    return out;
}

}  // namespace vds
