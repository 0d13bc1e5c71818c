#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vds {

// Boxplot statistics of one sample set. Quartiles use linear interpolation
// between closest ranks: quantile(p) interpolates the sorted samples at index
// p * (n - 1). Whiskers extend 1.5 * IQR beyond the quartiles, clamped to the
// data range; outliers are exactly the samples beyond the unclamped fences.
struct SummaryStats {
    double median = 0.0;
    double q1 = 0.0, q3 = 0.0;
    double iqr = 0.0;
    double whisker_low = 0.0, whisker_high = 0.0;
    double mean = 0.0;
    std::vector<double> outliers;
    std::size_t n = 0;
};

// Throws std::invalid_argument on empty input.
SummaryStats summarize(std::span<const double> samples);

// p-quantile of a sorted sample set by the closest-ranks interpolation above.
double quantile_sorted(std::span<const double> sorted, double p);

}  // namespace vds
