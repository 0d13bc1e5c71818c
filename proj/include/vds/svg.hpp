#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vds/stats.hpp"

namespace vds {

struct Series {
    std::string label;
    std::vector<double> x, y;
};

struct NamedStats {
    std::string label;
    SummaryStats stats;
};

// Self-contained deterministic SVG emitters: identical inputs give identical
// bytes. Boxplots draw median line, IQR box, 1.5*IQR whiskers, mean cross and
// outlier dots from SummaryStats; the value axis switches to log10 when the
// plotted positive magnitudes span at least 3 decades.
void write_boxplot_svg(const std::filesystem::path& file, const std::vector<NamedStats>& boxes,
                       const std::string& title, const std::string& y_label);

void write_timeseries_svg(const std::filesystem::path& file, const std::vector<Series>& series,
                          const std::string& title, const std::string& x_label,
                          const std::string& y_label);

// Two stacked panels on a shared x axis (state on top, sensitivity below).
void write_two_panel_svg(const std::filesystem::path& file,
                         const std::vector<Series>& top, const std::string& top_label,
                         const std::vector<Series>& bottom, const std::string& bottom_label,
                         const std::string& title, const std::string& x_label);

}  // namespace vds
