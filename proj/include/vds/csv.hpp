#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vds/mat.hpp"
#include "vds/sim.hpp"

namespace vds {

// One row per decimated sample: t, state columns, input columns, then Z
// columns named Z_<state>_<param> in fixed order. Header mandatory, UTF-8,
// '.' decimal separator; values round-trip via %.17g.
void write_csv(const SimOutput& out, const std::filesystem::path& file);

struct CsvTable {
    std::vector<std::string> header;
    Mat data;

    std::size_t col(const std::string& name) const;
    bool has_col(const std::string& name) const;
};

// Strict reader for the schema above: rectangular, numeric, header row.
CsvTable read_csv(const std::filesystem::path& file);

}  // namespace vds
