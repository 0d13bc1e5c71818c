#pragma once

#include <filesystem>
#include <string>

#include "vds/params.hpp"
#include "vds/scenario.hpp"
#include "vds/sim.hpp"

namespace vds {

// Parsed run configuration. JSON field names match the type field names;
// unknown keys are rejected. Everything except `scenario` is optional and
// defaults as below.
struct Config {
    ModelKind model = ModelKind::double_track;
    ParamSet params = reference_params();
    Scenario scenario;
    IntegratorConfig integrator;
    std::string output_dir = "out";
};

// Throws std::runtime_error with a descriptive message on syntax errors,
// unknown keys, or wrong value types. Parameter/scenario *values* are
// validated separately (validate_params / validate_scenario).
Config load_config(const std::filesystem::path& file);

}  // namespace vds
