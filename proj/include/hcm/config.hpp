#pragma once

// Tool configuration: a strict JSON file with units encoded in the field
// names (l_mm, total_mass_g, ...).  Unknown keys are rejected with their
// full field path; all values convert to SI at this boundary.

#include "hcm/design.hpp"
#include "hcm/mechanics.hpp"
#include "hcm/simulation.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hcm {

struct SweepRanges {
    double l_min_mm = 80.0, l_max_mm = 200.0, l_step_mm = 5.0;
    double D_min_mm = 5.0, D_max_mm = 30.0, D_step_mm = 1.0;
};

struct ToolConfig {
    std::optional<Material> material;
    std::optional<RibbonGeometry> geometry;
    SectionConvention convention = SectionConvention::PaperLiteral;

    RobotConfig robot = RobotConfig::reference();
    bool has_robot_block = false;

    double dt = 1e-4;       // s
    double duration = 5.0;  // s

    SweepRanges sweep_ranges;
    DesignObjective objective;
    bool has_objective_block = false;

    // analyze extras: static-deflection inputs
    std::vector<double> stiffness_n_mm = {0.0205, 0.2186, 0.0848};
    double deflection_mass_kg = 0.072;

    std::string output_directory = ".";

    // Requirements depend on the subcommand; these raise ConfigError with
    // the missing block/field when the needed inputs are absent.
    const Material& need_material() const;
    const RibbonGeometry& need_geometry() const;

    DesignGrid make_grid() const; // needs material + geometry (h, t)

    static ToolConfig from_json_text(const std::string& text, const std::string& source);
    static ToolConfig load(const std::filesystem::path& path);
};

// Parses a simulate suite file: JSON array of case objects, each with a
// label and the same robot/actuation/simulation fields as the main config
// (missing fields inherit from `base`).
std::vector<SuiteCase> load_suite(const std::filesystem::path& path, const ToolConfig& base);

} // namespace hcm
