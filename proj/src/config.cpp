#include "hcm/config.hpp"

#include "hcm/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace hcm {
namespace {

using nlohmann::json;

// Strict object reader: every access marks its key; finish() rejects any
// key never asked for, reporting the full field path.
class Fields {
public:
    Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j.is_object())
            throw ConfigError(path_ + ": expected an object");
    }

    std::string at(const char* key) const { return path_ + "." + key; }

    bool has(const char* key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    const json& require(const char* key) {
        if (!has(key))
            throw ConfigError(at(key) + ": missing required field");
        return j_.at(key);
    }

    double number(const char* key) { return as_number(require(key), at(key)); }

    double number_or(const char* key, double fallback) {
        if (!has(key))
            return fallback;
        return as_number(j_.at(key), at(key));
    }

    bool boolean_or(const char* key, bool fallback) {
        if (!has(key))
            return fallback;
        const json& v = j_.at(key);
        if (!v.is_boolean())
            throw ConfigError(at(key) + ": expected true or false");
        return v.get<bool>();
    }

    std::string string(const char* key) {
        const json& v = require(key);
        if (!v.is_string())
            throw ConfigError(at(key) + ": expected a string");
        return v.get<std::string>();
    }

    std::string string_or(const char* key, const std::string& fallback) {
        if (!has(key))
            return fallback;
        const json& v = j_.at(key);
        if (!v.is_string())
            throw ConfigError(at(key) + ": expected a string");
        return v.get<std::string>();
    }

    std::vector<double> number_array(const char* key) {
        const json& v = require(key);
        return as_number_array(v, at(key));
    }

    std::pair<double, double> number_pair(const char* key) {
        const std::vector<double> v = number_array(key);
        if (v.size() != 2)
            throw ConfigError(at(key) + ": expected [lo, hi]");
        return {v[0], v[1]};
    }

    const json* object(const char* key) {
        if (!has(key))
            return nullptr;
        return &j_.at(key);
    }

    void finish() {
        for (const auto& item : j_.items())
            if (!seen_.count(item.key()))
                throw ConfigError(path_ + "." + item.key() + ": unknown field");
    }

    static double as_number(const json& v, const std::string& path) {
        if (!v.is_number())
            throw ConfigError(path + ": expected a number");
        return v.get<double>();
    }

    static std::vector<double> as_number_array(const json& v, const std::string& path) {
        if (!v.is_array())
            throw ConfigError(path + ": expected an array of numbers");
        std::vector<double> out;
        for (const json& e : v)
            out.push_back(as_number(e, path));
        return out;
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

Material parse_material(const json& j, const std::string& path) {
    Fields f(j, path);
    const double e_pa = f.number("E_MPa") * 1e6;
    const double nu = f.number_or("nu", 0.40);
    const double rho = f.number_or("rho_s_kg_m3", 1270.0);
    f.finish();
    try {
        return Material::isotropic(e_pa, nu, rho);
    } catch (const ValidationError& ex) {
        throw ConfigError(path + ": " + ex.what());
    }
}

RibbonGeometry parse_geometry(const json& j, const std::string& path) {
    Fields f(j, path);
    RibbonGeometry g;
    g.half_length = f.number("l_mm") * 1e-3;
    g.locking_displacement = f.number("D_mm") * 1e-3;
    g.width = f.number("h_mm") * 1e-3;
    g.thickness = f.number("t_mm") * 1e-3;
    f.finish();
    try {
        g.validate();
    } catch (const ValidationError& ex) {
        throw ConfigError(path + ": " + ex.what());
    }
    return g;
}

SectionConvention parse_convention(const std::string& value, const std::string& path) {
    if (value == "paper-literal")
        return SectionConvention::PaperLiteral;
    if (value == "weak-axis")
        return SectionConvention::WeakAxis;
    throw ConfigError(path + ": expected 'paper-literal' or 'weak-axis', got '" + value +
                      "'");
}

SubstrateFriction parse_substrate(const json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return SubstrateFriction::preset(j.get<std::string>());
        } catch (const ValidationError& ex) {
            throw ConfigError(path + ": " + ex.what());
        }
    }
    Fields f(j, path);
    SubstrateFriction s;
    s.name = f.string_or("name", "custom");
    s.mu_plastic = f.number("mu_plastic");
    s.mu_rubber = f.number("mu_rubber");
    f.finish();
    return s;
}

RobotConfig parse_robot(const json& j, const std::string& path, RobotConfig base) {
    Fields f(j, path);
    base.total_mass = f.number_or("total_mass_g", base.total_mass * 1e3) * 1e-3;
    base.fore_mass_fraction = f.number_or("fore_mass_fraction", base.fore_mass_fraction);
    base.body_length = f.number_or("body_length_mm", base.body_length * 1e3) * 1e-3;
    base.flexion_length =
        f.number_or("flexion_length_mm", base.flexion_length * 1e3) * 1e-3;
    const double fore_barrier =
        f.number_or("fore_barrier_mJ", base.fore_landscape.barrier() * 1e3) * 1e-3;
    const double rear_barrier =
        f.number_or("rear_barrier_mJ", base.rear_landscape.barrier() * 1e3) * 1e-3;
    base.spine_damping = f.number_or("spine_damping_N_s_per_m", base.spine_damping);
    base.snap_time = f.number_or("snap_time_ms", base.snap_time * 1e3) * 1e-3;
    if (const json* sub = f.object("substrate"))
        base.feet = parse_substrate(*sub, f.at("substrate"));
    base.fore_normal_share = f.number_or("fore_normal_share", base.fore_normal_share);
    base.contact_stiffness =
        f.number_or("contact_stiffness_N_per_m", base.contact_stiffness);
    base.contact_damping_ratio =
        f.number_or("contact_damping_ratio", base.contact_damping_ratio);
    base.stiction_velocity =
        f.number_or("stiction_velocity_mm_per_s", base.stiction_velocity * 1e3) * 1e-3;
    base.kick_gain = f.number_or("kick_gain_N_s_per_m", base.kick_gain);
    base.servo_force_margin = f.number_or("servo_force_margin", base.servo_force_margin);
    if (f.has("servo_energy_limit_mJ"))
        base.servo_energy_limit =
            Fields::as_number(j.at("servo_energy_limit_mJ"),
                              f.at("servo_energy_limit_mJ")) * 1e-3;
    f.finish();

    const double stroke = base.body_length - base.flexion_length;
    if (!(stroke > 0.0))
        throw ConfigError(path + ": flexion_length_mm must be smaller than body_length_mm");
    try {
        base.fore_landscape = EnergyLandscape(fore_barrier, stroke);
        base.rear_landscape = EnergyLandscape(rear_barrier, stroke);
    } catch (const ValidationError& ex) {
        throw ConfigError(path + ": " + ex.what());
    }
    return base;
}

void parse_actuation(const json& j, const std::string& path, RobotConfig& robot) {
    Fields f(j, path);
    robot.frequency = f.number_or("frequency_Hz", robot.frequency);
    const std::string mode = f.string_or(
        "mode", robot.mode == ActuationMode::SymmetricGallop ? "gallop" : "rear-only");
    if (mode == "gallop")
        robot.mode = ActuationMode::SymmetricGallop;
    else if (mode == "rear-only")
        robot.mode = ActuationMode::RearOnly;
    else
        throw ConfigError(f.at("mode") + ": expected 'gallop' or 'rear-only', got '" +
                          mode + "'");
    robot.actuation_enabled = f.boolean_or("enabled", robot.actuation_enabled);
    f.finish();
}

SweepRanges parse_sweep(const json& j, const std::string& path, SweepRanges base) {
    Fields f(j, path);
    base.l_min_mm = f.number_or("l_min_mm", base.l_min_mm);
    base.l_max_mm = f.number_or("l_max_mm", base.l_max_mm);
    base.l_step_mm = f.number_or("l_step_mm", base.l_step_mm);
    base.D_min_mm = f.number_or("D_min_mm", base.D_min_mm);
    base.D_max_mm = f.number_or("D_max_mm", base.D_max_mm);
    base.D_step_mm = f.number_or("D_step_mm", base.D_step_mm);
    f.finish();
    return base;
}

DesignObjective parse_objective(const json& j, const std::string& path) {
    Fields f(j, path);
    DesignObjective obj;
    const std::string target = f.string_or("target", "max-tip-angle");
    if (target == "max-tip-angle")
        obj.target = ObjectiveTarget::MaximizeTipAngle;
    else if (target == "max-barrier")
        obj.target = ObjectiveTarget::MaximizeBarrier;
    else if (target == "weighted-sum")
        obj.target = ObjectiveTarget::WeightedSum;
    else
        throw ConfigError(f.at("target") +
                          ": expected 'max-tip-angle', 'max-barrier' or 'weighted-sum'");
    obj.weight_tip = f.number_or("weight_tip_per_rad", 0.0);
    obj.weight_barrier = f.number_or("weight_barrier_per_mJ", 0.0) * 1e3; // per J
    if (f.has("barrier_budget_mJ"))
        obj.barrier_budget =
            Fields::as_number(j.at("barrier_budget_mJ"), f.at("barrier_budget_mJ")) * 1e-3;
    if (f.has("l_bounds_mm")) {
        const auto [lo, hi] = f.number_pair("l_bounds_mm");
        obj.l_bounds = {lo * 1e-3, hi * 1e-3};
    }
    if (f.has("D_bounds_mm")) {
        const auto [lo, hi] = f.number_pair("D_bounds_mm");
        obj.D_bounds = {lo * 1e-3, hi * 1e-3};
    }
    f.finish();
    try {
        obj.validate();
    } catch (const ValidationError& ex) {
        throw ConfigError(path + ": " + ex.what());
    }
    return obj;
}

} // namespace

const Material& ToolConfig::need_material() const {
    if (!material)
        throw ConfigError("material: missing required block");
    return *material;
}

const RibbonGeometry& ToolConfig::need_geometry() const {
    if (!geometry)
        throw ConfigError("geometry: missing required block");
    return *geometry;
}

DesignGrid ToolConfig::make_grid() const {
    DesignGrid grid;
    grid.l_min = sweep_ranges.l_min_mm * 1e-3;
    grid.l_max = sweep_ranges.l_max_mm * 1e-3;
    grid.l_step = sweep_ranges.l_step_mm * 1e-3;
    grid.D_min = sweep_ranges.D_min_mm * 1e-3;
    grid.D_max = sweep_ranges.D_max_mm * 1e-3;
    grid.D_step = sweep_ranges.D_step_mm * 1e-3;
    grid.material = need_material();
    const RibbonGeometry& geo = need_geometry();
    grid.width = geo.width;
    grid.thickness = geo.thickness;
    grid.convention = convention;
    try {
        grid.validate();
    } catch (const ValidationError& ex) {
        throw ConfigError(std::string("sweep: ") + ex.what());
    }
    return grid;
}

ToolConfig ToolConfig::from_json_text(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw ConfigError(source + ": " + ex.what());
    }

    ToolConfig cfg;
    Fields f(j, source);
    if (const json* m = f.object("material"))
        cfg.material = parse_material(*m, f.at("material"));
    if (const json* g = f.object("geometry"))
        cfg.geometry = parse_geometry(*g, f.at("geometry"));
    if (f.has("convention"))
        cfg.convention = parse_convention(f.string("convention"), f.at("convention"));
    if (const json* r = f.object("robot")) {
        cfg.robot = parse_robot(*r, f.at("robot"), cfg.robot);
        cfg.has_robot_block = true;
    }
    if (const json* a = f.object("actuation"))
        parse_actuation(*a, f.at("actuation"), cfg.robot);
    if (const json* s = f.object("simulation")) {
        Fields fs(*s, f.at("simulation"));
        cfg.dt = fs.number_or("dt_ms", cfg.dt * 1e3) * 1e-3;
        cfg.duration = fs.number_or("duration_s", cfg.duration);
        fs.finish();
        if (!(cfg.dt > 0.0) || !(cfg.duration > 0.0))
            throw ConfigError(f.at("simulation") + ": dt_ms and duration_s must be > 0");
    }
    if (const json* s = f.object("sweep"))
        cfg.sweep_ranges = parse_sweep(*s, f.at("sweep"), cfg.sweep_ranges);
    if (const json* o = f.object("objective")) {
        cfg.objective = parse_objective(*o, f.at("objective"));
        cfg.has_objective_block = true;
    }
    if (const json* a = f.object("analysis")) {
        Fields fa(*a, f.at("analysis"));
        if (fa.has("stiffness_N_mm"))
            cfg.stiffness_n_mm =
                Fields::as_number_array(a->at("stiffness_N_mm"), fa.at("stiffness_N_mm"));
        cfg.deflection_mass_kg =
            fa.number_or("deflection_mass_g", cfg.deflection_mass_kg * 1e3) * 1e-3;
        fa.finish();
    }
    if (const json* o = f.object("output")) {
        Fields fo(*o, f.at("output"));
        cfg.output_directory = fo.string_or("directory", cfg.output_directory);
        fo.finish();
    }
    f.finish();

    try {
        cfg.robot.validate();
    } catch (const ValidationError& ex) {
        throw ConfigError(std::string("robot: ") + ex.what());
    }
    return cfg;
}

ToolConfig ToolConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str(), path.filename().string());
}

std::vector<SuiteCase> load_suite(const std::filesystem::path& path, const ToolConfig& base) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open suite file: " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& ex) {
        throw ConfigError(path.filename().string() + ": " + ex.what());
    }
    if (!j.is_array() || j.empty())
        throw ConfigError(path.filename().string() +
                          ": expected a non-empty array of cases");

    std::vector<SuiteCase> cases;
    int index = 0;
    for (const json& cj : j) {
        const std::string cpath =
            path.filename().string() + "[" + std::to_string(index) + "]";
        Fields f(cj, cpath);
        SuiteCase c;
        c.label = f.string_or("label", "case" + std::to_string(index));
        c.config = base.robot;
        c.duration = base.duration;
        c.dt = base.dt;
        if (const json* r = f.object("robot"))
            c.config = parse_robot(*r, f.at("robot"), c.config);
        if (const json* a = f.object("actuation"))
            parse_actuation(*a, f.at("actuation"), c.config);
        if (const json* s = f.object("simulation")) {
            Fields fs(*s, f.at("simulation"));
            c.dt = fs.number_or("dt_ms", c.dt * 1e3) * 1e-3;
            c.duration = fs.number_or("duration_s", c.duration);
            fs.finish();
        }
        f.finish();
        try {
            c.config.validate();
        } catch (const ValidationError& ex) {
            throw ConfigError(cpath + ": " + ex.what());
        }
        cases.push_back(std::move(c));
        ++index;
    }
    return cases;
}

} // namespace hcm
