// hcm: design, simulate and analyze prestressed hair-clip mechanisms.
//
// Subcommands: analyze, sweep, optimize, simulate, fit-bending, metrics.
// Exit codes: 0 ok, 2 config/validation, 3 numerical, 4 infeasible,
// 5 integrator instability.

#include "hcm/analysis.hpp"
#include "hcm/config.hpp"
#include "hcm/design.hpp"
#include "hcm/errors.hpp"
#include "hcm/io.hpp"
#include "hcm/mechanics.hpp"
#include "hcm/simulation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string out_dir; // empty: fall back to the config's output.directory
    bool json = false;
    bool plot_data = false;
    std::optional<std::string> convention_override;
};

fs::path resolve_out_dir(const GlobalOptions& opts, const hcm::ToolConfig& cfg) {
    return opts.out_dir.empty() ? fs::path(cfg.output_directory)
                                : fs::path(opts.out_dir);
}

hcm::ToolConfig load_config(const GlobalOptions& opts, bool required) {
    hcm::ToolConfig cfg;
    if (!opts.config_path.empty())
        cfg = hcm::ToolConfig::load(opts.config_path);
    else if (required)
        throw hcm::ConfigError("--config <file> is required for this command");
    if (opts.convention_override) {
        if (*opts.convention_override == "paper-literal")
            cfg.convention = hcm::SectionConvention::PaperLiteral;
        else if (*opts.convention_override == "weak-axis")
            cfg.convention = hcm::SectionConvention::WeakAxis;
        else
            throw hcm::ConfigError(
                "--convention: expected 'paper-literal' or 'weak-axis'");
    }
    return cfg;
}

// Atomic file write: the file appears complete or not at all.
void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out)
            throw hcm::ConfigError("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

const char* convention_name(hcm::SectionConvention c) {
    return c == hcm::SectionConvention::PaperLiteral ? "paper-literal" : "weak-axis";
}

double round_sig(double v, int digits) {
    // Stable display rounding for JSON payloads.
    if (v == 0.0 || !std::isfinite(v))
        return v;
    std::istringstream in(hcm::format_sig(v, digits));
    double out = v;
    in >> out;
    return out;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

// ---------------------------------------------------------------- analyze

ordered_json analyze_report(const hcm::ToolConfig& cfg) {
    const hcm::Material& mat = cfg.need_material();
    const hcm::RibbonGeometry& geo = cfg.need_geometry();
    const hcm::BucklingSolution sol = hcm::solve_buckling(mat, geo, cfg.convention);
    const double u_barr = hcm::energy_barrier(sol.critical_load, geo.locking_displacement);
    const double t_star = hcm::snap_timescale(geo, mat);
    const double stroke = cfg.robot.stroke();
    const hcm::EnergyLandscape landscape = hcm::build_landscape(u_barr, stroke);

    ordered_json j;
    j["convention"] = convention_name(cfg.convention);
    j["section"] = {{"EI_eta_N_m2", sol.section.bending_stiffness},
                    {"C_N_m2", sol.section.torsional_rigidity}};
    j["P_cr_N"] = round_sig(sol.critical_load, 9);
    j["A1"] = round_sig(sol.amplitude, 9);
    j["psi_l_rad"] = round_sig(sol.tip_angle, 9);
    j["U_barr_mJ"] = round_sig(u_barr * 1e3, 9);
    j["t_star_ms"] = round_sig(t_star * 1e3, 9);
    j["landscape"] = {{"stroke_mm", round_sig(stroke * 1e3, 9)},
                      {"barrier_mJ", round_sig(landscape.barrier() * 1e3, 9)},
                      {"wells_mm", {0.0, round_sig(stroke * 1e3, 9)}},
                      {"barrier_at_mm", round_sig(0.5 * stroke * 1e3, 9)}};

    ordered_json defl = ordered_json::array();
    for (double k : cfg.stiffness_n_mm)
        defl.push_back({{"K_N_mm", k},
                        {"deflection_mm",
                         round_sig(hcm::static_deflection(cfg.deflection_mass_kg, k), 9)}});
    j["static_deflections"] = {{"mass_g", cfg.deflection_mass_kg * 1e3},
                               {"entries", defl}};

    // Both conventions side by side: the printed bending-stiffness formula
    // is ambiguous, so the report always shows the alternative too.
    ordered_json cmp;
    for (auto conv : {hcm::SectionConvention::PaperLiteral, hcm::SectionConvention::WeakAxis}) {
        const hcm::BucklingSolution s = hcm::solve_buckling(mat, geo, conv);
        cmp[convention_name(conv)] = {
            {"psi_l_rad", round_sig(s.tip_angle, 9)},
            {"U_barr_mJ",
             round_sig(hcm::energy_barrier(s.critical_load, geo.locking_displacement) * 1e3,
                       9)}};
    }
    j["convention_comparison"] = cmp;
    return j;
}

void print_analyze_text(const ordered_json& j, std::ostream& os) {
    os << "analyze (convention: " << j["convention"].get<std::string>() << ")\n";
    os << "  section:     EI_eta = " << hcm::format_sig(j["section"]["EI_eta_N_m2"], 6)
       << " N m^2, C = " << hcm::format_sig(j["section"]["C_N_m2"], 6) << " N m^2\n";
    os << "  buckling:    P_cr = " << hcm::format_sig(j["P_cr_N"], 6)
       << " N, A1 = " << hcm::format_sig(j["A1"], 6)
       << ", psi_l = " << hcm::format_sig(j["psi_l_rad"], 6) << " rad\n";
    os << "  energy:      U_barr = " << hcm::format_sig(j["U_barr_mJ"], 6)
       << " mJ, t* = " << hcm::format_sig(j["t_star_ms"], 6) << " ms\n";
    os << "  landscape:   stroke = " << hcm::format_sig(j["landscape"]["stroke_mm"], 6)
       << " mm, barrier " << hcm::format_sig(j["landscape"]["barrier_mJ"], 6)
       << " mJ at s = " << hcm::format_sig(j["landscape"]["barrier_at_mm"], 6) << " mm\n";
    os << "  deflections (m = " << hcm::format_sig(j["static_deflections"]["mass_g"], 6)
       << " g):";
    for (const auto& e : j["static_deflections"]["entries"])
        os << "  K=" << hcm::format_sig(e["K_N_mm"], 6) << " N/mm -> "
           << hcm::format_sig(e["deflection_mm"], 6) << " mm";
    os << "\n  comparison:  ";
    bool first = true;
    for (const auto& [name, vals] : j["convention_comparison"].items()) {
        if (!first)
            os << " | ";
        os << name << ": psi_l = " << hcm::format_sig(vals["psi_l_rad"], 6)
           << " rad, U_barr = " << hcm::format_sig(vals["U_barr_mJ"], 6) << " mJ";
        first = false;
    }
    os << '\n';
}

void cmd_analyze(const GlobalOptions& opts) {
    const hcm::ToolConfig cfg = load_config(opts, true);
    const ordered_json report = analyze_report(cfg);
    if (opts.json)
        std::cout << report.dump(2) << '\n';
    else
        print_analyze_text(report, std::cout);

    if (opts.plot_data) {
        const fs::path out = resolve_out_dir(opts, cfg);
        const hcm::BucklingSolution sol =
            hcm::solve_buckling(cfg.need_material(), cfg.need_geometry(), cfg.convention);
        const double l = sol.geometry.half_length;
        std::ostringstream mode;
        mode << "# z_m phi_rad\n";
        for (int i = 0; i < 200; ++i) {
            const double z = l * i / 200.0;
            mode << hcm::format_sig(z, 9) << ' '
                 << hcm::format_sig(hcm::mode_shape(sol, z), 9) << '\n';
        }
        write_file(out / "mode_shape.dat", mode.str());

        const double u_barr =
            hcm::energy_barrier(sol.critical_load, sol.geometry.locking_displacement);
        const hcm::EnergyLandscape land = hcm::build_landscape(u_barr, cfg.robot.stroke());
        std::ostringstream lnd;
        lnd << "# s_mm U_mJ\n";
        for (int i = 0; i <= 200; ++i) {
            const double s = land.stroke() * i / 200.0;
            lnd << hcm::format_sig(s * 1e3, 9) << ' '
                << hcm::format_sig(land.value(s) * 1e3, 9) << '\n';
        }
        write_file(out / "landscape.dat", lnd.str());
    }
}

// ----------------------------------------------------------- sweep/optimize

void cmd_sweep(const GlobalOptions& opts) {
    const hcm::ToolConfig cfg = load_config(opts, true);
    const fs::path out = resolve_out_dir(opts, cfg);
    const hcm::DesignGrid grid = cfg.make_grid();
    const std::vector<hcm::SweepEntry> entries = hcm::sweep(grid);

    std::ostringstream csv;
    hcm::write_sweep_csv(csv, entries);
    const fs::path csv_path = out / "sweep.csv";
    write_file(csv_path, csv.str());

    std::size_t failures = 0;
    for (const auto& e : entries)
        failures += e.point ? 0 : 1;
    for (const auto& e : entries)
        if (!e.point)
            std::cerr << "sweep: node l=" << e.l * 1e3 << " mm D=" << e.D * 1e3
                      << " mm failed: " << e.error << '\n';

    if (opts.json) {
        ordered_json j;
        j["rows"] = entries.size();
        j["failed_rows"] = failures;
        j["csv"] = csv_path.string();
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "sweep: " << entries.size() << " rows (" << failures
                  << " failed) -> " << csv_path.string() << '\n';
    }

    if (opts.plot_data) {
        std::ostringstream psi, ub;
        psi << "# l_mm D_mm psi_l_rad\n";
        ub << "# l_mm D_mm U_barr_mJ\n";
        for (const auto& e : entries) {
            if (!e.point)
                continue;
            psi << hcm::format_sig(e.l * 1e3, 6) << ' ' << hcm::format_sig(e.D * 1e3, 6)
                << ' ' << hcm::format_sig(e.point->psi_l, 6) << '\n';
            ub << hcm::format_sig(e.l * 1e3, 6) << ' ' << hcm::format_sig(e.D * 1e3, 6)
               << ' ' << hcm::format_sig(e.point->U_barr * 1e3, 6) << '\n';
        }
        write_file(out / "sweep_psi.dat", psi.str());
        write_file(out / "sweep_ubarr.dat", ub.str());
    }
}

void cmd_optimize(const GlobalOptions& opts) {
    const hcm::ToolConfig cfg = load_config(opts, true);
    const hcm::DesignGrid grid = cfg.make_grid();
    const hcm::DesignObjective& obj = cfg.objective;
    const hcm::DesignPoint best = hcm::optimize(obj, grid);

    // The budget binds when dropping it would let the objective improve past
    // it; a proximity test would miss optima quantized by the refinement grid.
    bool budget_active = false;
    if (std::isfinite(obj.barrier_budget)) {
        hcm::DesignObjective relaxed = obj;
        relaxed.barrier_budget = std::numeric_limits<double>::infinity();
        budget_active = hcm::optimize(relaxed, grid).U_barr > obj.barrier_budget;
    }

    std::string active = "none (interior optimum)";
    if (budget_active)
        active = "barrier budget";
    else {
        const double l_lo = obj.l_bounds ? std::max(grid.l_min, obj.l_bounds->first)
                                         : grid.l_min;
        const double l_hi = obj.l_bounds ? std::min(grid.l_max, obj.l_bounds->second)
                                         : grid.l_max;
        const double d_lo = obj.D_bounds ? std::max(grid.D_min, obj.D_bounds->first)
                                         : grid.D_min;
        const double d_hi = obj.D_bounds ? std::min(grid.D_max, obj.D_bounds->second)
                                         : grid.D_max;
        if (best.l <= l_lo || best.l >= l_hi || best.D <= d_lo || best.D >= d_hi)
            active = "search bounds";
    }

    ordered_json j;
    j["l_mm"] = round_sig(best.l * 1e3, 9);
    j["D_mm"] = round_sig(best.D * 1e3, 9);
    j["psi_l_rad"] = round_sig(best.psi_l, 9);
    j["U_barr_mJ"] = round_sig(best.U_barr * 1e3, 9);
    j["P_cr_N"] = round_sig(best.P_cr, 9);
    j["t_star_ms"] = round_sig(best.t_star * 1e3, 9);
    j["active_constraint"] = active;

    if (opts.json) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "optimum: l = " << hcm::format_sig(best.l * 1e3, 6)
                  << " mm, D = " << hcm::format_sig(best.D * 1e3, 6)
                  << " mm, psi_l = " << hcm::format_sig(best.psi_l, 6)
                  << " rad, U_barr = " << hcm::format_sig(best.U_barr * 1e3, 6)
                  << " mJ, P_cr = " << hcm::format_sig(best.P_cr, 6)
                  << " N, t* = " << hcm::format_sig(best.t_star * 1e3, 6) << " ms\n"
                  << "active constraint: " << active << '\n';
    }
}

// -------------------------------------------------------------- simulate

ordered_json metrics_json(const hcm::GaitMetrics& gm, const hcm::JumpMetrics& jm) {
    ordered_json j;
    j["mean_speed_mm_s"] = round_sig(gm.mean_speed_mm_s, 9);
    if (gm.speed_bl_s)
        j["speed_bl_s"] = round_sig(*gm.speed_bl_s, 9);
    if (gm.stride_length_mm)
        j["stride_length_mm"] = round_sig(*gm.stride_length_mm, 9);
    j["air_time_fraction"] = round_sig(gm.air_time_fraction, 9);
    if (gm.peak_tip_angular_velocity_deg_s)
        j["peak_tip_angular_velocity_deg_s"] =
            round_sig(*gm.peak_tip_angular_velocity_deg_s, 9);
    j["missing"] = gm.missing;
    j["jump"] = {{"air_time_s", round_sig(jm.air_time_s, 9)},
                 {"apex_height_mm", round_sig(jm.apex_height_mm, 9)}};
    return j;
}

void cmd_simulate(const GlobalOptions& opts, const std::string& suite_path) {
    const hcm::ToolConfig cfg = load_config(opts, true);
    const fs::path out = resolve_out_dir(opts, cfg);

    if (!suite_path.empty()) {
        const std::vector<hcm::SuiteCase> cases = hcm::load_suite(suite_path, cfg);
        const std::vector<hcm::SuiteRow> rows = hcm::experiment_suite(cases);
        std::ostringstream csv;
        hcm::write_suite_csv(csv, rows);
        const fs::path csv_path = out / "suite.csv";
        write_file(csv_path, csv.str());
        for (const auto& r : rows)
            if (!r.error.empty())
                std::cerr << "suite: case '" << r.label << "' failed: " << r.error << '\n';

        // Frequency-sweep suites get the linearity summary.
        std::vector<double> freqs, speeds;
        bool same_substrate = true;
        for (const auto& r : rows) {
            if (!r.error.empty())
                continue;
            same_substrate = same_substrate && r.substrate == rows.front().substrate;
            freqs.push_back(r.freq_hz);
            speeds.push_back(r.speed_mm_s);
        }
        std::cout << "suite: " << rows.size() << " rows -> " << csv_path.string() << '\n';
        if (same_substrate && freqs.size() >= 3) {
            const bool varied =
                *std::max_element(freqs.begin(), freqs.end()) >
                *std::min_element(freqs.begin(), freqs.end());
            if (varied) {
                const LinearFit fit = linear_fit(freqs, speeds);
                std::cout << "speed vs frequency linear fit: R^2 = "
                          << hcm::format_sig(fit.r_squared, 6) << " (slope "
                          << hcm::format_sig(fit.slope, 6) << " mm/s per Hz)\n";
            }
        }
        return;
    }

    const hcm::Trajectory traj = hcm::run_gait(cfg.robot, cfg.duration, cfg.dt);
    std::ostringstream csv;
    hcm::write_trajectory_csv(csv, traj);
    const fs::path csv_path = out / "trajectory.csv";
    write_file(csv_path, csv.str());

    ordered_json j = metrics_json(hcm::gait_metrics(traj), hcm::jump_metrics(traj));
    j["energy"] = {{"injected_mJ", round_sig(traj.energy.injected() * 1e3, 9)},
                   {"servo_mJ", round_sig(traj.energy.servo_work * 1e3, 9)},
                   {"kick_mJ", round_sig(traj.energy.kick_work * 1e3, 9)},
                   {"dissipated_mJ", round_sig(traj.energy.dissipated() * 1e3, 9)},
                   {"audit_residual_fraction", round_sig(traj.max_audit_residual, 9)}};
    j["trajectory_csv"] = csv_path.string();
    write_file(out / "metrics.json", j.dump(2) + "\n");
    std::cout << j.dump(2) << '\n';

    if (opts.plot_data) {
        std::ostringstream x, y, s;
        x << "# t_s x_com_mm\n";
        y << "# t_s clearance_mm\n";
        s << "# t_s spine_mm\n";
        const double wf = traj.config.fore_mass_fraction;
        for (const auto& st : traj.samples) {
            x << hcm::format_sig(st.time, 9) << ' '
              << hcm::format_sig((wf * st.x_fore + (1.0 - wf) * st.x_hind) * 1e3, 9)
              << '\n';
            y << hcm::format_sig(st.time, 9) << ' '
              << hcm::format_sig(std::min(st.y_fore, st.y_hind) * 1e3, 9) << '\n';
            s << hcm::format_sig(st.time, 9) << ' ' << hcm::format_sig(st.spine * 1e3, 9)
              << '\n';
        }
        write_file(out / "plot_com_x.dat", x.str());
        write_file(out / "plot_clearance.dat", y.str());
        write_file(out / "plot_spine.dat", s.str());
    }
}

// ------------------------------------------------- fit-bending / metrics

void cmd_fit_bending(const std::string& file, std::optional<std::pair<double, double>> region) {
    std::ifstream in(file);
    if (!in)
        throw hcm::ConfigError("cannot open " + file);
    const hcm::BendingRecord rec = hcm::read_bending_csv(in);
    const hcm::StiffnessFit fit = hcm::fit_stiffness(rec, region);

    ordered_json j;
    j["stiffness_N_mm"] = round_sig(fit.stiffness, 9);
    j["std_error_N_mm"] = round_sig(fit.std_error, 9);
    j["samples_in_region"] = fit.count;
    j["region_mm"] = {round_sig(fit.region_lo, 9), round_sig(fit.region_hi, 9)};
    j["barrier_mJ"] = round_sig(hcm::barrier_from_curve(rec), 9);
    j["span_mm"] = rec.span_mm;
    std::cout << j.dump(2) << '\n';
}

void cmd_metrics(const std::string& file, std::optional<double> body_length_mm,
                 std::optional<double> period_s, std::optional<double> threshold_mm) {
    std::ifstream probe(file);
    if (!probe)
        throw hcm::ConfigError("cannot open " + file);
    std::string header;
    std::getline(probe, header);
    probe.close();

    std::ifstream in(file);
    std::optional<double> bl_m;
    if (body_length_mm)
        bl_m = *body_length_mm * 1e-3;

    ordered_json j;
    if (hcm::looks_like_trajectory_header(header)) {
        const hcm::TrajectoryTable table = hcm::read_trajectory_csv(in);
        j = metrics_json(hcm::gait_metrics(table, bl_m, period_s),
                         hcm::jump_metrics(table));
    } else {
        const hcm::ExternalTrace trace = hcm::read_trace_csv(in);
        hcm::JumpMetrics jm;
        if (trace.y_mm) {
            const double thr = threshold_mm
                                   ? *threshold_mm
                                   : *std::min_element(trace.y_mm->begin(),
                                                       trace.y_mm->end()) + 1.0;
            jm = hcm::jump_metrics(trace, thr);
        }
        j = metrics_json(hcm::gait_metrics(trace, bl_m, period_s), jm);
    }
    std::cout << j.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Design and simulation toolkit for prestressed hair-clip mechanisms"};
    app.require_subcommand(1);

    GlobalOptions opts;
    std::string convention;
    app.add_option("--config", opts.config_path, "Path to the JSON config file");
    app.add_option("--out", opts.out_dir,
                   "Output directory (overrides the config's output.directory; "
                   "default: .)");
    app.add_flag("--json", opts.json, "Emit JSON instead of text on stdout");
    app.add_flag("--plot-data", opts.plot_data, "Write x/y column files for plotting");
    app.add_option("--convention", convention,
                   "Section convention override: paper-literal | weak-axis");

    CLI::App* analyze = app.add_subcommand("analyze", "Single-design buckling analysis");
    CLI::App* sweep = app.add_subcommand("sweep", "Sweep the (l, D) design grid");
    CLI::App* optimize = app.add_subcommand("optimize", "Optimize the design objective");
    CLI::App* simulate = app.add_subcommand("simulate", "Run the crawler gait simulation");
    std::string suite_path;
    simulate->add_option("--suite", suite_path, "JSON file with a list of cases");

    CLI::App* fitb = app.add_subcommand("fit-bending", "Fit a bending-test CSV");
    std::string bending_file;
    std::vector<double> region_mm;
    fitb->add_option("file", bending_file, "CSV with header disp_mm,load_N")->required();
    fitb->add_option("--region-mm", region_mm, "Fit window lo hi (mm)")->expected(2);

    CLI::App* metrics = app.add_subcommand("metrics", "Gait/jump metrics from a CSV");
    std::string metrics_file;
    double body_length_mm = 0.0, period_s = 0.0, threshold_mm = 0.0;
    bool have_bl = false, have_period = false, have_thr = false;
    metrics->add_option("file", metrics_file, "Trajectory or trace CSV")->required();
    metrics->add_option("--body-length-mm", body_length_mm, "Body length for BL/s")
        ->each([&](const std::string&) { have_bl = true; });
    metrics->add_option("--period-s", period_s, "Actuation period for stride length")
        ->each([&](const std::string&) { have_period = true; });
    metrics->add_option("--threshold-mm", threshold_mm, "Off-ground height threshold")
        ->each([&](const std::string&) { have_thr = true; });

    for (CLI::App* sub : {analyze, sweep, optimize, simulate, fitb, metrics})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (!convention.empty())
        opts.convention_override = convention;

    try {
        if (analyze->parsed())
            cmd_analyze(opts);
        else if (sweep->parsed())
            cmd_sweep(opts);
        else if (optimize->parsed())
            cmd_optimize(opts);
        else if (simulate->parsed())
            cmd_simulate(opts, suite_path);
        else if (fitb->parsed())
            cmd_fit_bending(bending_file,
                            region_mm.size() == 2
                                ? std::optional<std::pair<double, double>>(
                                      {region_mm[0], region_mm[1]})
                                : std::nullopt);
        else if (metrics->parsed())
            cmd_metrics(metrics_file,
                        have_bl ? std::optional<double>(body_length_mm) : std::nullopt,
                        have_period ? std::optional<double>(period_s) : std::nullopt,
                        have_thr ? std::optional<double>(threshold_mm) : std::nullopt);
    } catch (const hcm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const hcm::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const hcm::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 4;
    } catch (const hcm::InstabilityError& e) {
        std::cerr << "instability: " << e.what() << '\n';
        return 5;
    } catch (const hcm::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
