// Acceptance gate: nine go/no-go criteria for the toolkit, one PASS/FAIL
// line each, nonzero exit when any criterion fails.  Criteria 1-8 drive the
// library directly; criterion 9 spawns the CLI binary passed as argv[1].

#include "hcm/analysis.hpp"
#include "hcm/bessel.hpp"
#include "hcm/design.hpp"
#include "hcm/errors.hpp"
#include "hcm/mechanics.hpp"
#include "hcm/simulation.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

hcm::Material ref_material() { return hcm::Material::isotropic(1730e6, 0.4, 1270.0); }

hcm::RibbonGeometry ref_geometry() {
    hcm::RibbonGeometry g;
    g.half_length = 0.1291;
    g.locking_displacement = 0.016;
    g.width = 0.015;
    g.thickness = 0.000381;
    return g;
}

struct Report {
    int passed = 0;
    int failed = 0;

    void line(int id, bool ok, const std::string& detail) {
        std::printf("%s %d %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
        std::fflush(stdout);
        (ok ? passed : failed) += 1;
    }
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

// ------------------------------------------------------------- criterion 1

bool c1_buckling_constant(std::string& detail) {
    const auto start = Clock::now();
    // Independent bisection of the implemented J_{1/4} inside [2, 3].
    double lo = 2.0, hi = 3.0;
    if (!(hcm::bessel_j_quarter(lo) > 0.0) || !(hcm::bessel_j_quarter(hi) < 0.0)) {
        detail = "buckling-mode constant: no sign change of J_{1/4} on [2, 3]";
        return false;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (hcm::bessel_j_quarter(mid) > 0.0 ? lo : hi) = mid;
    }
    const double constant = lo + hi; // 2 * z1
    const double rel = std::abs(constant - 5.5618) / 5.5618;
    const double elapsed = seconds_since(start);
    const double lib_rel =
        std::abs(hcm::buckling_mode_constant() - constant) / constant;
    detail = fmt("buckling-mode constant: 2*z1 = %.6f, rel err %.2e vs 5.5618 "
                 "(library agrees to %.1e; %.3f s)",
                 constant, rel, lib_rel, elapsed);
    return rel < 1e-3 && lib_rel < 1e-12 && elapsed < 1.0;
}

// ------------------------------------------------------------- criterion 2

bool c2_ode_residual(std::string& detail) {
    const auto start = Clock::now();
    const hcm::Material m = ref_material();
    const hcm::RibbonGeometry g = ref_geometry();
    double worst[2] = {0.0, 0.0};
    int idx = 0;
    for (auto conv :
         {hcm::SectionConvention::PaperLiteral, hcm::SectionConvention::WeakAxis}) {
        const hcm::BucklingSolution sol = hcm::solve_buckling(m, g, conv);
        const double l = g.half_length;
        const double c = sol.section.torsional_rigidity;
        const double k =
            sol.critical_load * sol.critical_load / sol.section.bending_stiffness;
        const double h = l / 1000.0;
        for (int i = 1; i <= 100; ++i) {
            const double z = l * i / 101.0;
            const double d2 =
                (-hcm::mode_shape(sol, z - 2.0 * h) + 16.0 * hcm::mode_shape(sol, z - h) -
                 30.0 * hcm::mode_shape(sol, z) + 16.0 * hcm::mode_shape(sol, z + h) -
                 hcm::mode_shape(sol, z + 2.0 * h)) /
                (12.0 * h * h);
            const double bend = k * (l - z) * (l - z) * hcm::mode_shape(sol, z);
            const double scale = std::max(std::abs(c * d2), std::abs(bend));
            worst[idx] = std::max(worst[idx], std::abs(c * d2 + bend) / scale);
        }
        ++idx;
    }
    const double elapsed = seconds_since(start);
    detail = fmt("mode-shape ODE residual at 100 interior points: worst %.2e "
                 "(paper-literal), %.2e (weak-axis) (%.3f s)",
                 worst[0], worst[1], elapsed);
    return worst[0] < 1e-6 && worst[1] < 1e-6 && elapsed < 1.0;
}

// ------------------------------------------------------------- criterion 3

bool c3_static_deflections(std::string& detail) {
    const double d1 = hcm::static_deflection(0.072, 0.0205);
    const double d2 = hcm::static_deflection(0.072, 0.2186);
    const double d3 = hcm::static_deflection(0.072, 0.0848);
    detail = fmt("static deflections at 72 g: %.2f / %.2f / %.2f mm vs "
                 "34 / 3.2 / 8.3 mm (tol 0.5 / 0.1 / 0.1)",
                 d1, d2, d3);
    return std::abs(d1 - 34.0) <= 0.5 && std::abs(d2 - 3.2) <= 0.1 &&
           std::abs(d3 - 8.3) <= 0.1;
}

// ------------------------------------------------------------- criterion 4

bool c4_snap_scaling_monotonicity(std::string& detail) {
    const hcm::Material m = ref_material();
    const hcm::RibbonGeometry g = ref_geometry();

    const double t_star = hcm::snap_timescale(g, m);
    const bool window_ok = t_star >= 0.140 && t_star <= 0.160;

    // Scaling laws, bitwise: P_cr ~ l^-2, U_barr ~ D, t* ~ l^2 / t.
    hcm::RibbonGeometry g2l = g;
    g2l.half_length *= 2.0;
    hcm::RibbonGeometry g2t = g;
    g2t.thickness *= 2.0;
    const auto conv = hcm::SectionConvention::PaperLiteral;
    const double p1 = hcm::critical_load(hcm::section_properties(m, g, conv), g);
    const double p2 = hcm::critical_load(hcm::section_properties(m, g2l, conv), g2l);
    const bool scaling_ok =
        p2 == p1 / 4.0 &&
        hcm::energy_barrier(p1, 2.0 * g.locking_displacement) ==
            2.0 * hcm::energy_barrier(p1, g.locking_displacement) &&
        hcm::snap_timescale(g2l, m) == 4.0 * t_star &&
        hcm::snap_timescale(g2t, m) == t_star / 2.0;

    // Default sweep: every node valid, psi_l and U_barr strictly decreasing
    // in l and increasing in D.
    hcm::DesignGrid grid;
    grid.material = m;
    grid.width = g.width;
    grid.thickness = g.thickness;
    const std::vector<hcm::SweepEntry> entries = hcm::sweep(grid);
    const std::size_t nl = grid.l_values().size();
    const std::size_t nd = grid.D_values().size();
    bool grid_ok = entries.size() == nl * nd && nl == 25 && nd == 26;
    for (const auto& e : entries)
        grid_ok = grid_ok && e.point.has_value();
    std::size_t violations = 0;
    if (grid_ok) {
        for (std::size_t il = 0; il < nl; ++il)
            for (std::size_t id = 0; id < nd; ++id) {
                const hcm::DesignPoint& p = *entries[il * nd + id].point;
                if (id + 1 < nd) {
                    const hcm::DesignPoint& up = *entries[il * nd + id + 1].point;
                    violations += !(up.psi_l > p.psi_l) + !(up.U_barr > p.U_barr);
                }
                if (il + 1 < nl) {
                    const hcm::DesignPoint& right = *entries[(il + 1) * nd + id].point;
                    violations += !(right.psi_l < p.psi_l) + !(right.U_barr < p.U_barr);
                }
            }
    }
    detail = fmt("snap timescale %.1f ms in [140, 160]; P_cr~l^-2, U_barr~D, "
                 "t*~l^2/t hold bitwise: %s; default %zu-node sweep monotone "
                 "(%zu violations)",
                 t_star * 1e3, scaling_ok ? "yes" : "NO",
                 entries.size(), violations);
    return window_ok && scaling_ok && grid_ok && violations == 0;
}

// ---------------------------------------------------- criteria 5, 6 and 8

struct SimBattery {
    bool ran = false;
    bool iso_ok = false, swap_ok = false, fit_ok = false, reversed_ok = false;
    bool runtime_ok = false;
    double iso_net_mm = 0.0;
    double swap_sym = 0.0; // |net_fwd + net_rev| / |net_fwd|
    double r_squared = 0.0;
    double reversed_ratio = 0.0;
    double wood_2hz_bl_s = 0.0;
    double max_audit = 0.0;
    double max_runtime_s = 0.0;
    int runs = 0;
};

SimBattery run_sim_battery() {
    SimBattery b;
    const double dt = 1e-4;

    const auto timed_run = [&](const hcm::RobotConfig& cfg,
                               double duration) -> hcm::Trajectory {
        const auto start = Clock::now();
        hcm::Trajectory traj = hcm::run_gait(cfg, duration, dt);
        b.max_runtime_s = std::max(b.max_runtime_s, seconds_since(start));
        b.max_audit = std::max(b.max_audit, traj.max_audit_residual);
        b.runs += 1;
        return traj;
    };

    // (a) isotropic friction: no rectification, ten periods at 2 Hz.
    hcm::RobotConfig iso = hcm::RobotConfig::reference();
    iso.feet = {"isotropic", 0.5, 0.5};
    b.iso_net_mm = std::abs(hcm::net_displacement(timed_run(iso, 5.0))) * 1e3;
    b.iso_ok = b.iso_net_mm < 1.0;

    // (c) wood preset across the frequency band; keep the 2 Hz run for (b),
    // (d) and the order-of-magnitude check.
    const double freqs[] = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    std::vector<double> speeds;
    double net_wood_2hz = 0.0;
    for (double f : freqs) {
        hcm::RobotConfig cfg = hcm::RobotConfig::reference();
        cfg.frequency = f;
        const double duration = std::max(5.0, 4.0 / f);
        const hcm::Trajectory traj = timed_run(cfg, duration);
        const double net = hcm::net_displacement(traj);
        speeds.push_back(net * 1e3 / duration);
        if (f == 2.0) {
            net_wood_2hz = net;
            b.wood_2hz_bl_s = net / duration / cfg.body_length;
        }
    }
    double mf = 0.0, ms = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        mf += freqs[i];
        ms += speeds[i];
    }
    mf /= 6.0;
    ms /= 6.0;
    double sff = 0.0, sfs = 0.0, sss = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        sff += (freqs[i] - mf) * (freqs[i] - mf);
        sfs += (freqs[i] - mf) * (speeds[i] - ms);
        sss += (speeds[i] - ms) * (speeds[i] - ms);
    }
    b.r_squared = sfs * sfs / (sff * sss);
    b.fit_ok = b.r_squared > 0.9;

    // (b) swapped coefficients: the gait mirrors, so the net displacement
    // reverses sign exactly (up to symmetric rounding).
    hcm::RobotConfig swapped = hcm::RobotConfig::reference();
    std::swap(swapped.feet.mu_plastic, swapped.feet.mu_rubber);
    const double net_swap = hcm::net_displacement(timed_run(swapped, 5.0));
    b.swap_sym = std::abs(net_swap + net_wood_2hz) / std::abs(net_wood_2hz);
    b.swap_ok = net_wood_2hz > 0.0 && b.swap_sym < 1e-9;

    // (d) reversed anisotropy: forward motion collapses.
    hcm::RobotConfig reversed = hcm::RobotConfig::reference();
    reversed.feet = hcm::SubstrateFriction::preset("concrete");
    const double net_rev = hcm::net_displacement(timed_run(reversed, 5.0));
    b.reversed_ratio = std::abs(net_rev) / std::abs(net_wood_2hz);
    b.reversed_ok = b.reversed_ratio <= 0.10;

    b.runtime_ok = b.max_runtime_s < 30.0;
    b.ran = true;
    return b;
}

// ------------------------------------------------------------- criterion 7

bool c7_analysis_oracles(std::string& detail) {
    // Exact line: slope recovered to 1e-12 relative.
    hcm::BendingRecord line;
    for (int i = 0; i <= 10; ++i)
        line.samples.push_back({static_cast<double>(i), 0.2186 * i + 0.05});
    const hcm::StiffnessFit fit = hcm::fit_stiffness(line);
    const double slope_rel = std::abs(fit.stiffness - 0.2186) / 0.2186;

    // Triangle curve: trapezoid area is exact for piecewise-linear data.
    hcm::BendingRecord tri;
    tri.samples = {{0.0, 0.0}, {2.5, 0.5}, {5.0, 1.0}, {7.5, 0.5}, {10.0, 0.0}};
    const double area = hcm::barrier_from_curve(tri);
    const bool area_ok = area == 5.0;

    // Linear 313 mm / 1 s trace against a 200.6 mm body.
    hcm::ExternalTrace ramp;
    for (int i = 0; i <= 100; ++i) {
        ramp.t_s.push_back(i * 0.01);
        ramp.x_mm.push_back(313.0 * i * 0.01);
    }
    const hcm::GaitMetrics gm = hcm::gait_metrics(ramp, 0.2006);
    const double bl = gm.speed_bl_s.value_or(0.0);
    const bool bl_ok = std::abs(bl - 313.0 / 200.6) < 1e-9 && std::abs(bl - 1.56) < 5e-3;

    // Hop trace: longest off-ground interval and apex above the threshold.
    hcm::ExternalTrace hop;
    std::vector<double> y;
    for (int i = 0; i <= 200; ++i) {
        hop.t_s.push_back(i * 0.002);
        hop.x_mm.push_back(0.0);
        y.push_back(i >= 50 && i <= 122 ? (i == 86 ? 35.0 : 5.0) : 0.0);
    }
    hop.y_mm = y;
    const hcm::JumpMetrics jm = hcm::jump_metrics(hop, 1.0);
    const bool hop_ok =
        std::abs(jm.air_time_s - 0.146) < 1e-9 && std::abs(jm.apex_height_mm - 34.0) < 1e-9;

    detail = fmt("analysis oracles: line slope rel err %.1e; triangle area %s; "
                 "ramp %.4f BL/s; hop %.0f ms / %.1f mm",
                 slope_rel, area_ok ? "exact" : "INEXACT", bl, jm.air_time_s * 1e3,
                 jm.apex_height_mm);
    return slope_rel < 1e-12 && area_ok && bl_ok && hop_ok;
}

// ------------------------------------------------------------- criterion 9

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CmdResult run_cmd(const std::string& hcm_bin, const std::string& args,
                  const fs::path& scratch) {
    const fs::path out_file = scratch / "stdout.txt";
    const std::string cmd =
        "'" + hcm_bin + "' " + args + " > '" + out_file.string() + "' 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CmdResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    return r;
}

bool c9_cli_determinism(const std::string& hcm_bin, std::string& detail) {
    if (hcm_bin.empty()) {
        detail = "CLI determinism: no binary path given";
        return false;
    }
    const fs::path dir =
        fs::temp_directory_path() / ("hcm_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg = dir / "config.json";
    {
        std::ofstream out(cfg);
        out << R"({
  "material": {"E_MPa": 1730, "nu": 0.4, "rho_s_kg_m3": 1270},
  "geometry": {"l_mm": 129.1, "D_mm": 16, "h_mm": 15, "t_mm": 0.381},
  "sweep": {"l_min_mm": 100, "l_max_mm": 110, "l_step_mm": 5,
            "D_min_mm": 10, "D_max_mm": 12, "D_step_mm": 1},
  "simulation": {"dt_ms": 0.1, "duration_s": 2}
})";
    }
    const std::string base = "--config '" + cfg.string() + "' --out '" +
                             dir.string() + "'";
    bool ok = true;
    std::string mismatch;

    const auto check_rerun = [&](const std::string& args,
                                 const std::vector<std::string>& artifacts,
                                 const std::string& label) {
        const CmdResult first = run_cmd(hcm_bin, args, dir);
        std::vector<std::string> snapshot;
        for (const std::string& a : artifacts)
            snapshot.push_back(slurp(dir / a));
        const CmdResult second = run_cmd(hcm_bin, args, dir);
        bool same = first.exit_code == 0 && second.exit_code == 0 &&
                    first.out == second.out;
        for (std::size_t i = 0; i < artifacts.size(); ++i)
            same = same && slurp(dir / artifacts[i]) == snapshot[i];
        if (!same) {
            ok = false;
            mismatch += (mismatch.empty() ? "" : ", ") + label;
        }
    };

    check_rerun("analyze --json " + base, {}, "analyze");
    check_rerun("sweep --json " + base, {"sweep.csv"}, "sweep");
    check_rerun("simulate " + base, {"trajectory.csv", "metrics.json"}, "simulate");

    fs::remove_all(dir);
    detail = ok ? "CLI determinism: analyze, sweep and simulate are "
                  "byte-identical across reruns"
                : "CLI determinism: outputs differ across reruns (" + mismatch + ")";
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    const std::string hcm_bin = argc > 1 ? argv[1] : "";
    std::printf("acceptance gate: prestressed hair-clip mechanism toolkit\n");

    Report report;
    const auto guarded = [&report](int id, auto&& fn) {
        std::string detail;
        bool ok = false;
        try {
            ok = fn(detail);
        } catch (const std::exception& ex) {
            detail = std::string("unexpected error: ") + ex.what();
        }
        report.line(id, ok, detail);
    };

    guarded(1, [](std::string& d) { return c1_buckling_constant(d); });
    guarded(2, [](std::string& d) { return c2_ode_residual(d); });
    guarded(3, [](std::string& d) { return c3_static_deflections(d); });
    guarded(4, [](std::string& d) { return c4_snap_scaling_monotonicity(d); });

    SimBattery battery;
    guarded(5, [&battery](std::string& d) {
        battery = run_sim_battery();
        d = fmt("gait rectification: isotropic |net| %.3f mm < 1; swapped-mu "
                "asymmetry %.1e < 1e-9; speed-vs-frequency R^2 = %.3f > 0.9; "
                "reversed-anisotropy speed ratio %.3f <= 0.10; slowest run %.1f s",
                battery.iso_net_mm, battery.swap_sym, battery.r_squared,
                battery.reversed_ratio, battery.max_runtime_s);
        return battery.iso_ok && battery.swap_ok && battery.fit_ok &&
               battery.reversed_ok && battery.runtime_ok;
    });

    guarded(6, [&battery](std::string& d) {
        if (!battery.ran) {
            d = "energy audit: no accepted simulation runs";
            return false;
        }
        d = fmt("energy audit: max residual %.3f%% < 1%% over %d runs",
                battery.max_audit * 100.0, battery.runs);
        return battery.max_audit < 0.01;
    });

    guarded(7, [](std::string& d) { return c7_analysis_oracles(d); });

    guarded(8, [&battery](std::string& d) {
        d = fmt("absolute speed, peak tip rate and measured friction "
                "magnitudes are not reproduced exactly (they depend on "
                "hardware parameters outside this model); accepted on the "
                "rectification and audit properties plus this window: "
                "2 Hz wood speed %.3f BL/s in [0.1, 3]",
                battery.wood_2hz_bl_s);
        return battery.ran && battery.wood_2hz_bl_s >= 0.1 &&
               battery.wood_2hz_bl_s <= 3.0;
    });

    guarded(9, [&hcm_bin](std::string& d) { return c9_cli_determinism(hcm_bin, d); });

    std::printf("acceptance: %d/9 criteria passed\n", report.passed);
    return report.failed == 0 ? 0 : 1;
}
