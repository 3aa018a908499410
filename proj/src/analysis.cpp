#include "hcm/analysis.hpp"

#include "hcm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hcm {
namespace {

constexpr double kGravity = 9.81;

// Longest run of `off` samples: [begin, end) sample indices plus the
// duration measured to the first grounded sample after the run (or the
// final sample when the run reaches the end of the data).
struct OffRun {
    std::size_t begin = 0;
    std::size_t end = 0; // one past the last off sample
    double duration = 0.0;
};

OffRun longest_off_run(const std::vector<double>& t, const std::vector<char>& off) {
    OffRun best;
    std::size_t i = 0;
    const std::size_t n = t.size();
    while (i < n) {
        if (!off[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && off[j])
            ++j;
        const double landing = j < n ? t[j] : t[n - 1];
        const double duration = landing - t[i];
        if (duration > best.duration) {
            best.begin = i;
            best.end = j;
            best.duration = duration;
        }
        i = j;
    }
    return best;
}

double peak_abs_rate(const std::vector<double>& t, const std::vector<double>& v) {
    // Central differences on the interior, one-sided at the ends.
    const std::size_t n = t.size();
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? i : i + 1;
        const double dt = t[hi] - t[lo];
        if (dt > 0.0)
            peak = std::max(peak, std::abs((v[hi] - v[lo]) / dt));
    }
    return peak;
}

void fill_stride_and_bl(GaitMetrics& m, double net_mm, double elapsed,
                        std::optional<double> body_length_m,
                        std::optional<double> period_s) {
    if (body_length_m) {
        if (!(*body_length_m > 0.0))
            throw ValidationError("gait_metrics: body length must be > 0");
        m.speed_bl_s = m.mean_speed_mm_s / (*body_length_m * 1e3);
    } else {
        m.missing.push_back("speed_bl_s");
    }
    if (period_s && *period_s > 0.0) {
        const auto periods = static_cast<long>(std::floor(elapsed / *period_s + 1e-9));
        if (periods >= 1) {
            m.stride_length_mm = net_mm / static_cast<double>(periods);
            return;
        }
    }
    m.missing.push_back("stride_length_mm");
}

} // namespace

void BendingRecord::validate() const {
    if (samples.size() < 5)
        throw ValidationError("BendingRecord: needs at least 5 samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i].first < samples[i - 1].first)
            throw ValidationError("BendingRecord: displacements must be non-decreasing "
                                  "(violated at sample " + std::to_string(i) + ")");
    if (!(span_mm > 0.0))
        throw ValidationError("BendingRecord: span must be > 0");
}

StiffnessFit fit_stiffness(const BendingRecord& rec,
                           std::optional<std::pair<double, double>> region) {
    rec.validate();
    const double d_min = rec.samples.front().first;
    const double d_max = rec.samples.back().first;
    double lo, hi;
    if (region) {
        lo = region->first;
        hi = region->second;
        if (!(lo < hi))
            throw ValidationError("fit_stiffness: empty fit region");
    } else {
        const double range = d_max - d_min;
        lo = d_min + 0.25 * range;
        hi = d_min + 0.75 * range;
    }

    double sx = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (const auto& [d, f] : rec.samples) {
        if (d < lo || d > hi)
            continue;
        sx += d;
        sy += f;
        ++n;
    }
    if (n < 3)
        throw ValidationError("fit_stiffness: fewer than 3 samples in the fit region");
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [d, f] : rec.samples) {
        if (d < lo || d > hi)
            continue;
        sxx += (d - mx) * (d - mx);
        sxy += (d - mx) * (f - my);
        syy += (f - my) * (f - my);
    }
    if (!(sxx > 0.0))
        throw ValidationError("fit_stiffness: zero displacement variance in the region");

    StiffnessFit fit;
    fit.stiffness = sxy / sxx;
    const double sse = std::max(0.0, syy - fit.stiffness * sxy);
    fit.std_error = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
    fit.count = n;
    fit.region_lo = lo;
    fit.region_hi = hi;
    return fit;
}

double barrier_from_curve(const BendingRecord& rec) {
    rec.validate();
    double area = 0.0; // N*mm == mJ
    for (std::size_t i = 1; i < rec.samples.size(); ++i) {
        const auto& [d0, f0] = rec.samples[i - 1];
        const auto& [d1, f1] = rec.samples[i];
        area += 0.5 * (f0 + f1) * (d1 - d0);
    }
    return area;
}

double static_deflection(double mass_kg, double stiffness_n_mm) {
    if (!(stiffness_n_mm > 0.0))
        throw ValidationError("static_deflection: stiffness must be > 0");
    if (!(mass_kg >= 0.0))
        throw ValidationError("static_deflection: mass must be >= 0");
    return mass_kg * kGravity / stiffness_n_mm;
}

void ExternalTrace::validate() const {
    if (t_s.size() < 2)
        throw ValidationError("ExternalTrace: needs at least 2 samples");
    if (x_mm.size() != t_s.size())
        throw ValidationError("ExternalTrace: x channel length mismatch");
    for (std::size_t i = 1; i < t_s.size(); ++i)
        if (!(t_s[i] > t_s[i - 1]))
            throw ValidationError("ExternalTrace: time must be strictly increasing "
                                  "(violated at sample " + std::to_string(i) + ")");
    const auto check = [&](const std::optional<std::vector<double>>& ch, const char* name) {
        if (ch && ch->size() != t_s.size())
            throw ValidationError(std::string("ExternalTrace: ") + name +
                                  " channel length mismatch");
    };
    check(y_mm, "y");
    check(psi1_deg, "psi1");
    check(psi2_deg, "psi2");
}

void TrajectoryTable::validate() const {
    const std::size_t n = t_s.size();
    if (n < 2)
        throw ValidationError("TrajectoryTable: needs at least 2 samples");
    if (x_fore_m.size() != n || y_fore_m.size() != n || x_hind_m.size() != n ||
        y_hind_m.size() != n || s_m.size() != n || contact_fore.size() != n ||
        contact_hind.size() != n)
        throw ValidationError("TrajectoryTable: column length mismatch");
    for (std::size_t i = 1; i < n; ++i)
        if (!(t_s[i] > t_s[i - 1]))
            throw ValidationError("TrajectoryTable: time must be strictly increasing");
}

GaitMetrics gait_metrics(const Trajectory& traj) {
    if (traj.samples.size() < 2)
        throw ValidationError("gait_metrics: trajectory needs at least 2 samples");
    const double elapsed = traj.samples.back().time - traj.samples.front().time;
    const double net_mm = net_displacement(traj) * 1e3;

    GaitMetrics m;
    m.mean_speed_mm_s = net_mm / elapsed;
    m.air_time_fraction = air_fraction(traj);
    fill_stride_and_bl(m, net_mm, elapsed, traj.config.body_length,
                       1.0 / traj.config.frequency);
    m.missing.push_back("peak_tip_angular_velocity_deg_s");
    return m;
}

GaitMetrics gait_metrics(const ExternalTrace& trace, std::optional<double> body_length_m,
                         std::optional<double> period_s) {
    trace.validate();
    const double elapsed = trace.t_s.back() - trace.t_s.front();
    const double net_mm = trace.x_mm.back() - trace.x_mm.front();

    GaitMetrics m;
    m.mean_speed_mm_s = net_mm / elapsed;
    fill_stride_and_bl(m, net_mm, elapsed, body_length_m, period_s);

    if (trace.y_mm) {
        const double baseline = *std::min_element(trace.y_mm->begin(), trace.y_mm->end());
        std::size_t air = 0;
        for (double y : *trace.y_mm)
            air += y > baseline + 1.0; // 1 mm above the resting baseline
        m.air_time_fraction =
            static_cast<double>(air) / static_cast<double>(trace.y_mm->size());
    } else {
        m.missing.push_back("air_time_fraction");
    }

    double peak = 0.0;
    bool have_angles = false;
    for (const auto* ch : {&trace.psi1_deg, &trace.psi2_deg}) {
        if (*ch) {
            peak = std::max(peak, peak_abs_rate(trace.t_s, **ch));
            have_angles = true;
        }
    }
    if (have_angles)
        m.peak_tip_angular_velocity_deg_s = peak;
    else
        m.missing.push_back("peak_tip_angular_velocity_deg_s");
    return m;
}

GaitMetrics gait_metrics(const TrajectoryTable& table, std::optional<double> body_length_m,
                         std::optional<double> period_s) {
    table.validate();
    const std::size_t n = table.t_s.size();
    const double elapsed = table.t_s.back() - table.t_s.front();
    // No mass metadata in the file format: even split assumed.
    const double net_mm = 1e3 * (0.5 * (table.x_fore_m.back() + table.x_hind_m.back()) -
                                 0.5 * (table.x_fore_m.front() + table.x_hind_m.front()));

    GaitMetrics m;
    m.mean_speed_mm_s = net_mm / elapsed;
    fill_stride_and_bl(m, net_mm, elapsed, body_length_m, period_s);
    std::size_t air = 0;
    for (std::size_t i = 0; i < n; ++i)
        air += !table.contact_fore[i] && !table.contact_hind[i];
    m.air_time_fraction = static_cast<double>(air) / static_cast<double>(n);
    m.missing.push_back("peak_tip_angular_velocity_deg_s");
    return m;
}

JumpMetrics jump_metrics(const Trajectory& traj) {
    const std::size_t n = traj.samples.size();
    std::vector<double> t(n);
    std::vector<char> off(n);
    std::vector<double> clearance(n);
    for (std::size_t i = 0; i < n; ++i) {
        const SimState& st = traj.samples[i];
        t[i] = st.time;
        off[i] = !st.contact_fore && !st.contact_hind;
        clearance[i] = std::min(st.y_fore, st.y_hind) * 1e3;
    }
    const OffRun run = longest_off_run(t, off);
    JumpMetrics jm;
    jm.air_time_s = run.duration;
    for (std::size_t i = run.begin; i < run.end; ++i)
        jm.apex_height_mm = std::max(jm.apex_height_mm, clearance[i]);
    return jm;
}

JumpMetrics jump_metrics(const ExternalTrace& trace, double threshold_mm) {
    trace.validate();
    if (!trace.y_mm)
        throw ValidationError("jump_metrics: trace has no y channel");
    const std::size_t n = trace.t_s.size();
    std::vector<char> off(n);
    for (std::size_t i = 0; i < n; ++i)
        off[i] = (*trace.y_mm)[i] > threshold_mm;
    const OffRun run = longest_off_run(trace.t_s, off);
    JumpMetrics jm;
    jm.air_time_s = run.duration;
    for (std::size_t i = run.begin; i < run.end; ++i)
        jm.apex_height_mm =
            std::max(jm.apex_height_mm, (*trace.y_mm)[i] - threshold_mm);
    return jm;
}

JumpMetrics jump_metrics(const TrajectoryTable& table) {
    table.validate();
    const std::size_t n = table.t_s.size();
    std::vector<char> off(n);
    std::vector<double> clearance(n);
    for (std::size_t i = 0; i < n; ++i) {
        off[i] = !table.contact_fore[i] && !table.contact_hind[i];
        clearance[i] = std::min(table.y_fore_m[i], table.y_hind_m[i]) * 1e3;
    }
    const OffRun run = longest_off_run(table.t_s, off);
    JumpMetrics jm;
    jm.air_time_s = run.duration;
    for (std::size_t i = run.begin; i < run.end; ++i)
        jm.apex_height_mm = std::max(jm.apex_height_mm, clearance[i]);
    return jm;
}

} // namespace hcm
