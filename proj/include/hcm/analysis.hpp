#pragma once

// Experiment-data reduction: three-point-bending stiffness fits and
// curve-area barriers, static deflections, and gait/jump metrics from
// simulator trajectories or external motion traces.

#include "hcm/simulation.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hcm {

struct BendingRecord {
    // (displacement mm, load N), displacements non-decreasing.
    std::vector<std::pair<double, double>> samples;
    double span_mm = 180.0; // support span metadata

    void validate() const; // >= 5 samples, ordered displacements
};

struct StiffnessFit {
    double stiffness = 0.0;  // K, N/mm
    double std_error = 0.0;  // standard error of the slope, N/mm
    std::size_t count = 0;   // samples inside the fit region
    double region_lo = 0.0;  // mm
    double region_hi = 0.0;  // mm
};

// Least-squares slope of load vs displacement over `region` (inclusive,
// mm); default region is the central 50% of the displacement range.
StiffnessFit fit_stiffness(const BendingRecord& rec,
                           std::optional<std::pair<double, double>> region = {});

// Trapezoidal area under the load-displacement curve; N*mm == mJ.
double barrier_from_curve(const BendingRecord& rec);

// Static deflection m*g/K in mm for stiffness K in N/mm, g = 9.81.
double static_deflection(double mass_kg, double stiffness_n_mm);

struct GaitMetrics {
    double mean_speed_mm_s = 0.0;
    std::optional<double> speed_bl_s;
    std::optional<double> stride_length_mm;
    double air_time_fraction = 0.0;
    std::optional<double> peak_tip_angular_velocity_deg_s;
    std::vector<std::string> missing; // metrics unavailable from the input
};

struct JumpMetrics {
    double air_time_s = 0.0;
    double apex_height_mm = 0.0;
};

// External motion trace (units as in the column names).
struct ExternalTrace {
    std::vector<double> t_s;
    std::vector<double> x_mm;
    std::optional<std::vector<double>> y_mm;
    std::optional<std::vector<double>> psi1_deg;
    std::optional<std::vector<double>> psi2_deg;

    void validate() const; // >= 2 samples, strictly increasing time
};

// Column form of a simulator trajectory CSV (see io.hpp).
struct TrajectoryTable {
    std::vector<double> t_s;
    std::vector<double> x_fore_m, y_fore_m, x_hind_m, y_hind_m, s_m;
    std::vector<bool> contact_fore, contact_hind;

    void validate() const;
};

GaitMetrics gait_metrics(const Trajectory& traj);
// body_length in m enables BL/s; period_s enables stride segmentation.
GaitMetrics gait_metrics(const ExternalTrace& trace, std::optional<double> body_length_m,
                         std::optional<double> period_s = {});
// File-based trajectories carry no mass split; the centre of mass assumes
// an even split.
GaitMetrics gait_metrics(const TrajectoryTable& table, std::optional<double> body_length_m,
                         std::optional<double> period_s = {});

// Longest contiguous off-ground interval.  For simulator data the contact
// flags are authoritative; traces use y > threshold.  Heights are measured
// above the threshold (above ground for simulator data).
JumpMetrics jump_metrics(const Trajectory& traj);
JumpMetrics jump_metrics(const ExternalTrace& trace, double threshold_mm);
JumpMetrics jump_metrics(const TrajectoryTable& table);

} // namespace hcm
