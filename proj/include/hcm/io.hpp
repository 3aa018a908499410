#pragma once

// CSV serialization for trajectories, experiment suites, bending records
// and motion traces.  Readers validate headers and report line numbers in
// errors; writers produce deterministic, locale-independent output.

#include "hcm/analysis.hpp"
#include "hcm/simulation.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hcm {

// Shortest round-trippable representation at the given significant digits
// (printf %g); nan prints as "nan".
std::string format_sig(double value, int digits);

// Header: t_s,x_fore_m,y_fore_m,x_hind_m,y_hind_m,s_m,contact_fore,contact_hind
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
TrajectoryTable read_trajectory_csv(std::istream& is);

// Header: label,freq_hz,substrate,speed_mm_s,speed_bl_s,air_frac,energy_mJ
void write_suite_csv(std::ostream& os, const std::vector<SuiteRow>& rows);
std::vector<SuiteRow> read_suite_csv(std::istream& is);

// Header: disp_mm,load_N
void write_bending_csv(std::ostream& os, const BendingRecord& rec);
BendingRecord read_bending_csv(std::istream& is);

// Header: t_s,x_mm with optional y_mm,psi1_deg,psi2_deg columns.
ExternalTrace read_trace_csv(std::istream& is);

// True when the stream's header line matches the trajectory schema (used
// by the CLI to dispatch metrics input).
bool looks_like_trajectory_header(const std::string& header);

} // namespace hcm
