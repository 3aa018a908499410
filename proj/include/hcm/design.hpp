#pragma once

// (l, D) design-space exploration: grid sweeps of the buckling model and a
// budget-constrained coarse-to-fine optimizer.

#include "hcm/mechanics.hpp"

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace hcm {

struct DesignGrid {
    double l_min = 0.080, l_max = 0.200, l_step = 0.005; // m
    double D_min = 0.005, D_max = 0.030, D_step = 0.001; // m
    Material material;
    double width = 0.0;     // h, m (fixed across the grid)
    double thickness = 0.0; // t, m
    SectionConvention convention = SectionConvention::PaperLiteral;

    // Degenerate axes (min == max) are allowed and yield a single row or
    // column; steps must be positive and min <= max.
    void validate() const;
    std::vector<double> l_values() const;
    std::vector<double> D_values() const;
};

struct DesignPoint {
    double l = 0.0;      // m
    double D = 0.0;      // m
    double psi_l = 0.0;  // rad
    double U_barr = 0.0; // J
    double P_cr = 0.0;   // N
    double t_star = 0.0; // s
};

// One grid node: either a computed point or an explicit error record.
struct SweepEntry {
    double l = 0.0;
    double D = 0.0;
    std::optional<DesignPoint> point;
    std::string error; // empty on success
};

// Evaluates every grid node in row-major order (l outer, D inner).
// Per-node failures become error entries; the sweep never skips a node.
std::vector<SweepEntry> sweep(const DesignGrid& grid);

enum class ObjectiveTarget { MaximizeTipAngle, MaximizeBarrier, WeightedSum };

struct DesignObjective {
    ObjectiveTarget target = ObjectiveTarget::MaximizeTipAngle;
    double weight_tip = 0.0;     // WeightedSum: weight on psi_l (1/rad)
    double weight_barrier = 0.0; // WeightedSum: weight on U_barr (1/J)
    double barrier_budget = std::numeric_limits<double>::infinity(); // U_barr <= budget, J
    std::optional<std::pair<double, double>> l_bounds; // m, inclusive
    std::optional<std::pair<double, double>> D_bounds; // m, inclusive

    void validate() const;
    double score(const DesignPoint& p) const;
    bool feasible(const DesignPoint& p) const;
};

// Coarse grid scan, then `refine_levels` rounds of local 5x5 refinement in
// a search box that halves per level, clamped to the grid and the bounds.
// Ties break toward smaller l, then smaller D.  Throws InfeasibleError when
// no grid node is feasible.
DesignPoint optimize(const DesignObjective& objective, const DesignGrid& grid,
                     int refine_levels = 3);

// CSV with header l_mm,D_mm,psi_l_rad,U_barr_mJ,P_cr_N,t_star_ms, one row
// per grid node, 6 significant digits; failed nodes carry nan outputs.
void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries);

} // namespace hcm
