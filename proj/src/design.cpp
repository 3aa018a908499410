#include "hcm/design.hpp"

#include "hcm/errors.hpp"
#include "hcm/io.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

namespace hcm {
namespace {

std::vector<double> axis_values(double lo, double hi, double step) {
    // Tolerant count so 0.025/0.001 style divisions land on 26, not 25.
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        v.push_back(lo + i * step);
    return v;
}

DesignPoint evaluate_point(const DesignGrid& grid, double l, double D) {
    RibbonGeometry geo;
    geo.half_length = l;
    geo.locking_displacement = D;
    geo.width = grid.width;
    geo.thickness = grid.thickness;
    const BucklingSolution sol = solve_buckling(grid.material, geo, grid.convention);
    DesignPoint p;
    p.l = l;
    p.D = D;
    p.psi_l = sol.tip_angle;
    p.U_barr = energy_barrier(sol.critical_load, D);
    p.P_cr = sol.critical_load;
    p.t_star = snap_timescale(geo, grid.material);
    if (!(std::isfinite(p.psi_l) && p.psi_l > 0.0) || !(p.U_barr > 0.0) ||
        !(p.P_cr > 0.0) || !(p.t_star > 0.0))
        throw NumericalError("design point outputs must be finite and positive");
    return p;
}

// Strictly-better comparison with the documented tie-break.
bool improves(const DesignObjective& obj, const DesignPoint& cand, bool have_best,
              double best_score, const DesignPoint& best) {
    if (!have_best)
        return true;
    const double s = obj.score(cand);
    if (s > best_score)
        return true;
    if (s < best_score)
        return false;
    if (cand.l < best.l)
        return true;
    return cand.l == best.l && cand.D < best.D;
}

} // namespace

void DesignGrid::validate() const {
    material.validate();
    if (!(width > 0.0) || !(thickness > 0.0) || !(thickness < width))
        throw ValidationError("DesignGrid: requires 0 < t < h");
    if (!(l_step > 0.0) || !(D_step > 0.0))
        throw ValidationError("DesignGrid: steps must be > 0");
    if (!(l_min > 0.0) || !(D_min > 0.0))
        throw ValidationError("DesignGrid: ranges must be positive");
    if (l_max < l_min || D_max < D_min)
        throw ValidationError("DesignGrid: range max must be >= min");
}

std::vector<double> DesignGrid::l_values() const { return axis_values(l_min, l_max, l_step); }
std::vector<double> DesignGrid::D_values() const { return axis_values(D_min, D_max, D_step); }

std::vector<SweepEntry> sweep(const DesignGrid& grid) {
    grid.validate();
    const std::vector<double> ls = grid.l_values();
    const std::vector<double> ds = grid.D_values();
    std::vector<SweepEntry> out;
    out.reserve(ls.size() * ds.size());
    for (double l : ls) {
        for (double D : ds) {
            SweepEntry e;
            e.l = l;
            e.D = D;
            try {
                e.point = evaluate_point(grid, l, D);
            } catch (const std::exception& ex) {
                e.error = ex.what();
            }
            out.push_back(std::move(e));
        }
    }
    return out;
}

void DesignObjective::validate() const {
    if (!(barrier_budget > 0.0))
        throw ValidationError("DesignObjective: barrier budget must be > 0");
    if (target == ObjectiveTarget::WeightedSum) {
        if (weight_tip < 0.0 || weight_barrier < 0.0 ||
            (weight_tip == 0.0 && weight_barrier == 0.0))
            throw ValidationError(
                "DesignObjective: weights must be >= 0 and not both zero");
    }
    const auto check_bounds = [](const std::optional<std::pair<double, double>>& b,
                                 const char* name) {
        if (b && !(b->first <= b->second))
            throw ValidationError(std::string("DesignObjective: empty ") + name + " bounds");
    };
    check_bounds(l_bounds, "l");
    check_bounds(D_bounds, "D");
}

double DesignObjective::score(const DesignPoint& p) const {
    switch (target) {
    case ObjectiveTarget::MaximizeTipAngle: return p.psi_l;
    case ObjectiveTarget::MaximizeBarrier: return p.U_barr;
    case ObjectiveTarget::WeightedSum: return weight_tip * p.psi_l + weight_barrier * p.U_barr;
    }
    throw ValidationError("DesignObjective: unknown target");
}

bool DesignObjective::feasible(const DesignPoint& p) const {
    if (p.U_barr > barrier_budget)
        return false;
    if (l_bounds && (p.l < l_bounds->first || p.l > l_bounds->second))
        return false;
    if (D_bounds && (p.D < D_bounds->first || p.D > D_bounds->second))
        return false;
    return true;
}

DesignPoint optimize(const DesignObjective& objective, const DesignGrid& grid,
                     int refine_levels) {
    objective.validate();
    grid.validate();
    if (refine_levels < 3)
        throw ValidationError("optimize: at least 3 refinement levels required");

    bool have_best = false;
    DesignPoint best;
    double best_score = 0.0;
    for (const SweepEntry& e : sweep(grid)) {
        if (!e.point || !objective.feasible(*e.point))
            continue;
        if (improves(objective, *e.point, have_best, best_score, best)) {
            best = *e.point;
            best_score = objective.score(best);
            have_best = true;
        }
    }
    if (!have_best)
        throw InfeasibleError("optimize: no grid point satisfies the constraints");

    const auto clamp_axis = [](double v, double lo, double hi,
                               const std::optional<std::pair<double, double>>& b) {
        if (b) {
            lo = std::max(lo, b->first);
            hi = std::min(hi, b->second);
        }
        return std::clamp(v, lo, hi);
    };

    for (int level = 1; level <= refine_levels; ++level) {
        const double half_l = grid.l_step / static_cast<double>(1 << level);
        const double half_d = grid.D_step / static_cast<double>(1 << level);
        for (int i = -2; i <= 2; ++i) {
            for (int j = -2; j <= 2; ++j) {
                const double l = clamp_axis(best.l + i * 0.5 * half_l, grid.l_min,
                                            grid.l_max, objective.l_bounds);
                const double D = clamp_axis(best.D + j * 0.5 * half_d, grid.D_min,
                                            grid.D_max, objective.D_bounds);
                DesignPoint cand;
                try {
                    cand = evaluate_point(grid, l, D);
                } catch (const std::exception&) {
                    continue; // refinement skips invalid candidates
                }
                if (!objective.feasible(cand))
                    continue;
                if (improves(objective, cand, have_best, best_score, best)) {
                    best = cand;
                    best_score = objective.score(best);
                }
            }
        }
    }
    return best;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries) {
    os << "l_mm,D_mm,psi_l_rad,U_barr_mJ,P_cr_N,t_star_ms\n";
    for (const SweepEntry& e : entries) {
        const double nan = std::nan("");
        const DesignPoint* p = e.point ? &*e.point : nullptr;
        os << format_sig(e.l * 1e3, 6) << ',' << format_sig(e.D * 1e3, 6) << ','
           << format_sig(p ? p->psi_l : nan, 6) << ','
           << format_sig(p ? p->U_barr * 1e3 : nan, 6) << ','
           << format_sig(p ? p->P_cr : nan, 6) << ','
           << format_sig(p ? p->t_star * 1e3 : nan, 6) << '\n';
    }
}

} // namespace hcm
