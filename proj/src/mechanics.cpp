#include "hcm/mechanics.hpp"

#include "hcm/bessel.hpp"
#include "hcm/errors.hpp"
#include "hcm/quadrature.hpp"

#include <cmath>
#include <string>

namespace hcm {
namespace {

constexpr double kQuadRelTol = 1e-8;

// Twist mode at unit amplitude as a function of the tip distance s = l - z:
// phihat(s) = sqrt(s) * J_{1/4}(gamma * s^2 / 2).
double mode_unit(double gamma, double s) {
    return std::sqrt(s) * bessel_j_quarter(0.5 * gamma * s * s);
}

// d(phihat)/ds, via d/du [u^nu J_nu(u)] = u^nu J_{nu-1}(u) with
// u = gamma s^2/2:  phihat' = gamma * s * (2/gamma)^{1/4} u^{1/4} J_{-3/4}(u).
// Finite as s -> 0 even though J_{-3/4} diverges there.
double mode_unit_slope(double gamma, double s) {
    const double u = 0.5 * gamma * s * s;
    return gamma * s * std::pow(2.0 / gamma, 0.25) * std::pow(u, 0.25) *
           bessel_j_neg_three_quarter(u);
}

} // namespace

Material Material::isotropic(double youngs_modulus, double poisson_ratio, double density) {
    Material m;
    m.youngs_modulus = youngs_modulus;
    m.poisson_ratio = poisson_ratio;
    m.shear_modulus = youngs_modulus / (2.0 * (1.0 + poisson_ratio));
    m.density = density;
    m.validate();
    return m;
}

void Material::validate() const {
    if (!(youngs_modulus > 0.0))
        throw ValidationError("Material: Young's modulus must be > 0");
    if (!(poisson_ratio > 0.0) || !(poisson_ratio < 0.5))
        throw ValidationError("Material: Poisson ratio must lie in (0, 0.5)");
    if (!(shear_modulus > 0.0))
        throw ValidationError("Material: shear modulus must be > 0");
    if (!(density > 0.0))
        throw ValidationError("Material: density must be > 0");
}

void RibbonGeometry::validate() const {
    if (!(half_length > 0.0) || !(locking_displacement > 0.0) || !(width > 0.0) ||
        !(thickness > 0.0))
        throw ValidationError("RibbonGeometry: all dimensions must be > 0");
    if (!(thickness < width && width < 2.0 * half_length))
        throw ValidationError("RibbonGeometry: thin-ribbon regime requires t < h < 2l");
}

SectionProperties section_properties(const Material& mat, const RibbonGeometry& geo,
                                     SectionConvention convention) {
    mat.validate();
    geo.validate();
    const double h = geo.width;
    const double t = geo.thickness;
    SectionProperties s;
    s.convention = convention;
    s.bending_stiffness = convention == SectionConvention::PaperLiteral
                              ? mat.youngs_modulus * h * h * h * t / 12.0
                              : mat.youngs_modulus * h * t * t * t / 12.0;
    s.torsional_rigidity = mat.shear_modulus * h * t * t * t / 3.0;
    return s;
}

double critical_load(const SectionProperties& section, const RibbonGeometry& geo) {
    geo.validate();
    if (!(section.bending_stiffness > 0.0) || !(section.torsional_rigidity > 0.0))
        throw ValidationError("critical_load: section rigidities must be > 0");
    const double l2 = geo.half_length * geo.half_length;
    const double root = std::sqrt(section.bending_stiffness * section.torsional_rigidity);
    return (buckling_mode_constant() * root) / l2;
}

double amplitude_closure(const SectionProperties& section, const RibbonGeometry& geo) {
    const double p = critical_load(section, geo);
    const double l = geo.half_length;
    const double ei = section.bending_stiffness;
    const double c = section.torsional_rigidity;
    const double gamma = p / std::sqrt(ei * c);

    // Strain energy of the unit-amplitude mode.
    const double bend = integrate(
        [&](double s) {
            const double phi = mode_unit(gamma, s);
            return s * s * phi * phi;
        },
        0.0, l, kQuadRelTol).value * (0.5 * p * p / ei);
    const double twist = integrate(
        [&](double s) {
            const double dphi = mode_unit_slope(gamma, s);
            return dphi * dphi;
        },
        0.0, l, kQuadRelTol).value * (0.5 * c);

    const double unit_energy = bend + twist;
    if (!(unit_energy > 0.0))
        throw NumericalError("amplitude_closure: degenerate mode energy");
    return std::sqrt(p * geo.locking_displacement / unit_energy);
}

BucklingSolution solve_buckling(const Material& mat, const RibbonGeometry& geo,
                                SectionConvention convention) {
    BucklingSolution sol;
    sol.geometry = geo;
    sol.section = section_properties(mat, geo, convention);
    sol.critical_load = critical_load(sol.section, geo);
    sol.mode_wavenumber = sol.critical_load /
        std::sqrt(sol.section.bending_stiffness * sol.section.torsional_rigidity);
    sol.amplitude = amplitude_closure(sol.section, geo);
    sol.tip_angle = tip_angle(sol);
    return sol;
}

double mode_shape(const BucklingSolution& sol, double z) {
    const double l = sol.geometry.half_length;
    if (!(z >= 0.0) || !(z < l))
        throw ValidationError("mode_shape: z must lie in [0, l), got " + std::to_string(z));
    const double s = l - z;
    return sol.amplitude * mode_unit(sol.mode_wavenumber, s);
}

double tip_angle(const BucklingSolution& sol) {
    if (sol.amplitude == 0.0)
        throw ValidationError("tip_angle: solution has no amplitude set");
    const double gamma = sol.mode_wavenumber;
    const double moment_arm_integral = integrate(
        [&](double s) { return s * mode_unit(gamma, s); },
        0.0, sol.geometry.half_length, kQuadRelTol).value;
    return sol.critical_load / sol.section.bending_stiffness * sol.amplitude *
           moment_arm_integral;
}

double energy_barrier(double critical_load, double locking_displacement) {
    if (!(critical_load > 0.0) || !(locking_displacement > 0.0))
        throw ValidationError("energy_barrier: P_cr and D must be > 0");
    return (3.0 * critical_load) * locking_displacement;
}

double snap_timescale(const RibbonGeometry& geo, const Material& mat) {
    geo.validate();
    mat.validate();
    const double span = 2.0 * geo.half_length;
    const double wave_speed = std::sqrt(mat.youngs_modulus / mat.density);
    return (span * span) / (geo.thickness * wave_speed);
}

EnergyLandscape::EnergyLandscape(double barrier, double stroke)
    : barrier_(barrier), stroke_(stroke) {
    if (!(barrier > 0.0))
        throw ValidationError("EnergyLandscape: barrier must be > 0");
    if (!(stroke > 0.0))
        throw ValidationError("EnergyLandscape: stroke must be > 0");
}

double EnergyLandscape::value(double s) const {
    const double d = stroke_;
    const double w = s * (s - d);
    return 16.0 * barrier_ * w * w / (d * d * d * d);
}

double EnergyLandscape::slope(double s) const {
    const double d = stroke_;
    return 32.0 * barrier_ * s * (s - d) * (2.0 * s - d) / (d * d * d * d);
}

EnergyLandscape build_landscape(double barrier, double stroke) {
    return EnergyLandscape(barrier, stroke);
}

} // namespace hcm
