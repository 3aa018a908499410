#pragma once

// Prestressed-ribbon (hair-clip) mechanics: lateral-torsional buckling of a
// clamped thin ribbon under an axial tip load, the resulting bi-stable
// energy barrier, and the snap-through timescale.  All quantities are SI
// (m, N, J, kg, s); unit conversion belongs to the CLI boundary.

namespace hcm {

struct Material {
    double youngs_modulus = 0.0; // E, Pa
    double poisson_ratio = 0.0;  // nu
    double shear_modulus = 0.0;  // G, Pa
    double density = 0.0;        // rho_s, kg/m^3

    // Derives G = E / (2(1+nu)).
    static Material isotropic(double youngs_modulus, double poisson_ratio, double density);
    void validate() const;
};

struct RibbonGeometry {
    double half_length = 0.0;          // l, m (clamp to loaded tip)
    double locking_displacement = 0.0; // D, m (travel between the stable states)
    double width = 0.0;                // h, m (ribbon width)
    double thickness = 0.0;            // t, m (sheet thickness)

    void validate() const;
};

// Which flexural rigidity enters the buckling problem.  PaperLiteral uses
// E*h^3*t/12 (the formula as printed in the source analysis); WeakAxis uses
// the standard thin-strip weak axis E*h*t^3/12.  Torsional rigidity is
// G*h*t^3/3 under both.  Neither choice reproduces the published reference
// outputs exactly; see README and the analyze report, which show both.
enum class SectionConvention { PaperLiteral, WeakAxis };

struct SectionProperties {
    double bending_stiffness = 0.0;  // EI_eta, N*m^2
    double torsional_rigidity = 0.0; // C, N*m^2
    SectionConvention convention = SectionConvention::PaperLiteral;
};

SectionProperties section_properties(const Material& mat, const RibbonGeometry& geo,
                                     SectionConvention convention);

// Critical axial load P_cr = K * sqrt(EI_eta * C) / l^2 where K is twice
// the first positive zero of J_{1/4} (~5.5618, computed, not hard-coded).
double critical_load(const SectionProperties& section, const RibbonGeometry& geo);

// Mode amplitude A1 fixed by energy conservation: the elastic strain energy
// of the buckled mode, (1/2) * integral of [ (P_cr^2/EI_eta)(l-z)^2 phi^2
// + C phi'^2 ] dz, equals the locking work P_cr * D.
double amplitude_closure(const SectionProperties& section, const RibbonGeometry& geo);

struct BucklingSolution {
    double critical_load = 0.0;   // P_cr, N
    double amplitude = 0.0;       // A1, rad * m^(-1/2)
    double tip_angle = 0.0;       // psi_l, rad
    double mode_wavenumber = 0.0; // gamma = P_cr / sqrt(EI_eta*C), 1/m^2
    RibbonGeometry geometry;
    SectionProperties section;
};

BucklingSolution solve_buckling(const Material& mat, const RibbonGeometry& geo,
                                SectionConvention convention);

// Lateral rotation angle phi(z) = A1 * sqrt(l-z) * J_{1/4}(gamma*(l-z)^2/2)
// for z in [0, l); throws outside that interval.
double mode_shape(const BucklingSolution& sol, double z);

// Tip bending angle psi_l = (P_cr/EI_eta) * integral_0^l (l-z) phi(z) dz,
// by adaptive quadrature at relative tolerance 1e-8.
double tip_angle(const BucklingSolution& sol);

// Snap energy barrier U_barr = 3 * P_cr * D.
double energy_barrier(double critical_load, double locking_displacement);

// Snap-through timescale t* = (2l)^2 / (t * sqrt(E/rho_s)).
double snap_timescale(const RibbonGeometry& geo, const Material& mat);

// Symmetric quartic double-well potential over the spine coordinate:
// U(s) = 16 * U_barr * s^2 (s - stroke)^2 / stroke^4.  Wells at s = 0
// (extension) and s = stroke (flexion), barrier U_barr at s = stroke/2.
// Outside [0, stroke] the same polynomial continues and is steeply
// restoring, which doubles as the clamp penalty.
class EnergyLandscape {
public:
    EnergyLandscape() = default;
    EnergyLandscape(double barrier, double stroke);

    double barrier() const { return barrier_; }
    double stroke() const { return stroke_; }
    double value(double s) const;
    double slope(double s) const; // dU/ds

private:
    double barrier_ = 0.0; // J
    double stroke_ = 0.0;  // m
};

EnergyLandscape build_landscape(double barrier, double stroke);

} // namespace hcm
