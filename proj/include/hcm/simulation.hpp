#pragma once

// Planar crawler dynamics: two point bodies at the feet joined by the
// bi-stable spine (fore + rear energy landscapes on one axial coordinate),
// driven by a square-wave servo toggle and rectified by direction-dependent
// Coulomb friction.  Semi-implicit Euler integration with per-channel
// energy bookkeeping.

#include "hcm/mechanics.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hcm {

struct SubstrateFriction {
    std::string name;
    double mu_plastic = 0.0; // coefficient when a foot slides forward (+x)
    double mu_rubber = 0.0;  // coefficient when a foot slides backward

    double anisotropy_ratio() const { return mu_rubber / mu_plastic; }
    void validate() const;
    // Presets: wood, glass, marble, concrete (reversed anisotropy).
    static SubstrateFriction preset(std::string_view name);
    static const std::vector<std::string>& preset_names();
};

enum class ActuationMode { SymmetricGallop, RearOnly };

struct RobotConfig {
    double total_mass = 0.0;        // kg
    double fore_mass_fraction = 0.5;
    double body_length = 0.0;       // L, m (foot spacing in extension)
    double flexion_length = 0.0;    // L_f, m
    EnergyLandscape fore_landscape;
    EnergyLandscape rear_landscape;
    double spine_damping = 0.30;    // c, N*s/m
    double snap_time = 0.0;         // t*, s (servo push window)
    SubstrateFriction feet;
    double fore_normal_share = 0.5; // fraction of the snap kick on the fore foot
    double frequency = 0.0;         // f, Hz
    ActuationMode mode = ActuationMode::SymmetricGallop;
    std::optional<double> servo_energy_limit; // J; must cover the active barrier
    bool actuation_enabled = true;  // false: free dynamics (diagnostics)

    // Contact / regularization constants (documented defaults).
    double contact_stiffness = 1e4;      // N/m
    double contact_damping_ratio = 1.0;
    double stiction_velocity = 1e-3;     // v_eps, m/s
    double kick_gain = 0.80;             // N*s/m: vertical kick per snap rate
    double servo_force_margin = 1.5;     // force headroom over 2*U_barr/stroke

    double stroke() const { return body_length - flexion_length; }
    double fore_mass() const { return total_mass * fore_mass_fraction; }
    double hind_mass() const { return total_mass * (1.0 - fore_mass_fraction); }
    // Barrier of the active landscape sum (both HCMs in SymmetricGallop,
    // rear only in RearOnly).
    double active_barrier() const;
    double active_potential(double s) const;
    double active_potential_slope(double s) const;
    void validate() const;

    // 72 g crawler on wood at 2 Hz with the measured chassis barrier split
    // equally between the two HCMs.
    static RobotConfig reference();
};

struct SimState {
    double time = 0.0;
    double x_fore = 0.0, y_fore = 0.0, vx_fore = 0.0, vy_fore = 0.0;
    double x_hind = 0.0, y_hind = 0.0, vx_hind = 0.0, vy_hind = 0.0;
    double spine = 0.0;      // s = L - (x_fore - x_hind)
    double spine_rate = 0.0; // ds/dt
    bool contact_fore = false;
    bool contact_hind = false;
};

// Work integrals per channel (J), accumulated by step().
struct EnergyLedger {
    double servo_work = 0.0;
    double kick_work = 0.0;
    double friction_loss = 0.0;
    double spine_damping_loss = 0.0;
    double contact_damping_loss = 0.0;
    double initial_energy = 0.0; // mechanical energy of the initial state

    double injected() const { return servo_work + kick_work; }
    double dissipated() const {
        return friction_loss + spine_damping_loss + contact_damping_loss;
    }
};

// Kinetic + gravitational + active landscape + contact spring energy.
double mechanical_energy(const SimState& state, const RobotConfig& config);

// Regularized anisotropic Coulomb friction on one foot:
// F = -N * mu(sign slip) * tanh(slip / v_eps); mu_plastic for forward slip,
// mu_rubber for backward.  Zero when out of contact.
double friction_force(bool in_contact, double normal, const SubstrateFriction& substrate,
                      double slip_velocity, double stiction_velocity = 1e-3);

// Spine axial force F = -dU/ds - c * s_rate for the active landscape.
double spine_force(const RobotConfig& config, double s, double s_rate);

// Square-wave servo schedule: targets alternate flexion (s = stroke) and
// extension (s = 0) every half period, flexion first at t = 0.
struct ToggleEvent {
    double time = 0.0;
    double target = 0.0; // commanded spine coordinate
};
std::vector<ToggleEvent> actuation_schedule(const RobotConfig& config, double duration);

// Servo force at a given time and spine coordinate: a constant push of
// margin * 2 * U_barr / stroke toward the current target, active within the
// snap window t* after the latest toggle and only until the barrier
// midpoint is crossed.
double servo_force(const RobotConfig& config, double time, double s);

// Mirror-symmetric extension rest state: feet at +-L/2, settled to the
// contact-spring equilibrium penetration.
SimState initial_state(const RobotConfig& config);

// One semi-implicit Euler step; accumulates work channels into the ledger
// using time-centered velocities so the energy audit telescopes exactly.
// Throws InstabilityError on non-finite state or when the mechanical energy
// rises more than twice the injected energy above its initial value.
SimState step(const SimState& state, const RobotConfig& config, double dt,
              EnergyLedger& ledger);

struct Trajectory {
    std::vector<SimState> samples; // uniformly spaced, starts at t = 0
    double sample_period = 0.0;    // s (integrator decimation)
    RobotConfig config;
    EnergyLedger energy;
    double max_audit_residual = 0.0; // max |E balance error| / audit scale
    double audit_scale = 0.0;        // max(|E0|, injected, 1 uJ)
};

// Integrates from rest over `duration` (>= 3 actuation periods) with step
// dt (<= t*/20), decimating output to ~1 kHz.
Trajectory run_gait(const RobotConfig& config, double duration, double dt);

// Net displacement of the centre of mass over the run (m).
double net_displacement(const Trajectory& traj);
// Fraction of output samples with both feet off the ground.
double air_fraction(const Trajectory& traj);

struct SuiteCase {
    std::string label;
    RobotConfig config;
    double duration = 5.0;
    double dt = 1e-4;
};

struct SuiteRow {
    std::string label;
    double freq_hz = 0.0;
    std::string substrate;
    double speed_mm_s = 0.0;
    double speed_bl_s = 0.0;
    double air_frac = 0.0;
    double energy_mJ = 0.0;
    std::string error; // empty on success; failed rows keep the suite going
};

std::vector<SuiteRow> experiment_suite(const std::vector<SuiteCase>& cases);

} // namespace hcm
