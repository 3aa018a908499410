#include "hcm/simulation.hpp"

#include "hcm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hcm {
namespace {

constexpr double kGravity = 9.81;

double toggle_target(const RobotConfig& config, double time) {
    // Half-period index; the epsilon keeps boundary steps on the side the
    // accumulated time t = n*dt actually belongs to.
    const double half = 0.5 / config.frequency;
    const int k = static_cast<int>(std::floor(time / half + 1e-12));
    return k % 2 == 0 ? config.stroke() : 0.0;
}

double last_toggle_time(const RobotConfig& config, double time) {
    const double half = 0.5 / config.frequency;
    const int k = static_cast<int>(std::floor(time / half + 1e-12));
    return k * half;
}

} // namespace

void SubstrateFriction::validate() const {
    if (!(mu_plastic > 0.0) || !(mu_rubber > 0.0))
        throw ValidationError("SubstrateFriction: coefficients must be > 0");
}

SubstrateFriction SubstrateFriction::preset(std::string_view name) {
    SubstrateFriction s;
    s.name = std::string(name);
    if (name == "wood") {
        s.mu_plastic = 0.25;
        s.mu_rubber = 0.80;
    } else if (name == "glass") {
        s.mu_plastic = 0.20;
        s.mu_rubber = 0.65;
    } else if (name == "marble") {
        s.mu_plastic = 0.30;
        s.mu_rubber = 0.75;
    } else if (name == "concrete") {
        // Rough substrate: anisotropy reversed, forward slip is the
        // expensive direction, so rectification stalls.
        s.mu_plastic = 0.60;
        s.mu_rubber = 0.55;
    } else {
        throw ValidationError("SubstrateFriction: unknown preset '" + s.name + "'");
    }
    return s;
}

const std::vector<std::string>& SubstrateFriction::preset_names() {
    static const std::vector<std::string> names = {"wood", "glass", "marble", "concrete"};
    return names;
}

double RobotConfig::active_barrier() const {
    return mode == ActuationMode::SymmetricGallop
               ? fore_landscape.barrier() + rear_landscape.barrier()
               : rear_landscape.barrier();
}

double RobotConfig::active_potential(double s) const {
    return mode == ActuationMode::SymmetricGallop
               ? fore_landscape.value(s) + rear_landscape.value(s)
               : rear_landscape.value(s);
}

double RobotConfig::active_potential_slope(double s) const {
    return mode == ActuationMode::SymmetricGallop
               ? fore_landscape.slope(s) + rear_landscape.slope(s)
               : rear_landscape.slope(s);
}

void RobotConfig::validate() const {
    if (!(total_mass > 0.0))
        throw ValidationError("RobotConfig: total mass must be > 0");
    if (!(fore_mass_fraction > 0.0) || !(fore_mass_fraction < 1.0))
        throw ValidationError("RobotConfig: fore mass fraction must lie in (0, 1)");
    if (!(flexion_length > 0.0) || !(flexion_length < body_length))
        throw ValidationError("RobotConfig: requires 0 < L_f < L");
    if (!(frequency > 0.0))
        throw ValidationError("RobotConfig: actuation frequency must be > 0");
    if (spine_damping < 0.0)
        throw ValidationError("RobotConfig: spine damping must be >= 0");
    if (!(snap_time > 0.0))
        throw ValidationError("RobotConfig: snap time must be > 0");
    if (!(fore_landscape.barrier() > 0.0) || !(rear_landscape.barrier() > 0.0))
        throw ValidationError("RobotConfig: landscapes must be configured");
    const double d = stroke();
    if (std::abs(fore_landscape.stroke() - d) > 1e-9 * body_length ||
        std::abs(rear_landscape.stroke() - d) > 1e-9 * body_length)
        throw ValidationError("RobotConfig: landscape strokes must equal L - L_f");
    feet.validate();
    if (!(fore_normal_share >= 0.0) || !(fore_normal_share <= 1.0))
        throw ValidationError("RobotConfig: fore normal share must lie in [0, 1]");
    if (!(contact_stiffness > 0.0) || contact_damping_ratio < 0.0)
        throw ValidationError("RobotConfig: invalid contact parameters");
    if (!(stiction_velocity > 0.0))
        throw ValidationError("RobotConfig: stiction velocity must be > 0");
    if (kick_gain < 0.0 || !(servo_force_margin > 0.0))
        throw ValidationError("RobotConfig: invalid actuation gains");
    if (servo_energy_limit && *servo_energy_limit < active_barrier())
        throw ValidationError("RobotConfig: servo energy limit " +
                              std::to_string(*servo_energy_limit * 1e3) +
                              " mJ cannot overcome the active barrier " +
                              std::to_string(active_barrier() * 1e3) + " mJ");
}

RobotConfig RobotConfig::reference() {
    RobotConfig c;
    c.total_mass = 0.072;
    c.fore_mass_fraction = 0.5;
    c.body_length = 0.2006;
    c.flexion_length = 0.1765;
    // Measured chassis barrier 43.4 mJ split equally between the two HCMs.
    c.fore_landscape = EnergyLandscape(0.0217, c.stroke());
    c.rear_landscape = EnergyLandscape(0.0217, c.stroke());
    c.spine_damping = 0.30;
    c.snap_time = 0.15;
    c.feet = SubstrateFriction::preset("wood");
    c.fore_normal_share = 0.5;
    c.frequency = 2.0;
    c.mode = ActuationMode::SymmetricGallop;
    return c;
}

double mechanical_energy(const SimState& st, const RobotConfig& config) {
    const double mf = config.fore_mass();
    const double mh = config.hind_mass();
    const double kc = config.contact_stiffness;
    const double ke = 0.5 * (mf * (st.vx_fore * st.vx_fore + st.vy_fore * st.vy_fore) +
                             mh * (st.vx_hind * st.vx_hind + st.vy_hind * st.vy_hind));
    const double pe_grav = mf * kGravity * st.y_fore + mh * kGravity * st.y_hind;
    const double pe_contact =
        (st.y_fore < 0.0 ? 0.5 * kc * st.y_fore * st.y_fore : 0.0) +
        (st.y_hind < 0.0 ? 0.5 * kc * st.y_hind * st.y_hind : 0.0);
    const double s = config.body_length - (st.x_fore - st.x_hind);
    return ke + pe_grav + pe_contact + config.active_potential(s);
}

double friction_force(bool in_contact, double normal, const SubstrateFriction& substrate,
                      double slip_velocity, double stiction_velocity) {
    if (normal < 0.0)
        throw ValidationError("friction_force: normal force must be >= 0");
    if (!in_contact || normal == 0.0)
        return 0.0;
    const double mu = slip_velocity > 0.0 ? substrate.mu_plastic : substrate.mu_rubber;
    return -normal * mu * std::tanh(slip_velocity / stiction_velocity);
}

double spine_force(const RobotConfig& config, double s, double s_rate) {
    return -config.active_potential_slope(s) - config.spine_damping * s_rate;
}

std::vector<ToggleEvent> actuation_schedule(const RobotConfig& config, double duration) {
    config.validate();
    if (!(duration > 0.0))
        throw ValidationError("actuation_schedule: duration must be > 0");
    std::vector<ToggleEvent> events;
    const double half = 0.5 / config.frequency;
    for (int k = 0; k * half < duration; ++k)
        events.push_back({k * half, k % 2 == 0 ? config.stroke() : 0.0});
    return events;
}

double servo_force(const RobotConfig& config, double time, double s) {
    if (!config.actuation_enabled)
        return 0.0;
    const double target = toggle_target(config, time);
    const bool in_window = (time - last_toggle_time(config, time)) < config.snap_time;
    const bool before_midpoint = std::abs(s - target) > 0.5 * config.stroke();
    if (!in_window || !before_midpoint)
        return 0.0;
    const double magnitude =
        config.servo_force_margin * 2.0 * config.active_barrier() / config.stroke();
    return target > s ? magnitude : -magnitude;
}

SimState initial_state(const RobotConfig& config) {
    config.validate();
    SimState st;
    st.x_fore = 0.5 * config.body_length;
    st.x_hind = -0.5 * config.body_length;
    st.y_fore = -config.fore_mass() * kGravity / config.contact_stiffness;
    st.y_hind = -config.hind_mass() * kGravity / config.contact_stiffness;
    st.spine = 0.0;
    st.spine_rate = 0.0;
    st.contact_fore = true;
    st.contact_hind = true;
    return st;
}

SimState step(const SimState& st, const RobotConfig& config, double dt,
              EnergyLedger& ledger) {
    if (!(dt > 0.0))
        throw ValidationError("step: dt must be > 0");
    if (!(dt <= config.snap_time / 20.0))
        throw ValidationError("step: dt must resolve the snap (dt <= t*/20)");

    const double mf = config.fore_mass();
    const double mh = config.hind_mass();
    const double kc = config.contact_stiffness;
    const double cc_fore = 2.0 * config.contact_damping_ratio * std::sqrt(kc * mf);
    const double cc_hind = 2.0 * config.contact_damping_ratio * std::sqrt(kc * mh);

    const double s = config.body_length - (st.x_fore - st.x_hind);
    const double s_rate = -(st.vx_fore - st.vx_hind);

    const double f_servo = servo_force(config, st.time, s);
    const double f_land = -config.active_potential_slope(s);
    const double f_damp = -config.spine_damping * s_rate;

    const bool cf = st.y_fore < 0.0;
    const bool ch = st.y_hind < 0.0;
    const double n_fore_spring = cf ? -kc * st.y_fore : 0.0;
    const double n_hind_spring = ch ? -kc * st.y_hind : 0.0;
    const double n_fore = cf ? std::max(0.0, n_fore_spring - cc_fore * st.vy_fore) : 0.0;
    const double n_hind = ch ? std::max(0.0, n_hind_spring - cc_hind * st.vy_hind) : 0.0;
    const double n_fore_damp = n_fore - n_fore_spring;
    const double n_hind_damp = n_hind - n_hind_spring;

    const double f_fric_fore =
        friction_force(cf, n_fore, config.feet, st.vx_fore, config.stiction_velocity);
    const double f_fric_hind =
        friction_force(ch, n_hind, config.feet, st.vx_hind, config.stiction_velocity);

    // Snap-through kick: spine bending lifts whichever feet are loaded.
    const double kick = config.kick_gain * std::abs(s_rate);
    const double kick_fore = cf ? kick * config.fore_normal_share : 0.0;
    const double kick_hind = ch ? kick * (1.0 - config.fore_normal_share) : 0.0;

    // The spine force acts along s, i.e. pulls the feet together when
    // positive: -F on the fore body, +F on the hind body.
    const double f_spine = f_servo + f_land + f_damp;
    const double fx_fore = -f_spine + f_fric_fore;
    const double fx_hind = f_spine + f_fric_hind;
    const double fy_fore = -mf * kGravity + n_fore + kick_fore;
    const double fy_hind = -mh * kGravity + n_hind + kick_hind;

    SimState next = st;
    next.vx_fore = st.vx_fore + dt * fx_fore / mf;
    next.vy_fore = st.vy_fore + dt * fy_fore / mf;
    next.vx_hind = st.vx_hind + dt * fx_hind / mh;
    next.vy_hind = st.vy_hind + dt * fy_hind / mh;

    // Time-centred velocities make the work sums telescope against the
    // semi-implicit update, so the audit residual reflects modelling terms
    // only, not integrator bookkeeping.
    const double ax_fore = 0.5 * (st.vx_fore + next.vx_fore);
    const double ay_fore = 0.5 * (st.vy_fore + next.vy_fore);
    const double ax_hind = 0.5 * (st.vx_hind + next.vx_hind);
    const double ay_hind = 0.5 * (st.vy_hind + next.vy_hind);
    const double next_s_rate = -(next.vx_fore - next.vx_hind);
    const double a_s_rate = 0.5 * (s_rate + next_s_rate);

    ledger.servo_work += dt * f_servo * a_s_rate;
    ledger.kick_work += dt * (kick_fore * ay_fore + kick_hind * ay_hind);
    ledger.friction_loss -= dt * (f_fric_fore * ax_fore + f_fric_hind * ax_hind);
    ledger.spine_damping_loss -= dt * f_damp * a_s_rate;
    ledger.contact_damping_loss -= dt * (n_fore_damp * ay_fore + n_hind_damp * ay_hind);

    next.x_fore = st.x_fore + dt * next.vx_fore;
    next.y_fore = st.y_fore + dt * next.vy_fore;
    next.x_hind = st.x_hind + dt * next.vx_hind;
    next.y_hind = st.y_hind + dt * next.vy_hind;
    next.time = st.time + dt;
    next.spine = config.body_length - (next.x_fore - next.x_hind);
    next.spine_rate = -(next.vx_fore - next.vx_hind);
    next.contact_fore = next.y_fore < 0.0;
    next.contact_hind = next.y_hind < 0.0;

    if (!std::isfinite(next.x_fore) || !std::isfinite(next.y_fore) ||
        !std::isfinite(next.x_hind) || !std::isfinite(next.y_hind) ||
        !std::isfinite(next.vx_fore) || !std::isfinite(next.vy_fore) ||
        !std::isfinite(next.vx_hind) || !std::isfinite(next.vy_hind))
        throw InstabilityError("step: non-finite state at t = " + std::to_string(next.time));

    const double growth = mechanical_energy(next, config) - ledger.initial_energy;
    if (growth > 2.0 * ledger.injected() + 1e-6)
        throw InstabilityError("step: energy grew by " + std::to_string(growth * 1e3) +
                               " mJ against " + std::to_string(ledger.injected() * 1e3) +
                               " mJ injected at t = " + std::to_string(next.time));
    return next;
}

Trajectory run_gait(const RobotConfig& config, double duration, double dt) {
    config.validate();
    if (!(duration >= 3.0 / config.frequency))
        throw ValidationError("run_gait: duration must cover at least 3 actuation periods");
    if (!(dt > 0.0) || !(dt <= config.snap_time / 20.0))
        throw ValidationError("run_gait: dt must satisfy 0 < dt <= t*/20");

    const int steps = static_cast<int>(std::llround(duration / dt));
    const int decimate = std::max(1, static_cast<int>(std::llround(1e-3 / dt)));

    Trajectory traj;
    traj.config = config;
    traj.sample_period = decimate * dt;

    SimState st = initial_state(config);
    EnergyLedger ledger;
    ledger.initial_energy = mechanical_energy(st, config);

    traj.samples.push_back(st);
    double max_residual_j = 0.0;
    for (int i = 0; i < steps; ++i) {
        st = step(st, config, dt, ledger);
        if ((i + 1) % decimate == 0) {
            traj.samples.push_back(st);
            const double balance = mechanical_energy(st, config) + ledger.dissipated() -
                                   ledger.injected() - ledger.initial_energy;
            max_residual_j = std::max(max_residual_j, std::abs(balance));
        }
    }

    traj.energy = ledger;
    traj.audit_scale = std::max({std::abs(ledger.initial_energy), ledger.injected(), 1e-6});
    traj.max_audit_residual = max_residual_j / traj.audit_scale;
    return traj;
}

double net_displacement(const Trajectory& traj) {
    if (traj.samples.size() < 2)
        return 0.0;
    const double wf = traj.config.fore_mass_fraction;
    const auto cg = [&](const SimState& st) {
        return wf * st.x_fore + (1.0 - wf) * st.x_hind;
    };
    return cg(traj.samples.back()) - cg(traj.samples.front());
}

double air_fraction(const Trajectory& traj) {
    if (traj.samples.empty())
        return 0.0;
    std::size_t air = 0;
    for (const SimState& st : traj.samples)
        air += !st.contact_fore && !st.contact_hind;
    return static_cast<double>(air) / static_cast<double>(traj.samples.size());
}

std::vector<SuiteRow> experiment_suite(const std::vector<SuiteCase>& cases) {
    if (cases.empty())
        throw ValidationError("experiment_suite: needs at least one case");
    std::vector<SuiteRow> rows;
    rows.reserve(cases.size());
    for (const SuiteCase& c : cases) {
        SuiteRow row;
        row.label = c.label;
        row.freq_hz = c.config.frequency;
        row.substrate = c.config.feet.name;
        try {
            const Trajectory traj = run_gait(c.config, c.duration, c.dt);
            const double elapsed = traj.samples.back().time - traj.samples.front().time;
            row.speed_mm_s = net_displacement(traj) * 1e3 / elapsed;
            row.speed_bl_s = net_displacement(traj) / c.config.body_length / elapsed;
            row.air_frac = air_fraction(traj);
            row.energy_mJ = traj.energy.injected() * 1e3;
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace hcm
