#pragma once

#include "kintwin/dynamics.hpp"
#include "kintwin/model.hpp"
#include "kintwin/sim_state.hpp"

namespace kintwin {

struct SimConfig {
    double dt = 1.0 / 450.0;  // physics substep
    int substeps = 5;         // substeps per control frame (90 Hz control)
    // compliant floor contact
    double contact_kp = 2.0e4;  // N/m
    double contact_kd = 2.0e3;  // N*s/m
    double friction_mu = 0.9;
    double slip_vel = 0.01;  // m/s, friction regularization
    // joint-limit penalty
    double limit_kp = 200.0;  // N*m/rad outside the range
    double limit_kd = 5.0;
    // muscle activation dynamics
    double tau_act = 0.020;    // s
    double tau_deact = 0.040;  // s

    double control_dt() const { return dt * substeps; }
};

SimConfig sim_config_defaults();

// State at a given pose with zero velocity and zero activations.
SimState make_state(const ModelSpec& model, const VecX& qpos);
SimState make_state(const ModelSpec& model);  // neutral pose

// Contact forces for the current configuration (no integration).
std::vector<ContactForce> contact_forces(const ModelSpec& model, const KinCache& kin,
                                         const SimConfig& cfg);

// Hill-type tension: peak * act * fL * fV + passive, never negative.
double muscle_force(const Actuator& muscle, double activation, double path_length,
                    double path_velocity);

// World wrench (force, torque) at the root body origin for rfc commands.
void rfc_wrench(const ModelSpec& model, const VecX& action, Vec3& force, Vec3& torque);

// Advance one control frame: semi-implicit Euler over cfg.substeps with the
// action held constant. Contact and actuator forces are the ones used in the
// final substep. Throws NumericError when the state leaves the finite range.
SimState step(const ModelSpec& model, const SimState& state, const Action& action,
              const SimConfig& cfg);

}  // namespace kintwin
