#pragma once

#include "kintwin/model.hpp"
#include "kintwin/trajectory.hpp"

namespace kintwin {

enum class Actuation { Torque, Muscle };

// Desk-scale test model: 7 bodies, 12 DoF (free pelvis + hip/knee/ankle per
// leg), torque + rfc actuators, two contact spheres per foot.
ModelSpec toy_biped_model();

// Full humanoid: 21 bodies, 40 DoF. The torque variant has 40 actuators (6
// rfc + 34 joint torques); the muscle variant has 118 (6 rfc + 20 torques
// above the pelvis + 92 muscles). Muscle routing uses straight via-point
// paths with approximate anatomical attachment sites; peak forces are
// literature-level ballpark values, not subject-calibrated.
ModelSpec humanoid_model(Actuation actuation);

// Single free-floating box driven only by rfc channels; used for fast
// policy-learning checks.
ModelSpec point_mass_model();

// Hinge-to-world pendulum for dynamics oracles. Not a valid artifact model
// (no free root), so it is finalized but not validated.
ModelSpec pendulum_model(double mass, double length, bool point_mass);

// --- scripted target trajectories ---

// Sinusoidal gait-like motion for the toy biped: antiphase hip swings, knee
// flexion bumps, slight pelvis bob, constant forward speed.
Trajectory scripted_biped_gait(const ModelSpec& model, double duration_s, double frame_rate,
                               double phase = 0.0, double forward_speed = 0.45,
                               const std::string& participant = "SYN01",
                               const std::string& trial = "T001");

// Walking-like motion for the full humanoid (hips, knees, ankles, arm swing).
Trajectory scripted_humanoid_walk(const ModelSpec& model, double duration_s, double frame_rate,
                                  double phase = 0.0,
                                  const std::string& participant = "SYN01",
                                  const std::string& trial = "T001");

// Smooth multi-frequency course for the point mass.
Trajectory scripted_puck_course(const ModelSpec& model, double duration_s, double frame_rate,
                                double phase = 0.0,
                                const std::string& participant = "SYN01",
                                const std::string& trial = "T001");

// Pelvis held in the air with legs tucked so the feet never reach the floor;
// only a residual root force can keep this trajectory alive.
Trajectory scripted_biped_float(const ModelSpec& model, double duration_s, double frame_rate,
                                const std::string& participant = "SYN01",
                                const std::string& trial = "T001");

}  // namespace kintwin
