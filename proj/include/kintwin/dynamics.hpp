#pragma once

#include <vector>

#include "kintwin/kinematics.hpp"
#include "kintwin/model.hpp"

namespace kintwin {

// External force on one body: linear force applied at a world point plus an
// optional pure torque, both world frame.
struct ExternalForce {
    int body = -1;
    Vec3 point = Vec3::Zero();
    Vec3 force = Vec3::Zero();
    Vec3 torque = Vec3::Zero();
};

// Joint-space mass matrix via the composite-rigid-body algorithm, world
// Plucker coordinates. Symmetric positive definite for a valid model.
MatX mass_matrix(const ModelSpec& model, const KinCache& kin);

// Generalized bias force: gravity, Coriolis/centrifugal and external forces
// folded in, so M qdd = tau_applied - bias. Cache must carry velocities.
VecX bias_forces(const ModelSpec& model, const KinCache& kin,
                 const std::vector<ExternalForce>& ext);

// Projection of external forces alone onto joint space (J^T f).
VecX project_forces(const ModelSpec& model, const KinCache& kin,
                    const std::vector<ExternalForce>& ext);

// Solves M(q) qdd = tau_applied + tau_ext - bias(q, qd). Throws NumericError on
// a singular mass matrix.
VecX forward_dynamics(const ModelSpec& model, const KinCache& kin, const VecX& tau_applied,
                      const std::vector<ExternalForce>& ext);

VecX forward_dynamics(const ModelSpec& model, const VecX& qpos, const VecX& qvel,
                      const VecX& tau_applied, const std::vector<ExternalForce>& ext = {});

}  // namespace kintwin
