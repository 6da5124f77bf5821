#pragma once

#include <vector>

#include "kintwin/model.hpp"

namespace kintwin {

struct BodyKin {
    Vec3 pos = Vec3::Zero();      // body frame origin, world
    Quat rot = Quat::Identity();  // body orientation, world
    Vec3 com = Vec3::Zero();      // center of mass, world
    Vec3 lin_vel = Vec3::Zero();  // velocity of the body frame origin, world
    Vec3 ang_vel = Vec3::Zero();  // angular velocity, world
    Vec3 com_vel = Vec3::Zero();
};

// Per velocity DoF: world-frame motion subspace column in Plucker coordinates
// at the world origin, ordered (angular; linear).
struct KinCache {
    std::vector<BodyKin> body;
    std::vector<Vec6> S;
    VecX qvel;  // copy of the velocity used for this pass (empty if none)
    bool has_velocity = false;
};

// qvel may be empty for a position-only pass.
void forward_kinematics(const ModelSpec& model, const VecX& qpos, const VecX& qvel,
                        KinCache& cache);

inline Vec3 body_point(const BodyKin& kin, const Vec3& local_offset) {
    return kin.pos + kin.rot * local_offset;
}

inline Vec3 body_point_velocity(const BodyKin& kin, const Vec3& local_offset) {
    return kin.lin_vel + kin.ang_vel.cross(kin.rot * local_offset);
}

// Geometric polyline length of a muscle path in the given configuration.
double muscle_path_length(const ModelSpec& model, const KinCache& kin, const Actuator& muscle);

// Length and its time derivative (cache must carry velocities).
void muscle_path_state(const ModelSpec& model, const KinCache& kin, const Actuator& muscle,
                       double& length, double& length_rate);

}  // namespace kintwin
