#pragma once

#include <string>
#include <vector>

#include "kintwin/math_utils.hpp"
#include "kintwin/model.hpp"

namespace kintwin {

// Target kinematics for one trial: per-frame generalized pose and velocity
// plus the participant's body scale parameters.
struct Trajectory {
    std::string model_name;
    std::string participant;
    std::string trial;
    std::string activity;
    double frame_rate = 0.0;
    ScaleParams beta;
    std::vector<std::string> coord_names;  // one per qpos coordinate
    MatX qpos;  // frames x nq
    MatX qvel;  // frames x nv

    int frames() const { return static_cast<int>(qpos.rows()); }
    int nq() const { return static_cast<int>(qpos.cols()); }
    int nv() const { return static_cast<int>(qvel.cols()); }
    double duration() const { return frames() <= 1 ? 0.0 : (frames() - 1) / frame_rate; }

    Quat root_quat(int frame) const {
        return Quat(qpos(frame, 3), qpos(frame, 4), qpos(frame, 5), qpos(frame, 6));
    }

    // Internal consistency: dimensions, finiteness, quaternion norms.
    // Quaternions within 1e-3 of unit are renormalized in place.
    void validate();
    // Dimension match against a model.
    void check_model(const ModelSpec& model) const;
};

Trajectory load_trajectory(const std::string& path);
Trajectory parse_trajectory(const std::string& text, const std::string& origin = "<string>");
void save_trajectory(const Trajectory& traj, const std::string& path);
std::string serialize_trajectory(const Trajectory& traj);

// Linear interpolation for coordinates and velocities, spherical (shortest
// arc) for the root quaternion. target_rate must be >= the source rate.
Trajectory resample(const Trajectory& traj, double target_rate);

// Warn-level consistency check: fraction of frames where finite differences of
// qpos disagree with the stored qvel by more than 10x the median disagreement.
struct VelocityConsistency {
    double median_err = 0.0;
    int outlier_frames = 0;
    int checked_frames = 0;
};
VelocityConsistency check_velocity_consistency(const Trajectory& traj);

}  // namespace kintwin
