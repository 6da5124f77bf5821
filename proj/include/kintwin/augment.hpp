#pragma once

#include "kintwin/rng.hpp"
#include "kintwin/trajectory.hpp"

namespace kintwin {

struct AugmentationConfig {
    int max_rollout_steps = 600;
    bool random_start = true;
    bool recenter = true;
    double rotation_noise = M_PI;   // rad, uniform yaw in [-x, x]
    double translation_noise = 0.0;  // m, uniform per horizontal axis
    double init_pose_noise = 0.0;   // sigma_q0, uniform half-width
    double init_vel_noise = 0.0;    // sigma_qd0
};

// Everything needed to rebuild a sampled window deterministically.
struct WindowTransform {
    int start = 0;
    int num_frames = 0;
    int pivot = 0;  // in-window frame whose horizontal position becomes the origin
    double yaw = 0.0;
    Vec2 translation = Vec2::Zero();
};

// Rigidly transform a window of the trajectory per the transform record.
Trajectory apply_window(const Trajectory& traj, const WindowTransform& tf);

// Draw a window per the augmentation config. The chosen transform is written
// to *tf_out when given, so the exact window can be rebuilt later.
Trajectory sample_window(const Trajectory& traj, const AugmentationConfig& cfg, Rng& rng,
                         WindowTransform* tf_out = nullptr);

// Additive uniform noise on every coordinate; the root quaternion is rotated
// about a random axis by an angle no larger than the pose sigma.
void perturb_initial_state(VecX& qpos, VecX& qvel, const AugmentationConfig& cfg, Rng& rng);

}  // namespace kintwin
