#include "kintwin/augment.hpp"

#include "kintwin/errors.hpp"

namespace kintwin {

Trajectory apply_window(const Trajectory& traj, const WindowTransform& tf) {
    if (tf.start < 0 || tf.start + tf.num_frames > traj.frames() || tf.num_frames < 2)
        throw DataError("window out of trajectory bounds");
    if (tf.pivot < 0 || tf.pivot >= tf.num_frames) throw DataError("window pivot out of bounds");

    Trajectory out = traj;
    out.qpos = traj.qpos.middleRows(tf.start, tf.num_frames);
    out.qvel = traj.qvel.middleRows(tf.start, tf.num_frames);

    const Vec2 center(out.qpos(tf.pivot, 0), out.qpos(tf.pivot, 1));
    const Quat yaw = yaw_quat(tf.yaw);
    const Mat3 R = yaw.toRotationMatrix();

    for (int t = 0; t < tf.num_frames; ++t) {
        Vec3 p(out.qpos(t, 0) - center.x(), out.qpos(t, 1) - center.y(), out.qpos(t, 2));
        p = R * p;
        out.qpos(t, 0) = p.x() + tf.translation.x();
        out.qpos(t, 1) = p.y() + tf.translation.y();
        out.qpos(t, 2) = p.z();

        const Quat q = yaw * out.root_quat(t);
        out.qpos(t, 3) = q.w();
        out.qpos(t, 4) = q.x();
        out.qpos(t, 5) = q.y();
        out.qpos(t, 6) = q.z();

        Vec3 v = R * Vec3(out.qvel(t, 0), out.qvel(t, 1), out.qvel(t, 2));
        Vec3 w = R * Vec3(out.qvel(t, 3), out.qvel(t, 4), out.qvel(t, 5));
        for (int k = 0; k < 3; ++k) {
            out.qvel(t, k) = v[k];
            out.qvel(t, 3 + k) = w[k];
        }
    }
    return out;
}

Trajectory sample_window(const Trajectory& traj, const AugmentationConfig& cfg, Rng& rng,
                         WindowTransform* tf_out) {
    if (cfg.max_rollout_steps < 1) throw DataError("max_rollout_steps must be >= 1");

    WindowTransform tf;
    // leave at least 2 frames so the window supports one step
    tf.start = cfg.random_start ? static_cast<int>(rng.uniform_int(traj.frames() - 1)) : 0;
    tf.num_frames = std::min(traj.frames() - tf.start, cfg.max_rollout_steps + 1);
    tf.pivot = cfg.recenter ? static_cast<int>(rng.uniform_int(tf.num_frames)) : 0;
    if (!cfg.recenter) {
        // pivot 0 with zero yaw/translation still recenters; emulate "no
        // recentering" by shifting back afterwards is not worth it, so pivot
        // at frame 0 and translate by its original position instead.
        tf.translation = Vec2(traj.qpos(tf.start, 0), traj.qpos(tf.start, 1));
    }
    if (cfg.rotation_noise > 0.0) tf.yaw = rng.uniform(-cfg.rotation_noise, cfg.rotation_noise);
    if (cfg.translation_noise > 0.0) {
        tf.translation.x() += rng.uniform(-cfg.translation_noise, cfg.translation_noise);
        tf.translation.y() += rng.uniform(-cfg.translation_noise, cfg.translation_noise);
    }
    if (tf_out) *tf_out = tf;
    return apply_window(traj, tf);
}

void perturb_initial_state(VecX& qpos, VecX& qvel, const AugmentationConfig& cfg, Rng& rng) {
    if (cfg.init_pose_noise < 0.0 || cfg.init_vel_noise < 0.0)
        throw DataError("reset noise half-widths must be >= 0");

    if (cfg.init_pose_noise > 0.0) {
        const double s = cfg.init_pose_noise;
        for (int k = 0; k < 3; ++k) qpos[k] += rng.uniform(-s, s);
        // random small rotation: uniform axis, angle in [-s, s]
        const double z = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const Vec3 axis(r * std::cos(phi), r * std::sin(phi), z);
        const double angle = rng.uniform(-s, s);
        Quat q = quat_exp(axis * angle) * Quat(qpos[3], qpos[4], qpos[5], qpos[6]);
        q.normalize();
        qpos[3] = q.w();
        qpos[4] = q.x();
        qpos[5] = q.y();
        qpos[6] = q.z();
        for (int k = 7; k < qpos.size(); ++k) qpos[k] += rng.uniform(-s, s);
    }
    if (cfg.init_vel_noise > 0.0) {
        const double s = cfg.init_vel_noise;
        for (int k = 0; k < qvel.size(); ++k) qvel[k] += rng.uniform(-s, s);
    }
}

}  // namespace kintwin
