#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <cmath>

namespace kintwin {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using VecX = Eigen::VectorXd;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using MatX = Eigen::MatrixXd;
using Quat = Eigen::Quaterniond;

inline Mat3 skew(const Vec3& v) {
    Mat3 m;
    m << 0, -v.z(), v.y(),
         v.z(), 0, -v.x(),
         -v.y(), v.x(), 0;
    return m;
}

// Rotation vector (axis * angle) -> quaternion.
inline Quat quat_exp(const Vec3& rotvec) {
    const double angle = rotvec.norm();
    if (angle < 1e-12) {
        Quat q(1.0, 0.5 * rotvec.x(), 0.5 * rotvec.y(), 0.5 * rotvec.z());
        q.normalize();
        return q;
    }
    const Vec3 axis = rotvec / angle;
    return Quat(Eigen::AngleAxisd(angle, axis));
}

// Quaternion -> rotation vector with angle in [0, pi].
inline Vec3 quat_log(const Quat& q_in) {
    Quat q = q_in;
    if (q.w() < 0) q.coeffs() *= -1.0;
    const double vn = q.vec().norm();
    if (vn < 1e-12) return 2.0 * q.vec();
    const double angle = 2.0 * std::atan2(vn, q.w());
    return (angle / vn) * q.vec();
}

// Rotation-vector difference target o current^-1 (world frame), angle in [0, pi].
// Inputs are renormalized, so slightly denormalized quaternions are accepted.
inline Vec3 quat_diff(const Quat& target, const Quat& current) {
    Quat t = target.normalized();
    Quat c = current.normalized();
    return quat_log(t * c.conjugate());
}

inline Quat yaw_quat(double yaw) {
    return Quat(Eigen::AngleAxisd(yaw, Vec3::UnitZ()));
}

// Integrate a world-frame angular velocity over dt.
inline Quat integrate_quat(const Quat& q, const Vec3& omega_world, double dt) {
    Quat dq = quat_exp(omega_world * dt);
    Quat out = dq * q;
    out.normalize();
    return out;
}

inline bool all_finite(const VecX& v) {
    return v.allFinite();
}

}  // namespace kintwin
