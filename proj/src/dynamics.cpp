#include "kintwin/dynamics.hpp"

#include <Eigen/Cholesky>

#include "kintwin/errors.hpp"

namespace kintwin {

namespace {

// 6D spatial algebra in world Plucker coordinates at the origin, (angular;
// linear) ordering.

Vec6 spatial_cross_motion(const Vec6& v, const Vec6& m) {
    Vec6 out;
    out.head<3>() = v.head<3>().cross(m.head<3>());
    out.tail<3>() = v.head<3>().cross(m.tail<3>()) + v.tail<3>().cross(m.head<3>());
    return out;
}

Vec6 spatial_cross_force(const Vec6& v, const Vec6& f) {
    Vec6 out;
    out.head<3>() = v.head<3>().cross(f.head<3>()) + v.tail<3>().cross(f.tail<3>());
    out.tail<3>() = v.head<3>().cross(f.tail<3>());
    return out;
}

Mat6 spatial_inertia(const BodySegment& seg, const BodyKin& kin) {
    const Mat3 R = kin.rot.toRotationMatrix();
    const Mat3 ic = R * seg.inertia * R.transpose();  // about COM, world axes
    const Mat3 cx = skew(kin.com);
    Mat6 I;
    I.topLeftCorner<3, 3>() = ic + seg.mass * cx * cx.transpose();
    I.topRightCorner<3, 3>() = seg.mass * cx;
    I.bottomLeftCorner<3, 3>() = seg.mass * cx.transpose();
    I.bottomRightCorner<3, 3>() = seg.mass * Mat3::Identity();
    return I;
}

// Spatial velocity of a body from its kinematics (linear part at world origin).
Vec6 spatial_velocity(const BodyKin& kin) {
    Vec6 v;
    v.head<3>() = kin.ang_vel;
    v.tail<3>() = kin.lin_vel - kin.ang_vel.cross(kin.pos);
    return v;
}

Vec6 spatial_force(const ExternalForce& f) {
    Vec6 out;
    out.head<3>() = f.point.cross(f.force) + f.torque;
    out.tail<3>() = f.force;
    return out;
}

// Velocity-product spatial acceleration of one body (Sdot * qd terms summed
// over its joints), assuming qdd = 0.
Vec6 velocity_product(const ModelSpec& model, const KinCache& kin, int body, const VecX& qvel,
                      const Vec6& parent_vel) {
    Vec6 c = Vec6::Zero();
    Vec6 v_run = parent_vel;
    for (int j : model.body_joints[body]) {
        const Joint& joint = model.joints[j];
        const int iv = model.joint_dof[j];
        if (joint.type == JointType::Free) {
            // S depends on the root position; direct differentiation gives
            // cdot = (0; -omega x v_origin)
            const BodyKin& bk = kin.body[body];
            Vec6 vj;
            vj.head<3>() = qvel.segment<3>(iv + 3);
            vj.tail<3>() = qvel.segment<3>(iv) - vj.head<3>().cross(bk.pos);
            v_run += vj;
            c.tail<3>() -= bk.ang_vel.cross(bk.lin_vel);
        } else {
            Vec6 vj = kin.S[iv] * qvel[iv];
            c += spatial_cross_motion(v_run, vj);
            v_run += vj;
        }
    }
    return c;
}

}  // namespace

MatX mass_matrix(const ModelSpec& model, const KinCache& kin) {
    const int nb = model.num_bodies();
    MatX M = MatX::Zero(model.nv, model.nv);

    std::vector<Mat6> composite(nb);
    for (int b = 0; b < nb; ++b) composite[b] = spatial_inertia(model.bodies[b], kin.body[b]);
    for (int b = nb - 1; b > 0; --b) composite[model.bodies[b].parent] += composite[b];

    // collect every dof moving body b (its own joints, then ancestors')
    for (int b = nb - 1; b >= 0; --b) {
        for (int j : model.body_joints[b]) {
            const Joint& joint = model.joints[j];
            const int iv = model.joint_dof[j];
            const int width = joint.type == JointType::Free ? 6 : 1;
            for (int d = 0; d < width; ++d) {
                const int row = iv + d;
                Vec6 f = composite[b] * kin.S[row];
                // walk this body's joint stack and then up the tree
                int cb = b;
                while (cb >= 0) {
                    for (int j2 : model.body_joints[cb]) {
                        const Joint& joint2 = model.joints[j2];
                        const int iv2 = model.joint_dof[j2];
                        const int width2 = joint2.type == JointType::Free ? 6 : 1;
                        for (int d2 = 0; d2 < width2; ++d2) {
                            const int col = iv2 + d2;
                            if (col > row) continue;
                            const double val = kin.S[col].dot(f);
                            M(row, col) = val;
                            M(col, row) = val;
                        }
                    }
                    cb = model.bodies[cb].parent;
                }
            }
        }
    }
    return M;
}

VecX bias_forces(const ModelSpec& model, const KinCache& kin,
                 const std::vector<ExternalForce>& ext) {
    const int nb = model.num_bodies();
    if (!kin.has_velocity) throw DataError("bias_forces: kinematics cache lacks velocities");

    // base acceleration trick: accelerate the world frame opposite to gravity
    Vec6 a_base = Vec6::Zero();
    a_base.tail<3>() = -model.gravity;

    std::vector<Vec6> vel(nb), acc(nb), force(nb);
    std::vector<Vec6> ext_sum(nb, Vec6::Zero());
    for (const ExternalForce& f : ext) {
        if (f.body < 0 || f.body >= nb) throw DataError("external force on unknown body");
        ext_sum[f.body] += spatial_force(f);
    }

    const VecX& qvel = kin.qvel;
    for (int b = 0; b < nb; ++b) {
        const int parent = model.bodies[b].parent;
        const Vec6 parent_vel = parent < 0 ? Vec6::Zero() : vel[parent];
        const Vec6 parent_acc = parent < 0 ? a_base : acc[parent];
        vel[b] = spatial_velocity(kin.body[b]);
        acc[b] = parent_acc + velocity_product(model, kin, b, qvel, parent_vel);
        const Mat6 I = spatial_inertia(model.bodies[b], kin.body[b]);
        force[b] = I * acc[b] + spatial_cross_force(vel[b], I * vel[b]) - ext_sum[b];
    }

    for (int b = nb - 1; b > 0; --b) force[model.bodies[b].parent] += force[b];

    VecX bias = VecX::Zero(model.nv);
    for (int b = 0; b < nb; ++b) {
        for (int j : model.body_joints[b]) {
            const Joint& joint = model.joints[j];
            const int iv = model.joint_dof[j];
            const int width = joint.type == JointType::Free ? 6 : 1;
            for (int d = 0; d < width; ++d) bias[iv + d] = kin.S[iv + d].dot(force[b]);
        }
    }
    return bias;
}

VecX project_forces(const ModelSpec& model, const KinCache& kin,
                    const std::vector<ExternalForce>& ext) {
    const int nb = model.num_bodies();
    std::vector<Vec6> acc_force(nb, Vec6::Zero());
    for (const ExternalForce& f : ext) {
        if (f.body < 0 || f.body >= nb) throw DataError("external force on unknown body");
        acc_force[f.body] += spatial_force(f);
    }
    for (int b = nb - 1; b > 0; --b) acc_force[model.bodies[b].parent] += acc_force[b];
    VecX tau = VecX::Zero(model.nv);
    for (int b = 0; b < nb; ++b) {
        for (int j : model.body_joints[b]) {
            const Joint& joint = model.joints[j];
            const int iv = model.joint_dof[j];
            const int width = joint.type == JointType::Free ? 6 : 1;
            for (int d = 0; d < width; ++d) tau[iv + d] = kin.S[iv + d].dot(acc_force[b]);
        }
    }
    return tau;
}

VecX forward_dynamics(const ModelSpec& model, const KinCache& kin, const VecX& tau_applied,
                      const std::vector<ExternalForce>& ext) {
    if (tau_applied.size() != model.nv)
        throw DataError("forward_dynamics: applied force dimension mismatch");
    const MatX M = mass_matrix(model, kin);
    const VecX bias = bias_forces(model, kin, ext);
    Eigen::LDLT<MatX> ldlt(M);
    if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().minCoeff() > 0.0) ||
        !ldlt.vectorD().allFinite()) {
        throw NumericError("singular mass matrix (check inertias and scaling)");
    }
    VecX qdd = ldlt.solve(tau_applied - bias);
    if (!qdd.allFinite()) throw NumericError("non-finite joint accelerations");
    return qdd;
}

VecX forward_dynamics(const ModelSpec& model, const VecX& qpos, const VecX& qvel,
                      const VecX& tau_applied, const std::vector<ExternalForce>& ext) {
    KinCache kin;
    forward_kinematics(model, qpos, qvel, kin);
    return forward_dynamics(model, kin, tau_applied, ext);
}

}  // namespace kintwin
