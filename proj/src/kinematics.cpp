#include "kintwin/kinematics.hpp"

#include "kintwin/errors.hpp"

namespace kintwin {

void forward_kinematics(const ModelSpec& model, const VecX& qpos, const VecX& qvel,
                        KinCache& cache) {
    const int nb = model.num_bodies();
    cache.body.resize(nb);
    cache.S.resize(model.nv);
    cache.has_velocity = qvel.size() == model.nv;
    cache.qvel = cache.has_velocity ? qvel : VecX();
    if (qpos.size() != model.nq) throw DataError("forward_kinematics: qpos dimension mismatch");

    for (int b = 0; b < nb; ++b) {
        const BodySegment& seg = model.bodies[b];
        BodyKin& kin = cache.body[b];

        Vec3 run_pos;
        Quat run_rot;
        Vec3 ang_vel = Vec3::Zero();
        Vec3 lin_vel = Vec3::Zero();

        if (seg.parent < 0) {
            run_pos = seg.attach_pos;
            run_rot = seg.attach_quat;
        } else {
            const BodyKin& par = cache.body[seg.parent];
            run_pos = par.pos + par.rot * seg.attach_pos;
            run_rot = par.rot * seg.attach_quat;
            if (cache.has_velocity) {
                ang_vel = par.ang_vel;
                // the body origin is anchored to the parent; hinges only rotate about it
                lin_vel = par.lin_vel + par.ang_vel.cross(run_pos - par.pos);
            }
        }

        for (int j : model.body_joints[b]) {
            const Joint& joint = model.joints[j];
            const int iq = model.joint_qpos[j];
            const int iv = model.joint_dof[j];
            if (joint.type == JointType::Free) {
                run_pos = qpos.segment<3>(iq);
                Quat q(qpos[iq + 3], qpos[iq + 4], qpos[iq + 5], qpos[iq + 6]);
                q.normalize();
                run_rot = q;
                // translational columns
                for (int k = 0; k < 3; ++k) {
                    Vec6 s = Vec6::Zero();
                    s[3 + k] = 1.0;
                    cache.S[iv + k] = s;
                }
                // rotational columns: world axes through the body origin
                for (int k = 0; k < 3; ++k) {
                    Vec3 e = Vec3::Zero();
                    e[k] = 1.0;
                    Vec6 s;
                    s.head<3>() = e;
                    s.tail<3>() = run_pos.cross(e);
                    cache.S[iv + 3 + k] = s;
                }
                if (cache.has_velocity) {
                    lin_vel = qvel.segment<3>(iv);
                    ang_vel = qvel.segment<3>(iv + 3);
                }
            } else {
                const Vec3 world_axis = run_rot * joint.axis;
                Vec6 s;
                s.head<3>() = world_axis;
                s.tail<3>() = run_pos.cross(world_axis);
                cache.S[iv] = s;
                run_rot = run_rot * Quat(Eigen::AngleAxisd(qpos[iq], joint.axis));
                if (cache.has_velocity) ang_vel += world_axis * qvel[iv];
            }
        }

        kin.pos = run_pos;
        kin.rot = run_rot.normalized();
        kin.com = kin.pos + kin.rot * seg.com;
        if (cache.has_velocity) {
            kin.ang_vel = ang_vel;
            kin.lin_vel = lin_vel;
            kin.com_vel = lin_vel + ang_vel.cross(kin.com - kin.pos);
        }
    }
}

double muscle_path_length(const ModelSpec& model, const KinCache& kin, const Actuator& muscle) {
    (void)model;
    double len = 0.0;
    Vec3 prev = body_point(kin.body[muscle.path[0].body], muscle.path[0].offset);
    for (size_t k = 1; k < muscle.path.size(); ++k) {
        Vec3 cur = body_point(kin.body[muscle.path[k].body], muscle.path[k].offset);
        len += (cur - prev).norm();
        prev = cur;
    }
    return len;
}

void muscle_path_state(const ModelSpec& model, const KinCache& kin, const Actuator& muscle,
                       double& length, double& length_rate) {
    (void)model;
    length = 0.0;
    length_rate = 0.0;
    Vec3 prev_p = body_point(kin.body[muscle.path[0].body], muscle.path[0].offset);
    Vec3 prev_v = body_point_velocity(kin.body[muscle.path[0].body], muscle.path[0].offset);
    for (size_t k = 1; k < muscle.path.size(); ++k) {
        Vec3 p = body_point(kin.body[muscle.path[k].body], muscle.path[k].offset);
        Vec3 v = body_point_velocity(kin.body[muscle.path[k].body], muscle.path[k].offset);
        Vec3 d = p - prev_p;
        double seg = d.norm();
        length += seg;
        if (seg > 1e-12) length_rate += (d / seg).dot(v - prev_v);
        prev_p = p;
        prev_v = v;
    }
}

}  // namespace kintwin
