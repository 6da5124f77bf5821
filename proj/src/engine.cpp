#include "kintwin/engine.hpp"

#include <cmath>

#include "kintwin/errors.hpp"

namespace kintwin {

SimConfig sim_config_defaults() { return SimConfig{}; }

SimState make_state(const ModelSpec& model, const VecX& qpos) {
    if (qpos.size() != model.nq) throw DataError("make_state: qpos dimension mismatch");
    SimState s;
    s.qpos = qpos;
    // keep stored quaternions normalized
    for (size_t j = 0; j < model.joints.size(); ++j) {
        if (model.joints[j].type != JointType::Free) continue;
        const int iq = model.joint_qpos[j];
        Quat q(s.qpos[iq + 3], s.qpos[iq + 4], s.qpos[iq + 5], s.qpos[iq + 6]);
        q.normalize();
        s.qpos[iq + 3] = q.w();
        s.qpos[iq + 4] = q.x();
        s.qpos[iq + 5] = q.y();
        s.qpos[iq + 6] = q.z();
    }
    s.qvel = VecX::Zero(model.nv);
    s.activations = VecX::Zero(model.num_muscles());
    s.actuator_forces = VecX::Zero(model.nv);
    return s;
}

SimState make_state(const ModelSpec& model) { return make_state(model, model.neutral_pose); }

std::vector<ContactForce> contact_forces(const ModelSpec& model, const KinCache& kin,
                                         const SimConfig& cfg) {
    std::vector<ContactForce> out;
    for (size_t g = 0; g < model.contacts.size(); ++g) {
        const ContactGeom& geom = model.contacts[g];
        const Vec3 center = body_point(kin.body[geom.body], geom.offset);
        const double depth = geom.radius - center.z();
        if (depth <= 0.0) continue;

        ContactForce cf;
        cf.geom = static_cast<int>(g);
        cf.point = Vec3(center.x(), center.y(), 0.0);

        // Explicit integration bounds: cap stiffness/damping against the
        // contact body's mass so light feet stay stable at the substep rate.
        const double m_eff = model.bodies[geom.body].mass;
        const double kp = std::min(cfg.contact_kp, 0.5 * m_eff / (cfg.dt * cfg.dt));
        const double kd = std::min(cfg.contact_kd, 0.5 * m_eff / cfg.dt);

        double normal = kp * depth;
        Vec3 vel = Vec3::Zero();
        if (kin.has_velocity) {
            vel = body_point_velocity(kin.body[geom.body], geom.offset);
            // damping resists approach only, so the floor never pulls
            normal += kd * std::max(0.0, -vel.z());
        }
        normal = std::max(0.0, normal);

        Vec3 force(0.0, 0.0, normal);
        const Vec2 slip(vel.x(), vel.y());
        const double slip_speed = slip.norm();
        if (slip_speed > 1e-12) {
            const double friction = cfg.friction_mu * normal;
            // inside the regularization zone the slope acts like a damper;
            // cap it for the same stability reason, saturation is untouched
            const double slope = std::min(friction / cfg.slip_vel, 0.5 * m_eff / cfg.dt);
            const double mag = std::min(friction, slope * slip_speed);
            force.x() = -mag * slip.x() / slip_speed;
            force.y() = -mag * slip.y() / slip_speed;
        }
        cf.force = force;
        out.push_back(cf);
    }
    return out;
}

double muscle_force(const Actuator& muscle, double activation, double path_length,
                    double path_velocity) {
    if (!(muscle.rest_length > 0.0))
        throw DataError("muscle '" + muscle.name + "' has non-positive rest length");
    const double a = std::clamp(activation, 0.0, 1.0);
    const double lnorm = path_length / muscle.rest_length;

    // force-length: bell curve, 1 at rest length
    const double dl = lnorm - 1.0;
    const double fl = std::exp(-(dl * dl) / (0.45 * 0.45));

    // force-velocity: classic hyperbolic shape, 1 at zero velocity, 0 at the
    // max shortening velocity, saturating at 1.5 when lengthening
    const double vmax = muscle.vmax * muscle.rest_length;  // m/s
    const double vs = -path_velocity / vmax;               // >0 when shortening
    double fv;
    if (vs >= 1.0) {
        fv = 0.0;
    } else if (vs >= 0.0) {
        fv = (1.0 - vs) / (1.0 + 4.0 * vs);
    } else {
        fv = std::min(1.5, 1.0 - 1.5 * vs / (1.0 - 7.5 * vs));
    }

    // passive elasticity engages beyond the rest length
    const double fp = dl > 0.0 ? 4.0 * dl * dl : 0.0;

    return std::max(0.0, muscle.gear * (a * fl * fv + fp));
}

void rfc_wrench(const ModelSpec& model, const VecX& action, Vec3& force, Vec3& torque) {
    force.setZero();
    torque.setZero();
    for (int i = 0; i < model.num_actions(); ++i) {
        const Actuator& act = model.actuators[i];
        if (act.kind != ActuatorKind::Rfc) continue;
        const double u = std::clamp(action[i], act.lo, act.hi);
        if (act.rfc_channel < 3)
            force[act.rfc_channel] += act.gear * u;
        else
            torque[act.rfc_channel - 3] += act.gear * u;
    }
}

namespace {

void advance_activations(const ModelSpec& model, const VecX& action, double dt,
                         const SimConfig& cfg, VecX& activations) {
    int m = 0;
    for (int i = 0; i < model.num_actions(); ++i) {
        const Actuator& act = model.actuators[i];
        if (act.kind != ActuatorKind::Muscle) continue;
        const double u = std::clamp(action[i], 0.0, 1.0);
        const double a = activations[m];
        const double tau = u > a ? cfg.tau_act : cfg.tau_deact;
        activations[m] = std::clamp(a + dt * (u - a) / tau, 0.0, 1.0);
        ++m;
    }
}

}  // namespace

SimState step(const ModelSpec& model, const SimState& state, const Action& action,
              const SimConfig& cfg) {
    if (action.values.size() != model.num_actions())
        throw DataError("step: action dimension mismatch");
    if (state.qpos.size() != model.nq || state.qvel.size() != model.nv)
        throw DataError("step: state dimension mismatch");

    SimState s = state;
    if (s.activations.size() != model.num_muscles())
        s.activations = VecX::Zero(model.num_muscles());

    VecX act = action.values;
    for (int i = 0; i < model.num_actions(); ++i)
        act[i] = std::clamp(act[i], model.actuators[i].lo, model.actuators[i].hi);

    KinCache kin;
    for (int sub = 0; sub < cfg.substeps; ++sub) {
        forward_kinematics(model, s.qpos, s.qvel, kin);

        advance_activations(model, act, cfg.dt, cfg, s.activations);

        VecX tau = VecX::Zero(model.nv);
        std::vector<ExternalForce> ext;
        std::vector<ExternalForce> actuator_ext;

        // joint torque actuators
        for (int i = 0; i < model.num_actions(); ++i) {
            const Actuator& a = model.actuators[i];
            if (a.kind == ActuatorKind::Torque)
                tau[model.joint_dof[a.joint]] += a.gear * act[i];
        }

        // residual root wrench
        if (model.num_rfc() > 0) {
            Vec3 f, t;
            rfc_wrench(model, act, f, t);
            ExternalForce rf;
            rf.body = 0;
            rf.point = kin.body[0].pos;
            rf.force = f;
            rf.torque = t;
            actuator_ext.push_back(rf);
        }

        // muscle tensions pull adjacent via points together
        int m = 0;
        for (int i = 0; i < model.num_actions(); ++i) {
            const Actuator& a = model.actuators[i];
            if (a.kind != ActuatorKind::Muscle) continue;
            double len = 0.0, rate = 0.0;
            muscle_path_state(model, kin, a, len, rate);
            const double tension = muscle_force(a, s.activations[m], len, rate);
            ++m;
            if (tension <= 0.0) continue;
            for (size_t k = 0; k + 1 < a.path.size(); ++k) {
                const Vec3 p0 = body_point(kin.body[a.path[k].body], a.path[k].offset);
                const Vec3 p1 = body_point(kin.body[a.path[k + 1].body], a.path[k + 1].offset);
                const Vec3 d = p1 - p0;
                const double seg = d.norm();
                if (seg < 1e-9) continue;
                const Vec3 dir = d / seg;
                ExternalForce f0, f1;
                f0.body = a.path[k].body;
                f0.point = p0;
                f0.force = tension * dir;
                f1.body = a.path[k + 1].body;
                f1.point = p1;
                f1.force = -tension * dir;
                actuator_ext.push_back(f0);
                actuator_ext.push_back(f1);
            }
        }

        // actuator generalized forces (for observations and logs)
        VecX tau_actuator = tau + project_forces(model, kin, actuator_ext);

        const MatX M = mass_matrix(model, kin);

        // joint-limit penalty, smooth spring-damper outside the range, gains
        // capped against the joint-space inertia for explicit stability
        for (size_t j = 0; j < model.joints.size(); ++j) {
            const Joint& joint = model.joints[j];
            if (joint.type != JointType::Hinge || !joint.limited) continue;
            const int iv = model.joint_dof[j];
            const double q = s.qpos[model.joint_qpos[j]];
            const double qd = s.qvel[iv];
            double over = 0.0;
            if (q > joint.hi)
                over = q - joint.hi;
            else if (q < joint.lo)
                over = q - joint.lo;
            if (over != 0.0) {
                const double inertia = M(iv, iv);
                const double kp = std::min(cfg.limit_kp, 0.5 * inertia / (cfg.dt * cfg.dt));
                const double kd = std::min(cfg.limit_kd, 0.5 * inertia / cfg.dt);
                tau[iv] += -kp * over - kd * qd;
            }
        }

        std::vector<ContactForce> contacts = contact_forces(model, kin, cfg);
        for (const ContactForce& c : contacts) {
            ExternalForce f;
            f.body = model.contacts[c.geom].body;
            f.point = c.point;
            f.force = c.force;
            ext.push_back(f);
        }

        std::vector<ExternalForce> all_ext = ext;
        all_ext.insert(all_ext.end(), actuator_ext.begin(), actuator_ext.end());
        const VecX bias = bias_forces(model, kin, all_ext);
        Eigen::LDLT<MatX> ldlt(M);
        if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().minCoeff() > 0.0) ||
            !ldlt.vectorD().allFinite()) {
            throw NumericError("singular mass matrix (check inertias and scaling)");
        }
        const VecX qdd = ldlt.solve(tau - bias);
        if (!qdd.allFinite()) throw NumericError("non-finite joint accelerations");

        // semi-implicit Euler: velocity first, then position with the new velocity
        s.qvel += cfg.dt * qdd;
        for (size_t j = 0; j < model.joints.size(); ++j) {
            const int iq = model.joint_qpos[j];
            const int iv = model.joint_dof[j];
            if (model.joints[j].type == JointType::Free) {
                s.qpos.segment<3>(iq) += cfg.dt * s.qvel.segment<3>(iv);
                const Quat q0(s.qpos[iq + 3], s.qpos[iq + 4], s.qpos[iq + 5], s.qpos[iq + 6]);
                const Quat q = integrate_quat(q0, s.qvel.segment<3>(iv + 3), cfg.dt);
                s.qpos[iq + 3] = q.w();
                s.qpos[iq + 4] = q.x();
                s.qpos[iq + 5] = q.y();
                s.qpos[iq + 6] = q.z();
            } else {
                s.qpos[iq] += cfg.dt * s.qvel[iv];
            }
        }
        s.time += cfg.dt;

        if (sub == cfg.substeps - 1) {
            s.contact_forces = std::move(contacts);
            s.actuator_forces = std::move(tau_actuator);
        }

        if (!s.finite()) throw NumericError("simulation diverged (non-finite state)");
    }
    return s;
}

std::optional<Vec2> center_of_pressure(const std::vector<ContactForce>& contacts) {
    double total = 0.0;
    Vec2 weighted = Vec2::Zero();
    for (const ContactForce& c : contacts) {
        const double fz = c.force.z();
        if (fz <= 0.0) continue;
        total += fz;
        weighted += fz * Vec2(c.point.x(), c.point.y());
    }
    if (total <= 0.0) return std::nullopt;
    return Vec2(weighted / total);
}

GroundReactionPair ground_reaction(const ModelSpec& model, const SimState& state) {
    GroundReactionPair out;
    std::vector<ContactForce> left, right;
    for (const ContactForce& c : state.contact_forces) {
        const char side = model.contacts[c.geom].side;
        (side == 'L' ? left : right).push_back(c);
    }
    auto fill = [](const std::vector<ContactForce>& list, GroundReaction& gr) {
        for (const ContactForce& c : list) {
            gr.vertical += std::max(0.0, c.force.z());
            gr.horizontal += Vec2(c.force.x(), c.force.y());
        }
        gr.cop = center_of_pressure(list);
    };
    fill(left, out.left);
    fill(right, out.right);
    return out;
}

}  // namespace kintwin
