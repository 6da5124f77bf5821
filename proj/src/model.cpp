#include "kintwin/model.hpp"

#include <Eigen/Eigenvalues>
#include <set>

#include "kintwin/errors.hpp"

namespace kintwin {

void ModelSpec::finalize() {
    const int nb = num_bodies();
    body_joints.assign(nb, {});
    joint_qpos.assign(joints.size(), -1);
    joint_dof.assign(joints.size(), -1);

    int q = 0, v = 0;
    for (size_t j = 0; j < joints.size(); ++j) {
        const Joint& joint = joints[j];
        if (joint.child_body >= 0 && joint.child_body < nb) {
            body_joints[joint.child_body].push_back(static_cast<int>(j));
        }
        joint_qpos[j] = q;
        joint_dof[j] = v;
        if (joint.type == JointType::Free) {
            q += 7;
            v += 6;
        } else {
            q += 1;
            v += 1;
        }
    }
    nq = q;
    nv = v;
    if (neutral_pose.size() != nq) {
        neutral_pose = VecX::Zero(nq);
        if (!joints.empty() && joints[0].type == JointType::Free && !bodies.empty()) {
            neutral_pose.segment<3>(0) = bodies[0].attach_pos;
            const Quat& aq = bodies[0].attach_quat;
            neutral_pose[3] = aq.w();
            neutral_pose[4] = aq.x();
            neutral_pose[5] = aq.y();
            neutral_pose[6] = aq.z();
        }
    }
}

void ModelSpec::validate() const {
    const int nb = num_bodies();
    if (nb == 0) throw DataError("model has no bodies");

    // tree structure: bodies in topological order, parents precede children
    for (int i = 0; i < nb; ++i) {
        const BodySegment& b = bodies[i];
        if (i == 0) {
            if (b.parent != -1) throw DataError("body 0 (root) must have parent -1");
        } else {
            if (b.parent == i) throw DataError("body '" + b.name + "' is its own parent (cycle)");
            if (b.parent < 0 || b.parent >= nb)
                throw DataError("body '" + b.name + "' has dangling parent index");
            if (b.parent >= i)
                throw DataError("body '" + b.name + "' references a later body as parent (non-tree order)");
        }
        if (!(b.mass > 0.0)) throw DataError("body '" + b.name + "' has non-positive mass");
        if ((b.inertia - b.inertia.transpose()).norm() > 1e-9 * (1.0 + b.inertia.norm()))
            throw DataError("body '" + b.name + "' inertia is not symmetric");
        Eigen::SelfAdjointEigenSolver<Mat3> es(b.inertia);
        if (es.eigenvalues().minCoeff() <= 0.0)
            throw DataError("body '" + b.name + "' inertia is not positive definite");
    }

    if (joints.empty()) throw DataError("model has no joints");
    if (joints[0].type != JointType::Free || joints[0].child_body != 0)
        throw DataError("first joint must be the free root joint on body 0");
    for (size_t j = 0; j < joints.size(); ++j) {
        const Joint& joint = joints[j];
        if (joint.child_body < 0 || joint.child_body >= nb)
            throw DataError("joint '" + joint.name + "' has dangling child body");
        if (joint.type == JointType::Free) {
            if (j != 0) throw DataError("only the root joint may be free");
            continue;
        }
        if (joint.parent_body != bodies[joint.child_body].parent)
            throw DataError("joint '" + joint.name + "' parent does not match the body tree");
        if (std::abs(joint.axis.norm() - 1.0) > 1e-8)
            throw DataError("joint '" + joint.name + "' axis is not unit length");
        if (joint.limited && !(joint.lo < joint.hi))
            throw DataError("joint '" + joint.name + "' has empty range");
    }
    // every non-root body must be reachable through at least one joint
    for (int i = 1; i < nb; ++i) {
        if (body_joints.size() == static_cast<size_t>(nb) && body_joints[i].empty())
            throw DataError("body '" + bodies[i].name + "' has no joint (rigidly floating)");
    }

    int n_rfc = 0;
    for (size_t a = 0; a < actuators.size(); ++a) {
        const Actuator& act = actuators[a];
        switch (act.kind) {
            case ActuatorKind::Torque:
                if (act.joint < 0 || act.joint >= static_cast<int>(joints.size()))
                    throw DataError("actuator '" + act.name + "' has dangling joint");
                if (joints[act.joint].type != JointType::Hinge)
                    throw DataError("actuator '" + act.name + "' must target a hinge joint");
                if (act.lo != -1.0 || act.hi != 1.0)
                    throw DataError("torque actuator '" + act.name + "' bounds must be [-1, 1]");
                break;
            case ActuatorKind::Muscle:
                if (act.path.size() < 2)
                    throw DataError("muscle '" + act.name + "' has fewer than 2 via points");
                for (const MuscleViaPoint& vp : act.path) {
                    if (vp.body < 0 || vp.body >= nb)
                        throw DataError("muscle '" + act.name + "' has dangling via-point body");
                }
                if (act.lo != 0.0 || act.hi != 1.0)
                    throw DataError("muscle actuator '" + act.name + "' bounds must be [0, 1]");
                if (!(act.gear > 0.0))
                    throw DataError("muscle '" + act.name + "' has non-positive peak force");
                break;
            case ActuatorKind::Rfc:
                if (act.rfc_channel < 0 || act.rfc_channel > 5)
                    throw DataError("rfc actuator '" + act.name + "' has invalid channel");
                if (act.lo != -1.0 || act.hi != 1.0)
                    throw DataError("rfc actuator '" + act.name + "' bounds must be [-1, 1]");
                if (a != static_cast<size_t>(act.rfc_channel))
                    throw DataError("rfc actuators must come first, in channel order fx fy fz tx ty tz");
                ++n_rfc;
                break;
        }
    }
    if (n_rfc != 0 && n_rfc != 6)
        throw DataError("model must have exactly 0 or 6 rfc actuators");

    // scale groups: a body may sit in at most one group besides "overall"
    std::set<int> grouped;
    for (int g = 1; g < 8; ++g) {
        for (int b : scale_groups[g]) {
            if (b < 0 || b >= nb) throw DataError("scale group references dangling body");
            if (!grouped.insert(b).second)
                throw DataError("body '" + bodies[b].name + "' is in two scale groups");
        }
    }

    // contact geoms only on leg/foot bodies, matching side
    auto in_group = [&](int g, int b) {
        for (int x : scale_groups[g])
            if (x == b) return true;
        return false;
    };
    for (const ContactGeom& geom : contacts) {
        if (geom.body < 0 || geom.body >= nb)
            throw DataError("contact '" + geom.name + "' has dangling body");
        if (!(geom.radius > 0.0)) throw DataError("contact '" + geom.name + "' has non-positive radius");
        if (geom.side == 'L') {
            if (!in_group(3, geom.body))
                throw DataError("contact '" + geom.name + "' not on a left leg/foot body");
        } else if (geom.side == 'R') {
            if (!in_group(5, geom.body))
                throw DataError("contact '" + geom.name + "' not on a right leg/foot body");
        } else {
            throw DataError("contact '" + geom.name + "' side must be L or R");
        }
    }

    if (neutral_pose.size() != nq) throw DataError("neutral pose has wrong dimension");
    if (!neutral_pose.allFinite()) throw DataError("neutral pose has non-finite values");
}

int ModelSpec::num_muscles() const {
    int n = 0;
    for (const Actuator& a : actuators)
        if (a.kind == ActuatorKind::Muscle) ++n;
    return n;
}

int ModelSpec::num_rfc() const {
    int n = 0;
    for (const Actuator& a : actuators)
        if (a.kind == ActuatorKind::Rfc) ++n;
    return n;
}

double ModelSpec::total_mass() const {
    double m = 0.0;
    for (const BodySegment& b : bodies) m += b.mass;
    return m;
}

int ModelSpec::find_body(const std::string& body_name) const {
    for (int i = 0; i < num_bodies(); ++i)
        if (bodies[i].name == body_name) return i;
    return -1;
}

int ModelSpec::find_joint(const std::string& joint_name) const {
    for (size_t i = 0; i < joints.size(); ++i)
        if (joints[i].name == joint_name) return static_cast<int>(i);
    return -1;
}

double ModelSpec::body_scale(int body, const ScaleParams& beta) const {
    double s = beta[0];
    for (int g = 1; g < 8; ++g) {
        for (int b : scale_groups[g]) {
            if (b == body) return s * beta[g];
        }
    }
    return s;
}

bool ModelSpec::operator==(const ModelSpec& other) const {
    if (name != other.name) return false;
    if (gravity != other.gravity) return false;
    if (bodies.size() != other.bodies.size() || joints.size() != other.joints.size() ||
        actuators.size() != other.actuators.size() || contacts.size() != other.contacts.size())
        return false;
    for (size_t i = 0; i < bodies.size(); ++i) {
        const BodySegment& a = bodies[i];
        const BodySegment& b = other.bodies[i];
        if (a.name != b.name || a.parent != b.parent || a.mass != b.mass || a.com != b.com ||
            a.inertia != b.inertia || a.attach_pos != b.attach_pos ||
            a.attach_quat.coeffs() != b.attach_quat.coeffs())
            return false;
    }
    for (size_t i = 0; i < joints.size(); ++i) {
        const Joint& a = joints[i];
        const Joint& b = other.joints[i];
        if (a.name != b.name || a.type != b.type || a.parent_body != b.parent_body ||
            a.child_body != b.child_body || a.axis != b.axis || a.lo != b.lo || a.hi != b.hi ||
            a.limited != b.limited)
            return false;
    }
    for (size_t i = 0; i < actuators.size(); ++i) {
        const Actuator& a = actuators[i];
        const Actuator& b = other.actuators[i];
        if (a.name != b.name || a.kind != b.kind || a.gear != b.gear || a.lo != b.lo ||
            a.hi != b.hi || a.joint != b.joint || a.rfc_channel != b.rfc_channel ||
            a.rest_length != b.rest_length || a.vmax != b.vmax || a.path.size() != b.path.size())
            return false;
        for (size_t p = 0; p < a.path.size(); ++p) {
            if (a.path[p].body != b.path[p].body || a.path[p].offset != b.path[p].offset)
                return false;
        }
    }
    for (size_t i = 0; i < contacts.size(); ++i) {
        const ContactGeom& a = contacts[i];
        const ContactGeom& b = other.contacts[i];
        if (a.name != b.name || a.body != b.body || a.offset != b.offset ||
            a.radius != b.radius || a.side != b.side)
            return false;
    }
    for (int g = 0; g < 8; ++g)
        if (scale_groups[g] != other.scale_groups[g]) return false;
    if (neutral_pose.size() != other.neutral_pose.size()) return false;
    for (int i = 0; i < neutral_pose.size(); ++i)
        if (neutral_pose[i] != other.neutral_pose[i]) return false;
    return true;
}

}  // namespace kintwin
