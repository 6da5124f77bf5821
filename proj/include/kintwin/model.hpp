#pragma once

#include <array>
#include <string>
#include <vector>

#include "kintwin/math_utils.hpp"

namespace kintwin {

struct BodySegment {
    std::string name;
    int parent = -1;                       // -1 only for the root body
    double mass = 0.0;                     // kg
    Vec3 com = Vec3::Zero();               // center of mass, local frame (m)
    Mat3 inertia = Mat3::Identity();       // about COM, local frame (kg m^2)
    Vec3 attach_pos = Vec3::Zero();        // position in parent frame (m)
    Quat attach_quat = Quat::Identity();   // orientation in parent frame
};

enum class JointType { Hinge, Free };

struct Joint {
    std::string name;
    JointType type = JointType::Hinge;
    int parent_body = -1;
    int child_body = -1;        // the body this joint moves
    Vec3 axis = Vec3::UnitZ();  // hinge axis in the child's pre-rotation frame
    double lo = 0.0;            // radians
    double hi = 0.0;
    bool limited = false;
};

enum class ActuatorKind { Torque, Muscle, Rfc };

struct MuscleViaPoint {
    int body = -1;
    Vec3 offset = Vec3::Zero();  // local frame (m)
};

struct Actuator {
    std::string name;
    ActuatorKind kind = ActuatorKind::Torque;
    double gear = 0.0;      // N*m per unit action (torque/rfc torque), N (rfc force), N peak force (muscle)
    double lo = -1.0;       // action bounds
    double hi = 1.0;
    // torque
    int joint = -1;
    // rfc: 0..5 -> fx fy fz tx ty tz, applied at the root body origin
    int rfc_channel = -1;
    // muscle
    std::vector<MuscleViaPoint> path;
    double rest_length = 0.0;   // path length in the neutral pose (m)
    double vmax = 10.0;         // max shortening velocity, rest lengths per second
};

struct ContactGeom {
    std::string name;
    int body = -1;
    Vec3 offset = Vec3::Zero();  // sphere center, local frame
    double radius = 0.0;
    char side = 'N';             // 'L' or 'R'
};

// Eight per-participant body scale multipliers.
struct ScaleParams {
    static constexpr int kCount = 8;
    // overall, pelvis, left thigh, left leg+foot, right thigh, right leg+foot,
    // left arm, right arm
    std::array<double, kCount> values{1, 1, 1, 1, 1, 1, 1, 1};

    static ScaleParams ones() { return ScaleParams{}; }
    double overall() const { return values[0]; }
    double operator[](int i) const { return values[i]; }
    double& operator[](int i) { return values[i]; }
    bool all_positive() const {
        for (double v : values)
            if (!(v > 0.0)) return false;
        return true;
    }
};

// Canonical scale-group names, index-aligned with ScaleParams (group 0 is
// "overall" and always applies to every body).
inline const std::array<std::string, 8>& scale_group_names() {
    static const std::array<std::string, 8> names = {
        "overall", "pelvis", "l_thigh", "l_leg", "r_thigh", "r_leg", "l_arm", "r_arm"};
    return names;
}

struct ModelSpec {
    std::string name;
    Vec3 gravity = Vec3(0, 0, -9.81);
    std::vector<BodySegment> bodies;
    std::vector<Joint> joints;
    std::vector<Actuator> actuators;
    std::vector<ContactGeom> contacts;
    // scale_groups[g] lists body indices in group g; group 0 (overall) is implicit
    // and may be left empty.
    std::array<std::vector<int>, 8> scale_groups;
    VecX neutral_pose;  // qpos0

    // --- derived indexing, filled by finalize() ---
    int nq = 0;  // position coordinates (root 7 + one per hinge)
    int nv = 0;  // velocity coordinates (root 6 + one per hinge)
    std::vector<std::vector<int>> body_joints;  // joint indices per body, in order
    std::vector<int> joint_qpos;                // qpos index per joint (free: start of 7)
    std::vector<int> joint_dof;                 // dof index per joint (free: start of 6)

    void finalize();
    // Throws DataError on any violated structural invariant.
    void validate() const;

    int num_bodies() const { return static_cast<int>(bodies.size()); }
    int num_actions() const { return static_cast<int>(actuators.size()); }
    int num_muscles() const;
    int num_rfc() const;
    double total_mass() const;
    int find_body(const std::string& body_name) const;  // -1 if absent
    int find_joint(const std::string& joint_name) const;
    bool has_muscles() const { return num_muscles() > 0; }
    // overall * group scale for one body under the given parameters
    double body_scale(int body, const ScaleParams& beta) const;

    bool operator==(const ModelSpec& other) const;
};

// Volume-based mass rescaling can be disabled (masses then stay fixed while
// geometry scales).
struct ScalingOptions {
    bool scale_mass = true;
};

ModelSpec apply_scaling(const ModelSpec& model, const ScaleParams& beta,
                        const ScalingOptions& opts = {});

// Recompute each muscle's rest path length with the model posed at neutral_pose.
ModelSpec rescale_muscles(const ModelSpec& model);

// Convenience: apply_scaling then (if the model has muscles) rescale_muscles.
ModelSpec scale_model(const ModelSpec& model, const ScaleParams& beta,
                      const ScalingOptions& opts = {});

}  // namespace kintwin
