#pragma once

#include <optional>
#include <vector>

#include "kintwin/math_utils.hpp"
#include "kintwin/model.hpp"

namespace kintwin {

struct ContactForce {
    int geom = -1;
    Vec3 point = Vec3::Zero();  // world application point, on the floor plane
    Vec3 force = Vec3::Zero();  // world force on the body
};

struct SimState {
    VecX qpos;
    VecX qvel;
    double time = 0.0;
    VecX activations;                        // per-muscle activation state
    std::vector<ContactForce> contact_forces;  // from the last substep
    VecX actuator_forces;                    // per-dof generalized actuator force (nv)

    Vec3 root_pos() const { return qpos.segment<3>(0); }
    Quat root_quat() const { return Quat(qpos[3], qpos[4], qpos[5], qpos[6]); }
    double pelvis_height() const { return qpos[2]; }
    bool finite() const {
        return qpos.allFinite() && qvel.allFinite() &&
               (activations.size() == 0 || activations.allFinite());
    }
};

// Flat action vector, one entry per actuator in model order (rfc channels
// first when present).
struct Action {
    VecX values;

    static Action zero(const ModelSpec& model) {
        Action a;
        a.values = VecX::Zero(model.num_actions());
        return a;
    }
};

struct GroundReaction {
    double vertical = 0.0;        // N, >= 0
    Vec2 horizontal = Vec2::Zero();  // N
    std::optional<Vec2> cop;      // world xy, defined only when vertical > 0
};

struct GroundReactionPair {
    GroundReaction left;
    GroundReaction right;
};

// Vertical-force weighted mean of contact points. Empty when no vertical load.
std::optional<Vec2> center_of_pressure(const std::vector<ContactForce>& contacts);

// Group the recorded contact forces by geom side.
GroundReactionPair ground_reaction(const ModelSpec& model, const SimState& state);

}  // namespace kintwin
