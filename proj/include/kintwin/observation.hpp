#pragma once

#include <vector>

#include "kintwin/kinematics.hpp"
#include "kintwin/model.hpp"
#include "kintwin/sim_state.hpp"
#include "kintwin/trajectory.hpp"

namespace kintwin {

struct ObservationConfig {
    std::vector<int> future_offsets = {0, 1, 2, 4, 8, 16};
    bool include_body_inertia = true;
    bool include_actuator_forces = true;

    void validate() const;
};

// Fixed for a given (model, config); see docs/formats.md for the layout.
int observation_dim(const ModelSpec& model, const ObservationConfig& cfg);

// State block: qpos without the horizontal root position, qvel, per-body
// mass/inertia descriptors, per-body COM velocities, per-dof actuator forces.
// Goal block: previous action, beta, target pose (horizontal root relative to
// the simulated root), and per future offset the target-minus-state
// differences with a quaternion difference for the root orientation.
// Future indices past the window end clamp to the final frame.
VecX build_observation(const ModelSpec& model, const SimState& state, const KinCache& kin,
                       const Trajectory& window, int t, const VecX& prev_action,
                       const ObservationConfig& cfg);

// Convenience overload running its own kinematics pass.
VecX build_observation(const ModelSpec& model, const SimState& state, const Trajectory& window,
                       int t, const VecX& prev_action, const ObservationConfig& cfg);

}  // namespace kintwin
