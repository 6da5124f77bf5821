#pragma once

#include <optional>

#include "kintwin/augment.hpp"
#include "kintwin/engine.hpp"
#include "kintwin/observation.hpp"
#include "kintwin/reward.hpp"
#include "kintwin/rng.hpp"

namespace kintwin {

enum class Termination { Running, Completed, PelvisLow, PelvisHigh, Diverged };

struct EnvConfig {
    ObservationConfig obs;
    AugmentationConfig aug;
    SimConfig sim;
    int max_steps = 600;
    std::optional<RewardWeights> weights;  // defaults derived from the model
};

struct EnvStepInfo {
    GroundReactionPair grf;
    VecX torques;      // per-dof generalized actuator force
    VecX activations;  // per-muscle
    Termination termination = Termination::Running;
    bool failed = false;     // pelvis bound violation
    bool truncated = false;  // window exhausted or step cap reached
};

struct EnvStepResult {
    VecX obs;
    RewardBreakdown reward;
    bool done = false;
    EnvStepInfo info;
};

// Goal-conditioned imitation environment over one simulated model. Episodes
// run over a pre-sampled target window at the control rate; reward compares
// the post-step state to the next target frame.
class ImitationEnv {
public:
    ImitationEnv(ModelSpec base_model, EnvConfig cfg);

    // Scales the model to the window's beta, sets the state to frame 0 (plus
    // configured reset noise) and returns the first observation.
    VecX reset(Trajectory window, Rng& rng);

    EnvStepResult step(const VecX& action);

    int observation_size() const { return obs_dim_; }
    int action_size() const { return base_model_.num_actions(); }
    int steps_available() const { return window_.frames() - 1; }
    int step_index() const { return t_; }
    const ModelSpec& model() const { return model_; }
    const ModelSpec& base_model() const { return base_model_; }
    const SimState& state() const { return state_; }
    const Trajectory& window() const { return window_; }
    const EnvConfig& config() const { return cfg_; }
    Termination termination() const { return termination_; }
    bool done() const { return termination_ != Termination::Running; }

    // Direct state access for checkpointing and scripted control.
    void restore(const Trajectory& window, const SimState& state, int t, const VecX& prev_action,
                 Termination termination, const Vec2& xy_offset);
    const VecX& prev_action() const { return prev_action_; }
    const Vec2& xy_offset() const { return xy_offset_; }

private:
    ModelSpec base_model_;
    ModelSpec model_;  // scaled
    EnvConfig cfg_;
    RewardWeights weights_;
    int obs_dim_ = 0;

    Trajectory window_;
    SimState state_;
    VecX prev_action_;
    Vec2 xy_offset_ = Vec2::Zero();  // sim minus target at episode start
    int t_ = 0;                      // current target frame index
    int steps_taken_ = 0;
    Termination termination_ = Termination::Running;
    ScaleParams current_beta_;
    bool has_window_ = false;
};

}  // namespace kintwin
