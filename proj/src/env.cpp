#include "kintwin/env.hpp"

#include "kintwin/errors.hpp"

namespace kintwin {

ImitationEnv::ImitationEnv(ModelSpec base_model, EnvConfig cfg)
    : base_model_(std::move(base_model)), model_(base_model_), cfg_(std::move(cfg)) {
    cfg_.obs.validate();
    weights_ = cfg_.weights ? *cfg_.weights : RewardWeights::defaults(base_model_);
    obs_dim_ = observation_dim(base_model_, cfg_.obs);
    prev_action_ = VecX::Zero(base_model_.num_actions());
    state_ = make_state(base_model_);
}

VecX ImitationEnv::reset(Trajectory window, Rng& rng) {
    window.check_model(base_model_);
    if (window.frames() < 2) throw DataError("env reset: window needs at least 2 frames");

    bool same_beta = has_window_;
    for (int k = 0; same_beta && k < ScaleParams::kCount; ++k)
        same_beta = current_beta_[k] == window.beta[k];
    if (!same_beta) {
        model_ = scale_model(base_model_, window.beta);
        current_beta_ = window.beta;
    }
    window_ = std::move(window);
    has_window_ = true;

    VecX qpos = window_.qpos.row(0).transpose();
    VecX qvel = window_.qvel.row(0).transpose();
    perturb_initial_state(qpos, qvel, cfg_.aug, rng);

    state_ = make_state(model_, qpos);
    state_.qvel = qvel;
    xy_offset_ = Vec2(state_.qpos[0] - window_.qpos(0, 0), state_.qpos[1] - window_.qpos(0, 1));
    prev_action_.setZero();
    t_ = 0;
    steps_taken_ = 0;
    termination_ = Termination::Running;

    return build_observation(model_, state_, window_, t_, prev_action_, cfg_.obs);
}

EnvStepResult ImitationEnv::step(const VecX& action) {
    if (!has_window_) throw DataError("env step before reset");
    if (action.size() != model_.num_actions())
        throw DataError("env step: action dimension mismatch (got " +
                        std::to_string(action.size()) + ", model has " +
                        std::to_string(model_.num_actions()) + ")");
    if (done()) throw DataError("env step after episode end");

    EnvStepResult out;

    VecX clamped = action;
    for (int i = 0; i < model_.num_actions(); ++i)
        clamped[i] = std::clamp(clamped[i], model_.actuators[i].lo, model_.actuators[i].hi);

    bool diverged = false;
    try {
        Action a;
        a.values = clamped;
        state_ = kintwin::step(model_, state_, a, cfg_.sim);
    } catch (const NumericError&) {
        diverged = true;
    }

    ++t_;
    ++steps_taken_;

    if (diverged) {
        termination_ = Termination::Diverged;
        out.reward = RewardBreakdown{};
        out.done = true;
        out.info.termination = termination_;
        out.info.failed = true;
        out.info.torques = VecX::Zero(model_.nv);
        out.info.activations = state_.activations;
        // observation from the last finite state, frame index clamped
        const int idx = std::min(t_, window_.frames() - 1);
        out.obs = build_observation(model_, state_, window_, idx, clamped, cfg_.obs);
        prev_action_ = clamped;
        return out;
    }

    out.reward = compute_reward(model_, state_, window_.qpos.row(t_), window_.qvel.row(t_),
                                clamped, prev_action_, weights_, xy_offset_);

    const double pelvis_z = state_.pelvis_height();
    if (pelvis_z <= weights_.pelvis_lo) {
        termination_ = Termination::PelvisLow;
        out.info.failed = true;
    } else if (pelvis_z >= weights_.pelvis_hi) {
        termination_ = Termination::PelvisHigh;
        out.info.failed = true;
    } else if (t_ >= window_.frames() - 1 || steps_taken_ >= cfg_.max_steps) {
        termination_ = Termination::Completed;
        out.info.truncated = true;
    }
    out.done = termination_ != Termination::Running;
    out.info.termination = termination_;
    out.info.grf = ground_reaction(model_, state_);
    out.info.torques = state_.actuator_forces;
    out.info.activations = state_.activations;

    prev_action_ = clamped;
    out.obs = build_observation(model_, state_, window_, std::min(t_, window_.frames() - 1),
                                prev_action_, cfg_.obs);
    return out;
}

void ImitationEnv::restore(const Trajectory& window, const SimState& state, int t,
                           const VecX& prev_action, Termination termination,
                           const Vec2& xy_offset) {
    Trajectory w = window;
    w.check_model(base_model_);
    bool same_beta = has_window_;
    for (int k = 0; same_beta && k < ScaleParams::kCount; ++k)
        same_beta = current_beta_[k] == w.beta[k];
    if (!same_beta) {
        model_ = scale_model(base_model_, w.beta);
        current_beta_ = w.beta;
    }
    window_ = std::move(w);
    has_window_ = true;
    state_ = state;
    t_ = t;
    steps_taken_ = t;
    prev_action_ = prev_action;
    termination_ = termination;
    xy_offset_ = xy_offset;
}

}  // namespace kintwin
