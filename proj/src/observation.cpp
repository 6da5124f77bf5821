#include "kintwin/observation.hpp"

#include "kintwin/errors.hpp"

namespace kintwin {

void ObservationConfig::validate() const {
    if (future_offsets.empty()) throw ConfigError("future_offsets must not be empty");
    int prev = -1;
    for (int k : future_offsets) {
        if (k < 0) throw ConfigError("future offsets must be non-negative");
        if (k <= prev) throw ConfigError("future offsets must be strictly increasing");
        prev = k;
    }
}

int observation_dim(const ModelSpec& model, const ObservationConfig& cfg) {
    const int nb = model.num_bodies();
    int dim = (model.nq - 2) + model.nv;  // pose without horizontal root, velocity
    if (cfg.include_body_inertia) dim += 10 * nb;
    dim += 6 * nb;  // COM-frame velocities
    if (cfg.include_actuator_forces) dim += model.nv;
    dim += model.num_actions();        // previous action
    dim += ScaleParams::kCount;        // beta
    dim += model.nq;                   // current target pose (relative horizontally)
    dim += static_cast<int>(cfg.future_offsets.size()) * 2 * model.nv;
    return dim;
}

VecX build_observation(const ModelSpec& model, const SimState& state, const KinCache& kin,
                       const Trajectory& window, int t, const VecX& prev_action,
                       const ObservationConfig& cfg) {
    if (prev_action.size() != model.num_actions())
        throw DataError("build_observation: previous action dimension mismatch");
    if (window.nq() != model.nq)
        throw DataError("build_observation: trajectory does not match the model");
    if (t < 0 || t >= window.frames()) throw DataError("build_observation: frame index out of range");

    VecX obs(observation_dim(model, cfg));
    int at = 0;

    // pose, horizontal root excluded
    obs.segment(at, model.nq - 2) = state.qpos.tail(model.nq - 2);
    at += model.nq - 2;
    obs.segment(at, model.nv) = state.qvel;
    at += model.nv;

    if (cfg.include_body_inertia) {
        for (const BodySegment& b : model.bodies) {
            obs[at + 0] = b.mass;
            obs[at + 1] = b.inertia(0, 0);
            obs[at + 2] = b.inertia(1, 1);
            obs[at + 3] = b.inertia(2, 2);
            obs[at + 4] = b.inertia(0, 1);
            obs[at + 5] = b.inertia(0, 2);
            obs[at + 6] = b.inertia(1, 2);
            obs.segment<3>(at + 7) = b.com;
            at += 10;
        }
    }
    for (int b = 0; b < model.num_bodies(); ++b) {
        obs.segment<3>(at) = kin.body[b].ang_vel;
        obs.segment<3>(at + 3) = kin.body[b].com_vel;
        at += 6;
    }
    if (cfg.include_actuator_forces) {
        obs.segment(at, model.nv) = state.actuator_forces;
        at += model.nv;
    }

    // goal block
    obs.segment(at, model.num_actions()) = prev_action;
    at += model.num_actions();
    for (int k = 0; k < ScaleParams::kCount; ++k) obs[at + k] = window.beta[k];
    at += ScaleParams::kCount;

    const Quat sim_quat = state.root_quat();
    obs[at + 0] = window.qpos(t, 0) - state.qpos[0];
    obs[at + 1] = window.qpos(t, 1) - state.qpos[1];
    for (int c = 2; c < model.nq; ++c) obs[at + c] = window.qpos(t, c);
    at += model.nq;

    for (int k : cfg.future_offsets) {
        const int idx = std::min(t + k, window.frames() - 1);
        // pose difference: translation for positions, rotation vector for the root
        obs.segment<3>(at) =
            Vec3(window.qpos(idx, 0), window.qpos(idx, 1), window.qpos(idx, 2)) -
            state.qpos.segment<3>(0);
        obs.segment<3>(at + 3) = quat_diff(window.root_quat(idx), sim_quat);
        for (int c = 7; c < model.nq; ++c)
            obs[at + 6 + (c - 7)] = window.qpos(idx, c) - state.qpos[c];
        at += model.nv;
        for (int c = 0; c < model.nv; ++c) obs[at + c] = window.qvel(idx, c) - state.qvel[c];
        at += model.nv;
    }

    if (at != obs.size()) throw NumericError("observation layout mismatch");
    if (!obs.allFinite()) throw NumericError("non-finite observation");
    return obs;
}

VecX build_observation(const ModelSpec& model, const SimState& state, const Trajectory& window,
                       int t, const VecX& prev_action, const ObservationConfig& cfg) {
    KinCache kin;
    forward_kinematics(model, state.qpos, state.qvel, kin);
    return build_observation(model, state, kin, window, t, prev_action, cfg);
}

}  // namespace kintwin
