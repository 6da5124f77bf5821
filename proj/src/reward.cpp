#include "kintwin/reward.hpp"

#include "kintwin/errors.hpp"

namespace kintwin {

RewardWeights RewardWeights::defaults(const ModelSpec& model) {
    RewardWeights w;
    w.w_q = VecX::Constant(model.nv, 10.0);
    w.w_q[2] = 0.0;  // pelvis height tracked loosely on purpose
    w.w_q[3] = 2.0;  // pelvis orientation
    w.w_q[4] = 2.0;
    w.w_q[5] = 2.0;
    w.w_qvel = VecX::Constant(model.nv, 0.01);
    w.w_qvel.head<6>().setConstant(0.1);
    return w;
}

RewardBreakdown compute_reward(const ModelSpec& model, const SimState& next_state,
                               const Eigen::Ref<const Eigen::RowVectorXd>& target_qpos,
                               const Eigen::Ref<const Eigen::RowVectorXd>& target_qvel,
                               const VecX& action, const VecX& prev_action,
                               const RewardWeights& w, const Vec2& xy_offset) {
    if (target_qpos.size() != model.nq || target_qvel.size() != model.nv)
        throw DataError("compute_reward: target dimension mismatch");
    if (action.size() != model.num_actions() || prev_action.size() != model.num_actions())
        throw DataError("compute_reward: action dimension mismatch");
    if (w.w_q.size() != model.nv || w.w_qvel.size() != model.nv)
        throw DataError("compute_reward: weight dimension mismatch");

    RewardBreakdown out;

    VecX pose_err(model.nv);
    pose_err[0] = (target_qpos[0] + xy_offset.x()) - next_state.qpos[0];
    pose_err[1] = (target_qpos[1] + xy_offset.y()) - next_state.qpos[1];
    pose_err[2] = target_qpos[2] - next_state.qpos[2];
    const Quat target_quat(target_qpos[3], target_qpos[4], target_qpos[5], target_qpos[6]);
    pose_err.segment<3>(3) = quat_diff(target_quat, next_state.root_quat());
    for (int c = 7; c < model.nq; ++c) pose_err[c - 1] = target_qpos[c] - next_state.qpos[c];

    for (int i = 0; i < model.nv; ++i) out.l_q += w.w_q[i] * pose_err[i] * pose_err[i];

    for (int i = 0; i < model.nv; ++i) {
        const double d = target_qvel[i] - next_state.qvel[i];
        out.l_qvel += w.w_qvel[i] * d * d;
    }

    out.l_a = w.w_a * action.squaredNorm();
    out.l_a += w.w_da * (action - prev_action).squaredNorm();
    if (model.num_rfc() > 0) out.l_a += w.w_rfc * action.head<6>().squaredNorm();

    out.total = w.r_alive - out.l_q - out.l_qvel - out.l_a;
    return out;
}

}  // namespace kintwin
