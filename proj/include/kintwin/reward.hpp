#pragma once

#include "kintwin/math_utils.hpp"
#include "kintwin/model.hpp"
#include "kintwin/sim_state.hpp"

namespace kintwin {

struct RewardWeights {
    // per velocity-coordinate weights: [xy(2), z(1), orientation(3), joints]
    VecX w_q;
    VecX w_qvel;
    double w_a = 0.01;
    double w_da = 0.01;
    double w_rfc = 0.075;
    double r_alive = 10.0;
    double pelvis_lo = 0.3;  // m, episode terminates outside (lo, hi)
    double pelvis_hi = 2.0;

    // Pose weight 10 everywhere except pelvis height (0) and pelvis
    // orientation (2); velocity weight 0.1 for the root, 0.01 for joints.
    static RewardWeights defaults(const ModelSpec& model);
};

struct RewardBreakdown {
    double l_q = 0.0;
    double l_qvel = 0.0;
    double l_a = 0.0;
    double total = 0.0;
};

// Squared tracking errors plus action costs; total = r_alive - l_q - l_qvel -
// l_a evaluated left to right. The horizontal pelvis error compares
// displacements: xy_offset is added to the target so that absolute room
// position does not enter (pass the episode-start offset).
RewardBreakdown compute_reward(const ModelSpec& model, const SimState& next_state,
                               const Eigen::Ref<const Eigen::RowVectorXd>& target_qpos,
                               const Eigen::Ref<const Eigen::RowVectorXd>& target_qvel,
                               const VecX& action, const VecX& prev_action,
                               const RewardWeights& w, const Vec2& xy_offset = Vec2::Zero());

}  // namespace kintwin
