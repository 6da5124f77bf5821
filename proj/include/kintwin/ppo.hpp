#pragma once

#include <cstdint>
#include <vector>

#include "kintwin/mlp.hpp"
#include "kintwin/normalizer.hpp"
#include "kintwin/rng.hpp"

namespace kintwin {

struct TrainConfig {
    int num_envs = 256;
    int64_t total_steps = 2'000'000;
    int batch_size = 32;        // unrolled sequences per minibatch
    int num_minibatches = 8;    // minibatches per epoch
    int unroll = 10;            // steps per sequence
    int updates_per_batch = 4;  // epochs over each collected batch
    double lr = 2e-4;
    double final_lr_factor = 0.1;
    int64_t lr_schedule_updates = 50'000;
    double clip_eps = 0.1;
    double gamma = 0.95;
    double gae_lambda = 0.95;
    double entropy_coef = 1e-3;
    double value_coef = 0.5;
    double max_grad_norm = 1.0;
    std::vector<int> policy_hidden = {256, 256, 256, 256, 256, 256, 256, 256};
    std::vector<int> value_hidden = {1024, 1024, 1024, 1024, 1024, 1024, 1024, 1024};
    double init_log_std = -0.5;
    uint64_t seed = 0;

    int sequences_per_update() const { return batch_size * num_minibatches; }
    int64_t steps_per_update() const {
        return static_cast<int64_t>(sequences_per_update()) * unroll;
    }
    void validate() const;
};

// Diagonal Gaussian with a learned state-independent log-std, squashed to the
// per-dimension action bounds through tanh.
class GaussianTanhPolicy {
public:
    GaussianTanhPolicy() = default;
    GaussianTanhPolicy(int obs_dim, const std::vector<int>& hidden, const VecX& lo, const VecX& hi,
                       double init_log_std, Rng& rng);

    static constexpr double kLogStdMin = -5.0;
    static constexpr double kLogStdMax = 2.0;

    // Draw pre-squash samples u and squashed actions for a batch of
    // observations; logprob includes the squash correction.
    void sample(const MatX& obs, Rng& rng, MatX& u, MatX& actions, VecX& logprob) const;
    // Deterministic: u = mean.
    void mode(const MatX& obs, MatX& actions) const;
    VecX log_prob(const MatX& obs, const MatX& u) const;  // recompute under current params

    VecX squash_row(const VecX& u) const;

    int action_size() const { return static_cast<int>(lo_.size()); }
    int num_params() const { return net.num_params() + action_size(); }
    void clamp_log_std();

    Mlp net;
    VecX log_std;
    const VecX& lo() const { return lo_; }
    const VecX& hi() const { return hi_; }
    void set_bounds(VecX lo, VecX hi) { lo_ = std::move(lo); hi_ = std::move(hi); }

private:
    VecX lo_, hi_;
};

// One collected on-policy batch (sequence-major: index = seq * unroll + t).
struct RolloutBatch {
    int num_seqs = 0;
    int unroll = 0;
    MatX obs;      // (S*T) x D, already normalized
    MatX u;        // pre-squash policy samples
    MatX action;   // squashed actions as sent to the env
    VecX logprob;  // under the collecting policy
    VecX reward;
    std::vector<uint8_t> terminated;  // env reached a terminal state
    std::vector<uint8_t> truncated;   // episode cut (window end / step cap)
    MatX boundary_obs;                // successor obs at each done step and sequence end
    std::vector<int> boundary_index;  // transition index each boundary row belongs to

    int size() const { return num_seqs * unroll; }
};

struct GaeResult {
    VecX advantages;
    VecX value_targets;
    VecX values;  // V(obs) under the current value net
};

// Standard generalized-advantage recursion over each sequence, honoring
// terminal (no bootstrap) and truncation (bootstrap, chain cut) boundaries.
GaeResult gae_advantages(const RolloutBatch& batch, const Mlp& value_net, double gamma,
                         double lambda);

// Pure-function form used by tests: per-sequence arrays.
void gae_sequence(const double* rewards, const double* values, const double* next_values,
                  const uint8_t* terminated, const uint8_t* done, int len, double gamma,
                  double lambda, double* advantages, double* value_targets);

struct PpoStats {
    double policy_loss = 0.0;
    double value_loss = 0.0;
    double entropy = 0.0;
    double clip_fraction = 0.0;
    double approx_kl = 0.0;
    double grad_norm = 0.0;
    double total_loss = 0.0;
};

// Clipped-surrogate loss + value MSE + entropy bonus over one minibatch;
// analytic gradients for every parameter. Exposed for the finite-difference
// check as well as the optimizer loop.
struct MinibatchView {
    const MatX& obs;
    const MatX& u;
    const VecX& logprob_old;
    const VecX& advantages;
    const VecX& value_targets;
};

PpoStats ppo_loss_and_grad(const GaussianTanhPolicy& policy, const Mlp& value_net,
                           const MinibatchView& mb, const TrainConfig& cfg, Mlp& policy_grad,
                           VecX& log_std_grad, Mlp& value_grad);

class Adam {
public:
    Adam() = default;
    explicit Adam(int dim, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
        : m_(VecX::Zero(dim)), v_(VecX::Zero(dim)), beta1_(beta1), beta2_(beta2), eps_(eps) {}

    void step(VecX& params, const VecX& grad, double lr);

    int64_t t() const { return t_; }
    const VecX& m() const { return m_; }
    const VecX& v() const { return v_; }
    void restore(int64_t t, VecX m, VecX v) {
        t_ = t;
        m_ = std::move(m);
        v_ = std::move(v);
    }

private:
    VecX m_, v_;
    double beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
    int64_t t_ = 0;
};

// Cosine decay from lr to final_factor * lr over schedule_updates; constant
// afterwards.
double cosine_lr(double lr, double final_factor, int64_t update, int64_t schedule_updates);

// One PPO update: updates_per_batch epochs of num_minibatches minibatches over
// the batch. Returns stats averaged over all minibatches.
PpoStats ppo_update(GaussianTanhPolicy& policy, Mlp& value_net, const RolloutBatch& batch,
                    const GaeResult& gae, const TrainConfig& cfg, Adam& policy_adam,
                    Adam& value_adam, double lr, Rng& shuffle_rng);

}  // namespace kintwin
