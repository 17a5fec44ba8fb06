#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "pathlab/agent/adam.hpp"
#include "pathlab/agent/config.hpp"
#include "pathlab/agent/mlp.hpp"
#include "pathlab/agent/policy.hpp"
#include "pathlab/agent/replay_buffer.hpp"
#include "pathlab/rng.hpp"

namespace pathlab::agent {

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
Matrix<Scalar> stack_rows(const Matrix<Scalar>& top, const Matrix<Scalar>& bottom) {
  Matrix<Scalar> m(top.rows() + bottom.rows(), top.cols());
  m << top, bottom;
  return m;
}

/// y = r + gamma * (1 - terminated) * (min(Q1', Q2')(s', a') - alpha * log pi(a'|s')),
/// with a' drawn from the current policy using `next_noise`.
template <typename Scalar>
RowVector<Scalar> critic_targets(const Mlp<Scalar>& actor, const Mlp<Scalar>& q1_target, const Mlp<Scalar>& q2_target,
                                 const Batch<Scalar>& batch, const Matrix<Scalar>& next_noise, Scalar alpha,
                                 Scalar gamma) {
  const PolicySample<Scalar> next = squash_sample<Scalar>(actor.forward(batch.next_obs), next_noise);
  const Matrix<Scalar> input = stack_rows<Scalar>(batch.next_obs, next.action);
  const RowVector<Scalar> q1 = q1_target.forward(input).row(0);
  const RowVector<Scalar> q2 = q2_target.forward(input).row(0);
  const RowVector<Scalar> soft = q1.cwiseMin(q2) - alpha * next.log_prob;
  return batch.rewards.array() + gamma * (Scalar(1) - batch.terminated.array()) * soft.array();
}

/// 0.5 * mean((Q(s, a) - y)^2); gradients are added into `grads` when given.
template <typename Scalar>
Scalar critic_loss(const Mlp<Scalar>& critic, const Matrix<Scalar>& obs, const Matrix<Scalar>& actions,
                   const RowVector<Scalar>& targets, LayerStack<Scalar>* grads) {
  typename Mlp<Scalar>::Tape tape;
  const RowVector<Scalar> q = critic.forward(stack_rows<Scalar>(obs, actions), tape).row(0);
  const RowVector<Scalar> err = q - targets;
  const auto n = static_cast<Scalar>(obs.cols());
  if (grads) critic.backward(tape, Matrix<Scalar>(err / n), grads);
  return Scalar(0.5) * err.squaredNorm() / n;
}

struct ActorLossWeights {
  double alpha = 0.2;
  bool caps = false;
  double lambda_temporal = 0.0;
  double lambda_spatial = 0.0;
};

template <typename Scalar>
struct ActorLossTerms {
  Scalar total = 0;
  Scalar policy = 0;  // mean(alpha * log pi - min Q)
  Scalar temporal = 0;
  Scalar spatial = 0;
  Scalar mean_log_prob = 0;
  Scalar mean_q = 0;
};

/// Reparameterized actor objective, optionally with CAPS terms:
///   mean(alpha * log pi(a|s) - min(Q1, Q2)(s, a)) + l_T * temporal + l_S * spatial
/// where a = tanh(mu + sigma * noise) and the spatial term compares obs with
/// obs + perturbation. Critics are held fixed; actor gradients go into `grads`.
template <typename Scalar>
ActorLossTerms<Scalar> actor_loss(const Mlp<Scalar>& actor, const Mlp<Scalar>& q1, const Mlp<Scalar>& q2,
                                  const Matrix<Scalar>& obs, const Matrix<Scalar>& next_obs,
                                  const Matrix<Scalar>& noise, const Matrix<Scalar>& perturbation,
                                  const ActorLossWeights& w, LayerStack<Scalar>* grads) {
  const Eigen::Index n = obs.cols();
  const Eigen::Index dim = actor.output_dim() / 2;
  const auto nb = static_cast<Scalar>(n);
  const auto alpha = static_cast<Scalar>(w.alpha);

  Matrix<Scalar> input;
  if (w.caps) {
    input.resize(obs.rows(), 3 * n);
    input << obs, next_obs, obs + perturbation;
  } else {
    input = obs;
  }
  typename Mlp<Scalar>::Tape actor_tape;
  const Matrix<Scalar> heads = actor.forward(input, actor_tape);
  const PolicySample<Scalar> s = squash_sample<Scalar>(heads.leftCols(n), noise);

  const Matrix<Scalar> q_input = stack_rows<Scalar>(obs, s.action);
  typename Mlp<Scalar>::Tape t1, t2;
  const RowVector<Scalar> q1v = q1.forward(q_input, t1).row(0);
  const RowVector<Scalar> q2v = q2.forward(q_input, t2).row(0);

  ActorLossTerms<Scalar> out;
  Matrix<Scalar> g1 = Matrix<Scalar>::Zero(1, n);
  Matrix<Scalar> g2 = Matrix<Scalar>::Zero(1, n);
  Scalar policy_sum = 0;
  Scalar q_sum = 0;
  for (Eigen::Index b = 0; b < n; ++b) {
    const bool first = q1v[b] <= q2v[b];
    const Scalar qmin = first ? q1v[b] : q2v[b];
    (first ? g1 : g2)(0, b) = Scalar(-1) / nb;
    policy_sum += alpha * s.log_prob[b] - qmin;
    q_sum += qmin;
  }
  out.policy = policy_sum / nb;
  out.mean_q = q_sum / nb;
  out.mean_log_prob = s.log_prob.mean();

  if (w.caps) {
    const Matrix<Scalar> mu = heads.leftCols(n).topRows(dim);
    const Matrix<Scalar> d_t = mu - heads.middleCols(n, n).topRows(dim);
    const Matrix<Scalar> d_s = mu - heads.rightCols(n).topRows(dim);
    out.temporal = d_t.squaredNorm() / nb;
    out.spatial = d_s.squaredNorm() / nb;
  }
  out.total = out.policy + static_cast<Scalar>(w.lambda_temporal) * out.temporal +
              static_cast<Scalar>(w.lambda_spatial) * out.spatial;

  if (!grads) return out;

  const Matrix<Scalar> dq1 = q1.backward(t1, g1, nullptr);
  const Matrix<Scalar> dq2 = q2.backward(t2, g2, nullptr);
  const Matrix<Scalar> grad_action = dq1.bottomRows(dim) + dq2.bottomRows(dim);
  const RowVector<Scalar> grad_log_prob = RowVector<Scalar>::Constant(n, alpha / nb);

  Matrix<Scalar> grad_heads = Matrix<Scalar>::Zero(heads.rows(), heads.cols());
  grad_heads.leftCols(n) = squash_backward<Scalar>(s, grad_action, grad_log_prob);
  if (w.caps) {
    const Matrix<Scalar> mu = heads.leftCols(n).topRows(dim);
    const Matrix<Scalar> gt =
        (Scalar(2) * static_cast<Scalar>(w.lambda_temporal) / nb) * (mu - heads.middleCols(n, n).topRows(dim));
    const Matrix<Scalar> gs =
        (Scalar(2) * static_cast<Scalar>(w.lambda_spatial) / nb) * (mu - heads.rightCols(n).topRows(dim));
    grad_heads.leftCols(n).topRows(dim) += gt + gs;
    grad_heads.middleCols(n, n).topRows(dim) -= gt;
    grad_heads.rightCols(n).topRows(dim) -= gs;
  }
  actor.backward(actor_tape, grad_heads, grads);
  return out;
}

struct LossReport {
  double critic_loss = 0.0;
  double actor_loss = 0.0;
  double alpha = 0.0;
  double alpha_loss = 0.0;
  double entropy = 0.0;  // -mean log pi
  double caps_temporal = 0.0;
  double caps_spatial = 0.0;
  double mean_q = 0.0;
};

/// Soft Actor-Critic with twin critics, Polyak-averaged targets and an
/// optionally learned entropy coefficient. With CAPS enabled the entropy
/// coefficient is frozen and the actor loss gains the smoothness terms.
template <typename Scalar>
class SacAgent {
 public:
  SacAgent(int obs_dim, SacConfig cfg) : cfg_(std::move(cfg)), obs_dim_(obs_dim), rng_(cfg_.seed) {
    cfg_.validate();
    if (obs_dim < 1) throw std::invalid_argument("SacAgent: obs_dim must be >= 1");
    std::vector<int> actor_sizes{obs_dim};
    std::vector<int> critic_sizes{obs_dim + kActionDim};
    for (int h : cfg_.hidden) {
      actor_sizes.push_back(h);
      critic_sizes.push_back(h);
    }
    actor_sizes.push_back(2 * kActionDim);
    critic_sizes.push_back(1);
    actor_ = Mlp<Scalar>(actor_sizes, rng_);
    q1_ = Mlp<Scalar>(critic_sizes, rng_);
    q2_ = Mlp<Scalar>(critic_sizes, rng_);
    q1_target_ = q1_;
    q2_target_ = q2_;
    actor_opt_ = Adam<Scalar>(actor_, {cfg_.lr_actor});
    q1_opt_ = Adam<Scalar>(q1_, {cfg_.lr_critic});
    q2_opt_ = Adam<Scalar>(q2_, {cfg_.lr_critic});
    log_alpha_ = std::log(cfg_.alpha);
    alpha_opt_.cfg.lr = cfg_.lr_actor;
  }

  SubGoalAction act(const Observation& obs, bool deterministic) {
    return select_action<Scalar>(actor_, obs, deterministic, rng_);
  }

  /// Uniform random action in [-1, 1]^6 (warm-up exploration).
  SubGoalAction random_action() {
    ActionVector a;
    for (int i = 0; i < kActionDim; ++i) a[i] = rng_.uniform(-1.0, 1.0);
    return SubGoalAction(a);
  }

  LossReport update(const ReplayBuffer<Scalar>& buffer) {
    const auto n = static_cast<std::size_t>(cfg_.batch_size);
    if (buffer.size() < n)
      throw InsufficientDataError("replay buffer has " + std::to_string(buffer.size()) + " transitions, batch needs " +
                                  std::to_string(n));
    const Batch<Scalar> batch = buffer.sample(n, rng_);
    const auto bn = static_cast<Eigen::Index>(n);
    const Matrix<Scalar> next_noise = standard_normal<Scalar>(kActionDim, bn, rng_);
    const Matrix<Scalar> noise = standard_normal<Scalar>(kActionDim, bn, rng_);
    Matrix<Scalar> perturbation;
    if (cfg_.caps_enabled) {
      perturbation = static_cast<Scalar>(cfg_.sigma_spatial) * standard_normal<Scalar>(obs_dim_, bn, rng_);
    } else {
      perturbation = Matrix<Scalar>::Zero(obs_dim_, bn);
    }

    const double alpha_before = alpha();
    const auto a = static_cast<Scalar>(alpha_before);
    LossReport report;
    report.alpha = alpha_before;

    const RowVector<Scalar> y =
        critic_targets<Scalar>(actor_, q1_target_, q2_target_, batch, next_noise, a, static_cast<Scalar>(cfg_.gamma));
    auto g1 = q1_.zero_gradients();
    auto g2 = q2_.zero_gradients();
    report.critic_loss = static_cast<double>(critic_loss<Scalar>(q1_, batch.obs, batch.actions, y, &g1) +
                                             critic_loss<Scalar>(q2_, batch.obs, batch.actions, y, &g2));
    q1_opt_.step(q1_, g1);
    q2_opt_.step(q2_, g2);

    ActorLossWeights w;
    w.alpha = alpha_before;
    w.caps = cfg_.caps_enabled;
    w.lambda_temporal = cfg_.caps_enabled ? cfg_.lambda_temporal : 0.0;
    w.lambda_spatial = cfg_.caps_enabled ? cfg_.lambda_spatial : 0.0;
    auto ga = actor_.zero_gradients();
    const ActorLossTerms<Scalar> terms =
        actor_loss<Scalar>(actor_, q1_, q2_, batch.obs, batch.next_obs, noise, perturbation, w, &ga);
    actor_opt_.step(actor_, ga);
    report.actor_loss = static_cast<double>(terms.total);
    report.entropy = -static_cast<double>(terms.mean_log_prob);
    report.caps_temporal = static_cast<double>(terms.temporal);
    report.caps_spatial = static_cast<double>(terms.spatial);
    report.mean_q = static_cast<double>(terms.mean_q);

    const double target_entropy = -static_cast<double>(kActionDim);
    const double entropy_gap = static_cast<double>(terms.mean_log_prob) + target_entropy;
    if (cfg_.alpha_trainable) {
      report.alpha_loss = -log_alpha_ * entropy_gap;
      alpha_opt_.step(log_alpha_, -entropy_gap);
    } else if (alpha() != alpha_before) {
      throw std::logic_error("entropy coefficient changed while frozen");
    }

    q1_target_.soft_update_from(q1_, static_cast<Scalar>(cfg_.tau));
    q2_target_.soft_update_from(q2_, static_cast<Scalar>(cfg_.tau));
    ++updates_;
    return report;
  }

  double alpha() const { return std::exp(log_alpha_); }
  const SacConfig& config() const { return cfg_; }
  int obs_dim() const { return obs_dim_; }
  std::uint64_t updates() const { return updates_; }

  Mlp<Scalar>& actor() { return actor_; }
  const Mlp<Scalar>& actor() const { return actor_; }
  Mlp<Scalar>& q1() { return q1_; }
  Mlp<Scalar>& q2() { return q2_; }
  const Mlp<Scalar>& q1() const { return q1_; }
  const Mlp<Scalar>& q2() const { return q2_; }
  Mlp<Scalar>& q1_target() { return q1_target_; }
  Mlp<Scalar>& q2_target() { return q2_target_; }
  const Mlp<Scalar>& q1_target() const { return q1_target_; }
  const Mlp<Scalar>& q2_target() const { return q2_target_; }
  Adam<Scalar>& actor_optimizer() { return actor_opt_; }
  Adam<Scalar>& q1_optimizer() { return q1_opt_; }
  Adam<Scalar>& q2_optimizer() { return q2_opt_; }
  const Adam<Scalar>& actor_optimizer() const { return actor_opt_; }
  const Adam<Scalar>& q1_optimizer() const { return q1_opt_; }
  const Adam<Scalar>& q2_optimizer() const { return q2_opt_; }
  ScalarAdam& alpha_optimizer() { return alpha_opt_; }
  const ScalarAdam& alpha_optimizer() const { return alpha_opt_; }
  double& log_alpha() { return log_alpha_; }
  double log_alpha() const { return log_alpha_; }
  Rng& rng() { return rng_; }
  const Rng& rng() const { return rng_; }
  void set_updates(std::uint64_t u) { updates_ = u; }

 private:
  SacConfig cfg_;
  int obs_dim_;
  Rng rng_;
  Mlp<Scalar> actor_, q1_, q2_, q1_target_, q2_target_;
  Adam<Scalar> actor_opt_, q1_opt_, q2_opt_;
  double log_alpha_ = 0.0;
  ScalarAdam alpha_opt_;
  std::uint64_t updates_ = 0;
};

}  // namespace pathlab::agent
