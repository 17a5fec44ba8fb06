#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pathlab/agent/mlp.hpp"
#include "pathlab/envs/types.hpp"
#include "pathlab/rng.hpp"

namespace pathlab::agent {

inline constexpr double kLogStdMin = -20.0;
inline constexpr double kLogStdMax = 2.0;

/// A reparameterized draw from the tanh-squashed diagonal Gaussian policy.
/// The actor head stacks the pre-squash mean over the raw log-std, so it has
/// 2 * action_dim rows.
template <typename Scalar>
struct PolicySample {
  Matrix<Scalar> mean;
  Matrix<Scalar> raw_log_std;
  Matrix<Scalar> log_std;  // clamped to [kLogStdMin, kLogStdMax]
  Matrix<Scalar> noise;
  Matrix<Scalar> pre_tanh;
  Matrix<Scalar> action;
  RowVector<Scalar> log_prob;
};

// log(1 - tanh(u)^2) evaluated without cancellation.
template <typename Scalar>
Scalar log1m_tanh_sq(Scalar u) {
  const Scalar x = Scalar(-2) * u;
  const Scalar softplus = std::max(x, Scalar(0)) + std::log1p(std::exp(-std::abs(x)));
  return Scalar(2) * (static_cast<Scalar>(std::numbers::ln2) - u - softplus);
}

template <typename Scalar>
PolicySample<Scalar> squash_sample(const Matrix<Scalar>& head, const Matrix<Scalar>& noise) {
  const Eigen::Index dim = head.rows() / 2;
  if (head.rows() != 2 * dim || noise.rows() != dim || noise.cols() != head.cols())
    throw std::invalid_argument("squash_sample: head/noise shape mismatch");
  PolicySample<Scalar> s;
  s.mean = head.topRows(dim);
  s.raw_log_std = head.bottomRows(dim);
  s.log_std = s.raw_log_std.cwiseMax(Scalar(kLogStdMin)).cwiseMin(Scalar(kLogStdMax));
  s.noise = noise;
  s.pre_tanh = s.mean.array() + s.log_std.array().exp() * noise.array();
  s.action = s.pre_tanh.array().tanh();
  const Scalar half_log_2pi = static_cast<Scalar>(0.5 * std::log(2.0 * std::numbers::pi));
  s.log_prob.resize(head.cols());
  for (Eigen::Index b = 0; b < head.cols(); ++b) {
    Scalar lp = 0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Scalar e = noise(i, b);
      lp += Scalar(-0.5) * e * e - s.log_std(i, b) - half_log_2pi - log1m_tanh_sq(s.pre_tanh(i, b));
    }
    s.log_prob[b] = lp;
  }
  return s;
}

/// Chain rule from dL/d(action) and dL/d(log_prob) back to dL/d(head).
/// Components whose log-std was clamped get no log-std gradient.
template <typename Scalar>
Matrix<Scalar> squash_backward(const PolicySample<Scalar>& s, const Matrix<Scalar>& grad_action,
                               const RowVector<Scalar>& grad_log_prob) {
  const Eigen::Index dim = s.mean.rows();
  const Eigen::Index n = s.mean.cols();
  Matrix<Scalar> g(2 * dim, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Scalar a = s.action(i, b);
      const Scalar du = grad_action(i, b) * (Scalar(1) - a * a) + grad_log_prob[b] * Scalar(2) * a;
      g(i, b) = du;
      const bool clamped = s.raw_log_std(i, b) < Scalar(kLogStdMin) || s.raw_log_std(i, b) > Scalar(kLogStdMax);
      g(dim + i, b) = clamped ? Scalar(0)
                              : du * std::exp(s.log_std(i, b)) * s.noise(i, b) - grad_log_prob[b];
    }
  }
  return g;
}

template <typename Scalar>
Matrix<Scalar> standard_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix<Scalar> m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = static_cast<Scalar>(rng.normal());
  return m;
}

/// One action for one observation. Deterministic mode returns tanh(mean).
template <typename Scalar>
SubGoalAction select_action(const Mlp<Scalar>& policy, const Observation& obs, bool deterministic, Rng& rng) {
  if (policy.output_dim() != 2 * kActionDim)
    throw std::invalid_argument("select_action: policy must output 2 * action_dim values");
  const Matrix<Scalar> head = policy.forward(Matrix<Scalar>(obs.template cast<Scalar>()));
  Matrix<Scalar> noise = deterministic ? Matrix<Scalar>::Zero(kActionDim, 1)
                                       : standard_normal<Scalar>(kActionDim, 1, rng);
  const PolicySample<Scalar> s = squash_sample<Scalar>(head, noise);
  ActionVector a;
  for (int i = 0; i < kActionDim; ++i) a[i] = static_cast<double>(s.action(i, 0));
  return SubGoalAction(a);
}

}  // namespace pathlab::agent
