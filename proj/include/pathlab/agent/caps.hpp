#pragma once

#include <utility>

#include "pathlab/agent/mlp.hpp"
#include "pathlab/agent/policy.hpp"
#include "pathlab/rng.hpp"

namespace pathlab::agent {

/// Action-smoothness penalties on the pre-squash policy mean.
///
/// temporal = mean_b ||mu(obs_b) - mu(next_obs_b)||^2
/// spatial  = mean_b ||mu(obs_b) - mu(obs_b + perturbation_b)||^2
template <typename Scalar>
std::pair<Scalar, Scalar> caps_losses(const Mlp<Scalar>& policy, const Matrix<Scalar>& obs,
                                      const Matrix<Scalar>& next_obs, const Matrix<Scalar>& perturbation) {
  const Eigen::Index dim = policy.output_dim() / 2;
  const auto batch = static_cast<Scalar>(obs.cols());
  const Matrix<Scalar> mu = policy.forward(obs).topRows(dim);
  const Matrix<Scalar> mu_next = policy.forward(next_obs).topRows(dim);
  const Matrix<Scalar> noisy = obs + perturbation;
  const Matrix<Scalar> mu_noisy = policy.forward(noisy).topRows(dim);
  return {(mu - mu_next).squaredNorm() / batch, (mu - mu_noisy).squaredNorm() / batch};
}

/// Draws the spatial perturbation from N(0, sigma^2) per component.
template <typename Scalar>
std::pair<Scalar, Scalar> caps_losses(const Mlp<Scalar>& policy, const Matrix<Scalar>& obs,
                                      const Matrix<Scalar>& next_obs, double sigma_spatial, Rng& rng) {
  const Matrix<Scalar> perturbation =
      static_cast<Scalar>(sigma_spatial) * standard_normal<Scalar>(obs.rows(), obs.cols(), rng);
  return caps_losses(policy, obs, next_obs, perturbation);
}

}  // namespace pathlab::agent
