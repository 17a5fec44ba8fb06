#pragma once

// Finite-difference checks for every differentiable piece of the agent:
// raw MLP backprop (parameters and inputs), the critic regression loss and the
// actor loss with and without the smoothness terms.

#include <string>
#include <vector>

#include "pathlab/agent/sac.hpp"
#include "support/oracles.hpp"

namespace gradcheck {

using pathlab::Rng;
using pathlab::agent::LayerStack;
using pathlab::agent::Mlp;
using Mat = Eigen::MatrixXd;

struct Result {
  std::string what;
  double error = 0.0;
};

inline Mat random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng, double scale = 1.0) {
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-scale, scale);
  return m;
}

inline std::vector<int> random_sizes(Rng& rng, int in, int out) {
  std::vector<int> s{in};
  const int depth = 1 + static_cast<int>(rng.index(3));
  for (int i = 0; i < depth; ++i) s.push_back(3 + static_cast<int>(rng.index(8)));
  s.push_back(out);
  return s;
}

// Loss = sum(C .* f(x)) for a random cotangent C.
inline std::vector<Result> check_mlp(std::uint64_t seed) {
  Rng rng(seed);
  const int in = 2 + static_cast<int>(rng.index(6));
  const int out = 1 + static_cast<int>(rng.index(5));
  Mlp<double> net(random_sizes(rng, in, out), rng);
  const Mat x = random_matrix(in, 4, rng);
  const Mat c = random_matrix(out, 4, rng);

  Mlp<double>::Tape tape;
  net.forward(x, tape);
  auto grads = net.zero_gradients();
  const Mat dx = net.backward(tape, c, &grads);

  auto param_loss = [&](const Mlp<double>& n) { return (c.array() * n.forward(x).array()).sum(); };
  auto input_loss = [&](const Mat& xi) { return (c.array() * net.forward(xi).array()).sum(); };
  return {{"mlp parameters", oracle::parameter_gradient_error(net, grads, param_loss)},
          {"mlp inputs", oracle::input_gradient_error(x, dx, input_loss)}};
}

inline std::vector<Result> check_critic(std::uint64_t seed) {
  Rng rng(seed);
  const int obs_dim = 3 + static_cast<int>(rng.index(5));
  Mlp<double> critic(random_sizes(rng, obs_dim + pathlab::kActionDim, 1), rng);
  const Mat obs = random_matrix(obs_dim, 5, rng);
  const Mat act = random_matrix(pathlab::kActionDim, 5, rng);
  const Eigen::RowVectorXd y = random_matrix(1, 5, rng, 3.0);

  auto grads = critic.zero_gradients();
  pathlab::agent::critic_loss<double>(critic, obs, act, y, &grads);
  auto loss = [&](const Mlp<double>& n) { return pathlab::agent::critic_loss<double>(n, obs, act, y, nullptr); };
  return {{"critic loss", oracle::parameter_gradient_error(critic, grads, loss)}};
}

inline std::vector<Result> check_actor(std::uint64_t seed, bool caps) {
  Rng rng(seed);
  const int obs_dim = 3 + static_cast<int>(rng.index(5));
  const int n = 4;
  Mlp<double> actor(random_sizes(rng, obs_dim, 2 * pathlab::kActionDim), rng);
  Mlp<double> q1(random_sizes(rng, obs_dim + pathlab::kActionDim, 1), rng);
  Mlp<double> q2(random_sizes(rng, obs_dim + pathlab::kActionDim, 1), rng);
  const Mat obs = random_matrix(obs_dim, n, rng);
  const Mat next = random_matrix(obs_dim, n, rng);
  const Mat noise = pathlab::agent::standard_normal<double>(pathlab::kActionDim, n, rng);
  const Mat perturb = 0.1 * pathlab::agent::standard_normal<double>(obs_dim, n, rng);

  pathlab::agent::ActorLossWeights w;
  w.alpha = rng.uniform(0.05, 0.5);
  w.caps = caps;
  w.lambda_temporal = caps ? rng.uniform(0.5, 2.0) : 0.0;
  w.lambda_spatial = caps ? rng.uniform(0.1, 1.0) : 0.0;

  auto grads = actor.zero_gradients();
  pathlab::agent::actor_loss<double>(actor, q1, q2, obs, next, noise, perturb, w, &grads);
  auto loss = [&](const Mlp<double>& a) {
    return pathlab::agent::actor_loss<double>(a, q1, q2, obs, next, noise, perturb, w, nullptr).total;
  };
  return {{caps ? "actor loss with smoothness terms" : "actor loss", oracle::parameter_gradient_error(actor, grads, loss)}};
}

// Runs every check on `nets` independent random networks per kind.
inline std::vector<Result> run_suite(int nets, std::uint64_t seed) {
  std::vector<Result> all;
  for (int i = 0; i < nets; ++i) {
    const std::uint64_t s = seed + 1000 * static_cast<std::uint64_t>(i);
    for (auto batch : {check_mlp(s), check_critic(s + 1), check_actor(s + 2, false), check_actor(s + 3, true)})
      all.insert(all.end(), batch.begin(), batch.end());
  }
  return all;
}

}  // namespace gradcheck
