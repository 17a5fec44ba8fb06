#pragma once

#include <cmath>
#include <cstdint>

#include "pathlab/agent/mlp.hpp"

namespace pathlab::agent {

struct AdamConfig {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Adaptive-moment optimizer with bias correction over one network.
template <typename Scalar>
class Adam {
 public:
  Adam() = default;
  Adam(const Mlp<Scalar>& net, AdamConfig cfg) : cfg_(cfg), m_(zeros_like(net.layers())), v_(zeros_like(net.layers())) {}

  void step(Mlp<Scalar>& net, const LayerStack<Scalar>& grads) {
    ++t_;
    const Scalar b1 = static_cast<Scalar>(cfg_.beta1);
    const Scalar b2 = static_cast<Scalar>(cfg_.beta2);
    const Scalar c1 = static_cast<Scalar>(1.0 - std::pow(cfg_.beta1, static_cast<double>(t_)));
    const Scalar c2 = static_cast<Scalar>(1.0 - std::pow(cfg_.beta2, static_cast<double>(t_)));
    const Scalar lr = static_cast<Scalar>(cfg_.lr);
    const Scalar eps = static_cast<Scalar>(cfg_.eps);
    auto& layers = net.layers();
    for (std::size_t l = 0; l < layers.size(); ++l) {
      apply(layers[l].weight, grads[l].weight, m_[l].weight, v_[l].weight, b1, b2, c1, c2, lr, eps);
      apply(layers[l].bias, grads[l].bias, m_[l].bias, v_[l].bias, b1, b2, c1, c2, lr, eps);
    }
  }

  std::uint64_t steps() const { return t_; }
  const AdamConfig& config() const { return cfg_; }
  LayerStack<Scalar>& first_moment() { return m_; }
  LayerStack<Scalar>& second_moment() { return v_; }
  const LayerStack<Scalar>& first_moment() const { return m_; }
  const LayerStack<Scalar>& second_moment() const { return v_; }
  void set_steps(std::uint64_t t) { t_ = t; }

 private:
  template <typename P, typename G>
  static void apply(P& param, const G& grad, P& m, P& v, Scalar b1, Scalar b2, Scalar c1, Scalar c2, Scalar lr,
                    Scalar eps) {
    m = b1 * m + (Scalar(1) - b1) * grad;
    v = b2 * v + (Scalar(1) - b2) * grad.cwiseAbs2();
    param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
  }

  AdamConfig cfg_;
  LayerStack<Scalar> m_;
  LayerStack<Scalar> v_;
  std::uint64_t t_ = 0;
};

/// The same update rule for a single scalar parameter (the log entropy coefficient).
struct ScalarAdam {
  AdamConfig cfg;
  double m = 0.0;
  double v = 0.0;
  std::uint64_t t = 0;

  void step(double& param, double grad) {
    ++t;
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * grad * grad;
    const double mh = m / (1.0 - std::pow(cfg.beta1, static_cast<double>(t)));
    const double vh = v / (1.0 - std::pow(cfg.beta2, static_cast<double>(t)));
    param -= cfg.lr * mh / (std::sqrt(vh) + cfg.eps);
  }
};

}  // namespace pathlab::agent
