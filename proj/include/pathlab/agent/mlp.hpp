#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pathlab/rng.hpp"

namespace pathlab::agent {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

template <typename Scalar>
struct DenseLayer {
  Matrix<Scalar> weight;  // out x in
  Vector<Scalar> bias;    // out
};

/// Parameters (or gradients, or optimizer moments) of every layer, in order.
template <typename Scalar>
using LayerStack = std::vector<DenseLayer<Scalar>>;

template <typename Scalar>
LayerStack<Scalar> zeros_like(const LayerStack<Scalar>& layers) {
  LayerStack<Scalar> z(layers.size());
  for (std::size_t i = 0; i < layers.size(); ++i) {
    z[i].weight = Matrix<Scalar>::Zero(layers[i].weight.rows(), layers[i].weight.cols());
    z[i].bias = Vector<Scalar>::Zero(layers[i].bias.size());
  }
  return z;
}

/// Fully connected network with ReLU hidden layers and a linear output.
/// Inputs and outputs are column-major batches: one sample per column.
template <typename Scalar>
class Mlp {
 public:
  using Gradients = LayerStack<Scalar>;

  /// Activations kept from a forward pass for backpropagation.
  struct Tape {
    std::vector<Matrix<Scalar>> activations;  // [0] is the input
  };

  Mlp() = default;

  /// `sizes` = {input, hidden..., output}. Weights and biases are drawn from
  /// U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
  Mlp(const std::vector<int>& sizes, Rng& rng) {
    if (sizes.size() < 2) throw std::invalid_argument("Mlp needs at least input and output sizes");
    layers_.resize(sizes.size() - 1);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
      const int in = sizes[l];
      const int out = sizes[l + 1];
      if (in <= 0 || out <= 0) throw std::invalid_argument("Mlp layer sizes must be positive");
      const double bound = 1.0 / std::sqrt(static_cast<double>(in));
      auto& layer = layers_[l];
      layer.weight.resize(out, in);
      layer.bias.resize(out);
      // Column-major fill order keeps initialization independent of Eigen internals.
      for (int c = 0; c < in; ++c)
        for (int r = 0; r < out; ++r) layer.weight(r, c) = static_cast<Scalar>(rng.uniform(-bound, bound));
      for (int r = 0; r < out; ++r) layer.bias[r] = static_cast<Scalar>(rng.uniform(-bound, bound));
    }
  }

  explicit Mlp(LayerStack<Scalar> layers) : layers_(std::move(layers)) {}

  int input_dim() const { return layers_.empty() ? 0 : static_cast<int>(layers_.front().weight.cols()); }
  int output_dim() const { return layers_.empty() ? 0 : static_cast<int>(layers_.back().weight.rows()); }
  std::size_t depth() const { return layers_.size(); }

  LayerStack<Scalar>& layers() { return layers_; }
  const LayerStack<Scalar>& layers() const { return layers_; }

  std::vector<int> sizes() const {
    std::vector<int> s;
    if (layers_.empty()) return s;
    s.push_back(input_dim());
    for (const auto& l : layers_) s.push_back(static_cast<int>(l.weight.rows()));
    return s;
  }

  Matrix<Scalar> forward(const Matrix<Scalar>& input) const {
    check_input(input);
    Matrix<Scalar> a = input;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      Matrix<Scalar> z = layers_[l].weight * a;
      z.colwise() += layers_[l].bias;
      if (l + 1 < layers_.size()) z = z.cwiseMax(Scalar(0));
      a = std::move(z);
    }
    return a;
  }

  Vector<Scalar> forward(const Vector<Scalar>& input) const {
    return forward(Matrix<Scalar>(input)).col(0);
  }

  Matrix<Scalar> forward(const Matrix<Scalar>& input, Tape& tape) const {
    check_input(input);
    tape.activations.resize(layers_.size() + 1);
    tape.activations[0] = input;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      Matrix<Scalar> z = layers_[l].weight * tape.activations[l];
      z.colwise() += layers_[l].bias;
      if (l + 1 < layers_.size()) z = z.cwiseMax(Scalar(0));
      tape.activations[l + 1] = std::move(z);
    }
    return tape.activations.back();
  }

  /// Backpropagates dL/d(output). Parameter gradients are added into `grads`
  /// (pass nullptr to skip them); returns dL/d(input).
  Matrix<Scalar> backward(const Tape& tape, const Matrix<Scalar>& grad_out, Gradients* grads) const {
    if (tape.activations.size() != layers_.size() + 1)
      throw std::invalid_argument("Mlp::backward: tape does not match network");
    if (grad_out.rows() != output_dim() || grad_out.cols() != tape.activations.front().cols())
      throw std::invalid_argument("Mlp::backward: gradient shape does not match the forward batch");
    Matrix<Scalar> delta = grad_out;
    for (std::size_t l = layers_.size(); l-- > 0;) {
      if (l + 1 < layers_.size()) {
        // ReLU derivative, evaluated on the post-activation output.
        delta = (tape.activations[l + 1].array() > Scalar(0)).select(delta, Scalar(0));
      }
      if (grads) {
        (*grads)[l].weight.noalias() += delta * tape.activations[l].transpose();
        (*grads)[l].bias += delta.rowwise().sum();
      }
      delta = layers_[l].weight.transpose() * delta;
    }
    return delta;
  }

  Gradients zero_gradients() const { return zeros_like(layers_); }

  /// this = tau * source + (1 - tau) * this.
  void soft_update_from(const Mlp& source, Scalar tau) {
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      layers_[l].weight = tau * source.layers_[l].weight + (Scalar(1) - tau) * layers_[l].weight;
      layers_[l].bias = tau * source.layers_[l].bias + (Scalar(1) - tau) * layers_[l].bias;
    }
  }

  bool all_finite() const {
    for (const auto& l : layers_)
      if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
    return true;
  }

  template <typename Other>
  Mlp<Other> cast() const {
    LayerStack<Other> out(layers_.size());
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      out[l].weight = layers_[l].weight.template cast<Other>();
      out[l].bias = layers_[l].bias.template cast<Other>();
    }
    return Mlp<Other>(std::move(out));
  }

 private:
  void check_input(const Matrix<Scalar>& input) const {
    if (layers_.empty()) throw std::logic_error("Mlp is empty");
    if (input.rows() != input_dim())
      throw std::invalid_argument("Mlp input has " + std::to_string(input.rows()) + " rows, expected " +
                                  std::to_string(input_dim()));
  }

  LayerStack<Scalar> layers_;
};

}  // namespace pathlab::agent
