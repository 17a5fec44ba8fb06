#pragma once

#include <cstddef>
#include <stdexcept>

#include "pathlab/agent/mlp.hpp"
#include "pathlab/envs/types.hpp"
#include "pathlab/rng.hpp"

namespace pathlab::agent {

/// Column-per-sample minibatch.
template <typename Scalar>
struct Batch {
  Matrix<Scalar> obs;
  Matrix<Scalar> actions;
  RowVector<Scalar> rewards;
  Matrix<Scalar> next_obs;
  RowVector<Scalar> terminated;  // 1 for true terminal states; truncation stays 0

  Eigen::Index size() const { return obs.cols(); }
};

/// Fixed-capacity ring buffer of transitions with uniform sampling.
template <typename Scalar>
class ReplayBuffer {
 public:
  ReplayBuffer(int obs_dim, std::size_t capacity)
      : obs_dim_(obs_dim),
        capacity_(capacity),
        obs_(obs_dim, static_cast<Eigen::Index>(capacity)),
        actions_(kActionDim, static_cast<Eigen::Index>(capacity)),
        rewards_(static_cast<Eigen::Index>(capacity)),
        next_obs_(obs_dim, static_cast<Eigen::Index>(capacity)),
        terminated_(static_cast<Eigen::Index>(capacity)) {
    if (capacity == 0) throw std::invalid_argument("replay buffer capacity must be > 0");
  }

  void push(const Observation& obs, const SubGoalAction& action, double reward, const Observation& next_obs,
            bool terminated) {
    if (obs.size() != obs_dim_ || next_obs.size() != obs_dim_)
      throw std::invalid_argument("replay buffer: observation dimension mismatch");
    const auto c = static_cast<Eigen::Index>(head_);
    obs_.col(c) = obs.cast<Scalar>();
    actions_.col(c) = action.values.cast<Scalar>();
    rewards_[c] = static_cast<Scalar>(reward);
    next_obs_.col(c) = next_obs.cast<Scalar>();
    terminated_[c] = terminated ? Scalar(1) : Scalar(0);
    head_ = (head_ + 1) % capacity_;
    if (size_ < capacity_) ++size_;
  }

  Batch<Scalar> sample(std::size_t batch_size, Rng& rng) const {
    if (size_ < batch_size || batch_size == 0)
      throw std::invalid_argument("replay buffer holds fewer transitions than the batch size");
    const auto n = static_cast<Eigen::Index>(batch_size);
    Batch<Scalar> b;
    b.obs.resize(obs_dim_, n);
    b.actions.resize(kActionDim, n);
    b.rewards.resize(n);
    b.next_obs.resize(obs_dim_, n);
    b.terminated.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto j = static_cast<Eigen::Index>(rng.index(size_));
      b.obs.col(i) = obs_.col(j);
      b.actions.col(i) = actions_.col(j);
      b.rewards[i] = rewards_[j];
      b.next_obs.col(i) = next_obs_.col(j);
      b.terminated[i] = terminated_[j];
    }
    return b;
  }

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  int obs_dim() const { return obs_dim_; }

 private:
  int obs_dim_;
  std::size_t capacity_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
  Matrix<Scalar> obs_;
  Matrix<Scalar> actions_;
  Vector<Scalar> rewards_;
  Matrix<Scalar> next_obs_;
  Vector<Scalar> terminated_;
};

}  // namespace pathlab::agent
