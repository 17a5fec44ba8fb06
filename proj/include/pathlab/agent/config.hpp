#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathlab::agent {

struct SacConfig {
  double gamma = 0.99;
  double tau = 0.005;
  double lr_actor = 3e-4;
  double lr_critic = 3e-4;
  int batch_size = 256;
  int buffer_capacity = 100000;
  std::vector<int> hidden = {256, 256};

  double alpha = 0.2;
  bool alpha_trainable = true;

  bool caps_enabled = false;
  double lambda_temporal = 1.0;
  double lambda_spatial = 0.5;
  double sigma_spatial = 0.05;

  /// Simulator steps of uniform-random exploration before learning starts.
  int warmup_steps = 5000;
  /// Agent decisions between update phases, and updates per phase.
  int train_every = 1;
  int gradient_steps = 1;
  /// Multiplies rewards before they enter the replay buffer.
  double reward_scale = 1.0;

  std::uint64_t seed = 0;

  void validate() const {
    auto fail = [](const char* what) { throw std::invalid_argument(std::string("sac config: ") + what); };
    if (!(gamma >= 0.0 && gamma < 1.0)) fail("gamma must lie in [0, 1)");
    if (!(tau > 0.0 && tau <= 1.0)) fail("tau must lie in (0, 1]");
    if (!(lr_actor > 0.0) || !(lr_critic > 0.0)) fail("learning rates must be > 0");
    if (batch_size < 1) fail("batch_size must be >= 1");
    if (buffer_capacity < batch_size) fail("buffer_capacity must be >= batch_size");
    if (hidden.empty()) fail("hidden must list at least one layer");
    for (int h : hidden)
      if (h < 1) fail("hidden sizes must be >= 1");
    if (!(alpha >= 0.0)) fail("alpha must be >= 0");
    if (caps_enabled && alpha_trainable) fail("caps_enabled requires alpha_trainable = false");
    if (!(lambda_temporal >= 0.0) || !(lambda_spatial >= 0.0) || !(sigma_spatial >= 0.0))
      fail("CAPS weights and noise scale must be >= 0");
    if (warmup_steps < 0) fail("warmup_steps must be >= 0");
    if (!(reward_scale > 0.0)) fail("reward_scale must be > 0");
    if (train_every < 1 || gradient_steps < 0) fail("train_every must be >= 1 and gradient_steps >= 0");
  }
};

}  // namespace pathlab::agent
