#pragma once

#include <json.hpp>

#include "pathlab/agent/config.hpp"

namespace pathlab::agent {

inline void to_json(nlohmann::json& j, const SacConfig& c) {
  j = nlohmann::json{{"gamma", c.gamma},
                     {"tau", c.tau},
                     {"lr_actor", c.lr_actor},
                     {"lr_critic", c.lr_critic},
                     {"batch_size", c.batch_size},
                     {"buffer_capacity", c.buffer_capacity},
                     {"hidden", c.hidden},
                     {"alpha", c.alpha},
                     {"alpha_trainable", c.alpha_trainable},
                     {"caps_enabled", c.caps_enabled},
                     {"lambda_temporal", c.lambda_temporal},
                     {"lambda_spatial", c.lambda_spatial},
                     {"sigma_spatial", c.sigma_spatial},
                     {"warmup_steps", c.warmup_steps},
                     {"train_every", c.train_every},
                     {"gradient_steps", c.gradient_steps},
                     {"reward_scale", c.reward_scale},
                     {"seed", c.seed}};
}

/// Strict: every key must be known. Missing keys keep their current value.
inline void update_from_json(SacConfig& c, const nlohmann::json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key == "gamma") c.gamma = value.get<double>();
    else if (key == "tau") c.tau = value.get<double>();
    else if (key == "lr_actor") c.lr_actor = value.get<double>();
    else if (key == "lr_critic") c.lr_critic = value.get<double>();
    else if (key == "batch_size") c.batch_size = value.get<int>();
    else if (key == "buffer_capacity") c.buffer_capacity = value.get<int>();
    else if (key == "hidden") c.hidden = value.get<std::vector<int>>();
    else if (key == "alpha") c.alpha = value.get<double>();
    else if (key == "alpha_trainable") c.alpha_trainable = value.get<bool>();
    else if (key == "caps_enabled") c.caps_enabled = value.get<bool>();
    else if (key == "lambda_temporal") c.lambda_temporal = value.get<double>();
    else if (key == "lambda_spatial") c.lambda_spatial = value.get<double>();
    else if (key == "sigma_spatial") c.sigma_spatial = value.get<double>();
    else if (key == "warmup_steps") c.warmup_steps = value.get<int>();
    else if (key == "train_every") c.train_every = value.get<int>();
    else if (key == "gradient_steps") c.gradient_steps = value.get<int>();
    else if (key == "reward_scale") c.reward_scale = value.get<double>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else throw std::invalid_argument("unknown sac config key '" + key + "'");
  }
}

inline void from_json(const nlohmann::json& j, SacConfig& c) {
  c = SacConfig{};
  update_from_json(c, j);
}

}  // namespace pathlab::agent
