#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pathlab/agent/config.hpp"
#include "pathlab/envs/config.hpp"

namespace pathlab::cli {

/// The four experiment arms.
enum class Setup { Vanilla, FrameSkip, Caps, FsCaps };

std::string_view to_string(Setup s);
Setup parse_setup(std::string_view name);
bool uses_frame_skip(Setup s);
bool uses_caps(Setup s);

struct RunConfig {
  EnvKind env = EnvKind::Proposed;
  Setup setup = Setup::Vanilla;
  EnvConfig env_config;
  agent::SacConfig sac;
  std::int64_t total_env_steps = 300000;
  std::int64_t eval_every = 50000;
  int eval_episodes = 10;
  int frame_skip = 16;
  std::string output_dir = "runs/default";
  std::uint64_t seed = 0;

  /// Applies the arm to the SAC config (CAPS on/off, frozen entropy
  /// coefficient), copies the run seed into it and validates everything.
  void resolve();
  int skip() const { return uses_frame_skip(setup) ? frame_skip : 1; }
};

nlohmann::json env_config_to_json(const EnvConfig& c);
/// Strict: unknown keys throw std::invalid_argument naming the key.
void update_env_config(EnvConfig& c, const nlohmann::json& j);

nlohmann::json to_json(const RunConfig& c);
/// Overlays `j` on `c`; unknown keys throw std::invalid_argument naming the key.
void update_from_json(RunConfig& c, const nlohmann::json& j);

/// Applies "dotted.key=value" overrides, e.g. "sac.batch_size=64" or
/// "env_config.d_threshold=0.1". Values parse as JSON, falling back to a string.
void apply_overrides(RunConfig& c, const std::vector<std::string>& assignments);

RunConfig load_run_config(const std::string& path);

}  // namespace pathlab::cli
