#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "pathlab/envs/config.hpp"
#include "pathlab/eval/episodes.hpp"

namespace pathlab::cli {

/// Where evaluation actions come from: a trained checkpoint or a built-in
/// scripted policy ("target" or "random").
struct PolicySource {
  std::string checkpoint;
  std::string builtin;
};

struct EvalOptions {
  PolicySource policy;
  std::optional<EnvKind> env;          // defaults to the run config next to the checkpoint
  std::optional<std::string> setup;    // likewise; decides frame skip
  int n = 1000;
  std::uint64_t seed = 0;
  std::string report_path;             // empty: no file
  std::string csv_dir;                 // empty: no per-episode CSVs
};

/// Runs the evaluation protocol and returns the aggregate report.
nlohmann::json run_eval(const EvalOptions& opts);

struct RolloutOptions {
  PolicySource policy;
  std::optional<EnvKind> env;
  std::optional<std::string> setup;
  std::uint64_t seed = 0;
  std::string out_base;  // writes <out_base>.csv and <out_base>.svg
};

eval::EpisodeRecord run_rollout(const RolloutOptions& opts);

/// Re-renders an SVG from an episode CSV.
void plot_csv(const std::string& csv_path, const std::string& svg_path, const EnvConfig& cfg,
              std::optional<Pose2D> target);

/// Seed from SSL_PATHLAB_SEED when no explicit seed was given, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback);

}  // namespace pathlab::cli
