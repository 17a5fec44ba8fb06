#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pathlab/agent/sac.hpp"
#include "pathlab/cli/run_config.hpp"
#include "pathlab/eval/episodes.hpp"

namespace pathlab::cli {

/// Networks train in single precision.
using TrainScalar = float;
using Agent = agent::SacAgent<TrainScalar>;

struct TrainSummary {
  std::int64_t sim_steps = 0;
  std::int64_t decisions = 0;
  std::int64_t episodes = 0;
  std::int64_t updates = 0;
  std::string checkpoint_path;
  std::string metrics_path;
  std::string config_path;
};

/// Seed of the i-th training episode of a run.
std::uint64_t episode_seed(std::uint64_t run_seed, std::uint64_t index);

/// Deterministic-policy wrapper for evaluation.
eval::Policy greedy_policy(Agent& agent);

/// Trains one arm end to end. Writes <output_dir>/config.json (fully
/// resolved), an append-only <output_dir>/metrics.jsonl and a final
/// <output_dir>/checkpoint.bin. `progress`, when given, gets human-readable
/// status lines that are not part of the reproducible outputs.
TrainSummary train(RunConfig cfg, std::ostream* progress = nullptr);

}  // namespace pathlab::cli
