#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pathlab/envs/environment.hpp"
#include "pathlab/eval/metrics.hpp"

namespace pathlab::eval {

using Policy = std::function<SubGoalAction(const Observation&)>;

/// Scripted planner that always requests the target pose with zero velocity,
/// read straight from the observation.
SubGoalAction target_policy(const Observation& obs);

/// One agent decision and what it led to (summed over skipped frames).
struct DecisionLog {
  int step = 0;  // cumulative simulator steps after this decision
  SubGoalAction action;
  Pose2D robot;
  double reward = 0.0;
  RewardBreakdown breakdown;
  bool terminated = false;
  bool truncated = false;
};

struct EpisodeRecord {
  std::vector<SubGoalAction> actions;  // decisions only, as applied (clamped and constrained)
  std::vector<Pose2D> robot_path;      // initial pose, then one pose per simulator step
  std::vector<Pose2D> obstacle_path;   // same cadence; empty without an obstacle
  std::vector<DecisionLog> decisions;
  Pose2D target;
  int length_steps = 0;
  bool succeeded = false;
  bool collided = false;
  double episode_return = 0.0;
};

/// Plays one episode from `seed` with `frame_skip` repeats per decision.
EpisodeRecord run_episode(PathPlanningEnv& env, const Policy& policy, std::uint64_t seed, int frame_skip = 1);

/// n episodes seeded seed, seed + 1, ...; results in index order.
std::vector<EpisodeRecord> run_episodes(PathPlanningEnv& env, const Policy& policy, int n, std::uint64_t seed,
                                        int frame_skip = 1);

struct EvalSummary {
  int n = 0;
  StatsSummary episode_length;
  StatsSummary cpad;
  double collision_rate = 0.0;
  double success_rate = 0.0;
};

EvalSummary evaluate(std::span<const EpisodeRecord> records, const EnvConfig& cfg);

}  // namespace pathlab::eval
