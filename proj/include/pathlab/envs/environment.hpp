#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>

#include "pathlab/envs/config.hpp"
#include "pathlab/envs/normalization.hpp"
#include "pathlab/envs/types.hpp"
#include "pathlab/rng.hpp"

namespace pathlab {

/// Raised when an episode is stepped before reset or after it has ended.
class EpisodeStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Episodic environment interface shared by all path-planning tasks.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual Observation reset(std::uint64_t seed) = 0;
  virtual StepResult step(const SubGoalAction& action) = 0;

  virtual int observation_dim() const = 0;
  int action_dim() const { return kActionDim; }
};

/// Goal-conditioned SSL path-planning task.
///
/// Each step the normalized sub-goal is clamped to [-1, 1] (the heading pair
/// is instead scaled onto the unit circle), constrained (Proposed and Obstacle zero the velocity components), denormalized and
/// handed to go_to_point; the robot is integrated one dt and kept inside the
/// field. Rewards follow reward_goal_terms with the robot as reference in
/// Baseline and the sub-goal as reference otherwise. An episode succeeds when
/// both the robot and the reference pose are within the goal thresholds, fails
/// on collision with the obstacle, and is truncated at max_steps.
class PathPlanningEnv final : public Environment {
 public:
  PathPlanningEnv(EnvKind kind, EnvConfig cfg);

  Observation reset(std::uint64_t seed) override;
  StepResult step(const SubGoalAction& action) override;
  int observation_dim() const override;

  EnvKind kind() const { return kind_; }
  const EnvConfig& config() const { return cfg_; }
  const RobotState& robot() const { return robot_; }
  const Pose2D& target() const { return target_; }
  const std::optional<ObstacleState>& obstacle() const { return obstacle_; }
  int steps() const { return steps_; }
  bool episode_over() const { return over_; }

  /// Clamp, heading renormalization and env-specific constraint, i.e. the action the controller receives.
  SubGoalAction constrain(const SubGoalAction& action) const;

  Observation observation() const;

 private:
  EnvKind kind_;
  EnvConfig cfg_;
  Rng rng_;
  RobotState robot_;
  Pose2D target_;
  std::optional<ObstacleState> obstacle_;
  int steps_ = 0;
  bool started_ = false;
  bool over_ = false;
};

std::unique_ptr<PathPlanningEnv> make_env(EnvKind kind, const EnvConfig& cfg = {});

/// Repeats `action` for up to n inner steps, stopping early on termination or
/// truncation. Rewards and breakdowns are summed; the last observation is kept.
/// `on_inner_step` (if set) sees every inner result.
template <typename OnInner>
StepResult frame_skip(Environment& env, const SubGoalAction& action, int n, OnInner&& on_inner_step);

StepResult frame_skip(Environment& env, const SubGoalAction& action, int n = 16);

template <typename OnInner>
StepResult frame_skip(Environment& env, const SubGoalAction& action, int n, OnInner&& on_inner_step) {
  if (n < 1) throw std::invalid_argument("frame_skip: n must be >= 1");
  StepResult out;
  out.reward = 0.0;
  int executed = 0;
  for (int i = 0; i < n; ++i) {
    StepResult r = env.step(action);
    on_inner_step(r);
    ++executed;
    out.reward += r.reward;
    out.breakdown += r.breakdown;
    out.observation = std::move(r.observation);
    out.terminated = r.terminated;
    out.truncated = r.truncated;
    out.succeeded = r.succeeded;
    out.collided = r.collided;
    if (out.done()) break;
  }
  out.sim_steps = executed;
  return out;
}

}  // namespace pathlab
