#pragma once

#include <optional>

#include "pathlab/envs/config.hpp"
#include "pathlab/envs/types.hpp"

namespace pathlab {

/// Un-normalized world state that an observation is built from.
struct RawState {
  Pose2D target;
  Velocity2D target_vel;
  RobotState robot;
  std::optional<ObstacleState> obstacle;
};

/// Observation layout: target (x, y, cos, sin, vx, vy), robot (x, y, cos, sin,
/// vx, vy, omega), then obstacle (x, y, vx, vy, omega) when present. Positions
/// are divided by norm_max_pos, velocities by norm_max_vel, yaw rates by
/// norm_max_omega; sin/cos pass through. Every component is clipped to [-1, 1].
Observation normalize(const RawState& raw, const EnvConfig& cfg);

struct DenormalizedAction {
  Pose2D pose;
  Velocity2D vel;
};

/// Inverse scaling of an action. Heading is atan2(sin, cos); the zero vector
/// maps to heading 0.
DenormalizedAction denormalize_action(const SubGoalAction& action, const EnvConfig& cfg);

/// Normalized action that commands `pose` with zero velocity.
SubGoalAction action_for_pose(const Pose2D& pose, const EnvConfig& cfg);

}  // namespace pathlab
