#pragma once

#include "pathlab/envs/config.hpp"
#include "pathlab/envs/types.hpp"

namespace pathlab {

/// Goal-reaching terms measured from `ref` to `target`.
///
/// d is the Euclidean distance in meters, delta the absolute wrapped heading
/// error. r_d = -d beyond d_threshold else 10; r_theta = -delta/pi beyond
/// theta_threshold else 1; r_t = 1000 when both are within threshold.
/// Obstacle terms are left at zero.
RewardBreakdown reward_goal_terms(const Pose2D& ref, const Pose2D& target, const EnvConfig& cfg);

/// True when `pose` is within both goal thresholds of `target`.
bool within_goal(const Pose2D& pose, const Pose2D& target, const EnvConfig& cfg);

struct ObstacleTerms {
  double r_obst = 0.0;
  double r_hit = 0.0;
  bool hit = false;
};

/// Gaussian proximity penalty on the sub-goal position (mean 0, cfg.gaussian_sigma)
/// and the -1000 collision penalty on the robot body.
ObstacleTerms reward_obstacle_terms(const Pose2D& action_pos, const ObstacleState& obstacle,
                                    const RobotState& robot, const EnvConfig& cfg);

}  // namespace pathlab
