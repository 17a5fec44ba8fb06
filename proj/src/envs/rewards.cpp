#include "pathlab/envs/rewards.hpp"

#include <cmath>
#include <numbers>

namespace pathlab {

RewardBreakdown reward_goal_terms(const Pose2D& ref, const Pose2D& target, const EnvConfig& cfg) {
  const double d = (ref.position() - target.position()).norm();
  const double delta = std::abs(angle_diff(ref.theta, target.theta));
  const bool near = d <= cfg.d_threshold;
  const bool aligned = delta <= cfg.theta_threshold;

  RewardBreakdown r;
  r.r_d = near ? 10.0 : -d;
  r.r_theta = aligned ? 1.0 : -delta / std::numbers::pi;
  r.r_t = (near && aligned) ? 1000.0 : 0.0;
  r.recompute_total();
  return r;
}

bool within_goal(const Pose2D& pose, const Pose2D& target, const EnvConfig& cfg) {
  return (pose.position() - target.position()).norm() <= cfg.d_threshold &&
         std::abs(angle_diff(pose.theta, target.theta)) <= cfg.theta_threshold;
}

ObstacleTerms reward_obstacle_terms(const Pose2D& action_pos, const ObstacleState& obstacle,
                                    const RobotState& robot, const EnvConfig& cfg) {
  const double o = (action_pos.position() - obstacle.pose.position()).norm();
  const double sigma = cfg.gaussian_sigma;
  ObstacleTerms t;
  t.r_obst = -cfg.gaussian_weight * std::exp(-(o * o) / (2.0 * sigma * sigma));
  const double contact = (robot.pose.position() - obstacle.pose.position()).norm();
  t.hit = contact < cfg.robot_radius + cfg.obstacle_radius;
  t.r_hit = t.hit ? -1000.0 : 0.0;
  return t;
}

}  // namespace pathlab
