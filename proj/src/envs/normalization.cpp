#include "pathlab/envs/normalization.hpp"

#include <algorithm>
#include <cmath>

namespace pathlab {

Observation normalize(const RawState& raw, const EnvConfig& cfg) {
  const int dim = raw.obstacle ? kObstacleObservationDim : kBaseObservationDim;
  Observation o(dim);
  const double p = cfg.norm_max_pos;
  const double v = cfg.norm_max_vel;
  const double w = cfg.norm_max_omega;
  o[0] = raw.target.x / p;
  o[1] = raw.target.y / p;
  o[2] = std::cos(raw.target.theta);
  o[3] = std::sin(raw.target.theta);
  o[4] = raw.target_vel.vx / v;
  o[5] = raw.target_vel.vy / v;
  o[6] = raw.robot.pose.x / p;
  o[7] = raw.robot.pose.y / p;
  o[8] = std::cos(raw.robot.pose.theta);
  o[9] = std::sin(raw.robot.pose.theta);
  o[10] = raw.robot.vel.vx / v;
  o[11] = raw.robot.vel.vy / v;
  o[12] = raw.robot.vel.omega / w;
  if (raw.obstacle) {
    o[13] = raw.obstacle->pose.x / p;
    o[14] = raw.obstacle->pose.y / p;
    o[15] = raw.obstacle->vel.vx / v;
    o[16] = raw.obstacle->vel.vy / v;
    o[17] = raw.obstacle->vel.omega / w;
  }
  return o.cwiseMax(-1.0).cwiseMin(1.0);
}

DenormalizedAction denormalize_action(const SubGoalAction& action, const EnvConfig& cfg) {
  DenormalizedAction out;
  out.pose.x = action.x() * cfg.norm_max_pos;
  out.pose.y = action.y() * cfg.norm_max_pos;
  const double s = action.sin_theta();
  const double c = action.cos_theta();
  out.pose.theta = (s == 0.0 && c == 0.0) ? 0.0 : wrap_angle(std::atan2(s, c));
  out.vel.vx = action.vx() * cfg.norm_max_vel;
  out.vel.vy = action.vy() * cfg.norm_max_vel;
  return out;
}

SubGoalAction action_for_pose(const Pose2D& pose, const EnvConfig& cfg) {
  return SubGoalAction(pose.x / cfg.norm_max_pos, pose.y / cfg.norm_max_pos, 0.0, 0.0,
                       std::sin(pose.theta), std::cos(pose.theta));
}

}  // namespace pathlab
