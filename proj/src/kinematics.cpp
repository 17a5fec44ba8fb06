#include "pathlab/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pathlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Scales v down so that its norm is at most max_norm.
Eigen::Vector2d saturate(const Eigen::Vector2d& v, double max_norm) {
  const double n = v.norm();
  if (n > max_norm && n > 0.0) return v * (max_norm / n);
  return v;
}

}  // namespace

bool MotionLimits::valid() const {
  return max_linear_speed > 0.0 && max_angular_speed > 0.0 && max_linear_accel > 0.0 &&
         max_angular_accel > 0.0;
}

bool ControllerGains::valid() const { return kp_pos > 0.0 && kp_theta > 0.0; }

double wrap_angle(double a) {
  if (!std::isfinite(a)) return a;
  double r = std::remainder(a, kTwoPi);  // [-pi, pi]
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double angle_diff(double a, double b) { return wrap_angle(a - b); }

Velocity2D go_to_point(const RobotState& state, const Pose2D& subgoal,
                       const Velocity2D& subgoal_vel, const MotionLimits& limits,
                       const ControllerGains& gains) {
  const Eigen::Vector2d error = subgoal.position() - state.pose.position();
  const Eigen::Vector2d linear =
      saturate(gains.kp_pos * error + subgoal_vel.linear(), limits.max_linear_speed);
  const double omega =
      std::clamp(gains.kp_theta * angle_diff(subgoal.theta, state.pose.theta),
                 -limits.max_angular_speed, limits.max_angular_speed);
  return {linear.x(), linear.y(), omega};
}

RobotState integrate(const RobotState& state, const Velocity2D& command, double dt,
                     const MotionLimits& limits) {
  const Eigen::Vector2d v0 = state.vel.linear();
  const Eigen::Vector2d dv = saturate(command.linear() - v0, limits.max_linear_accel * dt);
  const Eigen::Vector2d v1 = saturate(v0 + dv, limits.max_linear_speed);

  const double max_dw = limits.max_angular_accel * dt;
  const double w1 =
      std::clamp(state.vel.omega + std::clamp(command.omega - state.vel.omega, -max_dw, max_dw),
                 -limits.max_angular_speed, limits.max_angular_speed);

  RobotState next;
  next.vel = {v1.x(), v1.y(), w1};
  next.pose.x = state.pose.x + v1.x() * dt;
  next.pose.y = state.pose.y + v1.y() * dt;
  next.pose.theta = wrap_angle(state.pose.theta + w1 * dt);
  return next;
}

}  // namespace pathlab
