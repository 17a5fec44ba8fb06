#pragma once

#include <Eigen/Core>

namespace pathlab {

/// Planar pose in the global field frame. theta is kept in (-pi, pi].
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Eigen::Vector2d position() const { return {x, y}; }
};

/// Global-frame linear velocity plus yaw rate.
struct Velocity2D {
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;

  Eigen::Vector2d linear() const { return {vx, vy}; }
};

struct RobotState {
  Pose2D pose;
  Velocity2D vel;
};

struct MotionLimits {
  double max_linear_speed = 2.5;
  double max_angular_speed = 10.0;
  double max_linear_accel = 10.0;
  double max_angular_accel = 50.0;

  bool valid() const;
};

struct ControllerGains {
  double kp_pos = 3.0;
  double kp_theta = 4.0;

  bool valid() const;
};

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

/// (a - b) wrapped into (-pi, pi].
double angle_diff(double a, double b);

/// Proportional goToPoint law with velocity feedforward.
///
/// The linear command is kp_pos * (subgoal - position) + feedforward, scaled
/// down as a vector so its norm never exceeds max_linear_speed. The yaw rate is
/// kp_theta * angle_diff(subgoal.theta, pose.theta), clamped to
/// max_angular_speed.
Velocity2D go_to_point(const RobotState& state, const Pose2D& subgoal,
                       const Velocity2D& subgoal_vel, const MotionLimits& limits,
                       const ControllerGains& gains);

/// One semi-implicit Euler step. The velocity moves toward `command` by at
/// most accel * dt (linear change limited as a vector), is clamped to the speed
/// envelope, and the new velocity advances the pose.
RobotState integrate(const RobotState& state, const Velocity2D& command, double dt,
                     const MotionLimits& limits);

}  // namespace pathlab
