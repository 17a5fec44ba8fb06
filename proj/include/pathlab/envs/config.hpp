#pragma once

#include <string>
#include <string_view>

#include "pathlab/kinematics.hpp"

namespace pathlab {

enum class EnvKind { Baseline, Proposed, Obstacle };

std::string_view to_string(EnvKind kind);
/// Throws std::invalid_argument for anything other than baseline|proposed|obstacle.
EnvKind parse_env_kind(std::string_view name);

struct EnvConfig {
  double field_half_length = 4.5;
  double field_half_width = 3.0;
  double dt = 0.025;
  int max_steps = 1200;
  double d_threshold = 0.05;
  double theta_threshold = 0.17453292519943295;  // 10 degrees
  double norm_max_pos = 4.5;
  double norm_max_vel = 2.5;
  double norm_max_omega = 10.0;
  double obstacle_speed_max = 1.0;
  double obstacle_radius = 0.09;
  double robot_radius = 0.09;
  double gaussian_sigma = 1.0;
  double gaussian_weight = 1.0;
  double spawn_separation = 0.5;

  MotionLimits limits;
  ControllerGains gains;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

}  // namespace pathlab
