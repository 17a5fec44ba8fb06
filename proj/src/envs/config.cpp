#include "pathlab/envs/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pathlab {

std::string_view to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::Baseline:
      return "baseline";
    case EnvKind::Proposed:
      return "proposed";
    case EnvKind::Obstacle:
      return "obstacle";
  }
  return "unknown";
}

EnvKind parse_env_kind(std::string_view name) {
  if (name == "baseline") return EnvKind::Baseline;
  if (name == "proposed") return EnvKind::Proposed;
  if (name == "obstacle") return EnvKind::Obstacle;
  throw std::invalid_argument("unknown env '" + std::string(name) +
                              "' (expected baseline|proposed|obstacle)");
}

void EnvConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string("env config: ") + name + " must be > 0");
  };
  positive(field_half_length, "field_half_length");
  positive(field_half_width, "field_half_width");
  positive(dt, "dt");
  positive(d_threshold, "d_threshold");
  positive(theta_threshold, "theta_threshold");
  positive(norm_max_pos, "norm_max_pos");
  positive(norm_max_vel, "norm_max_vel");
  positive(norm_max_omega, "norm_max_omega");
  positive(obstacle_radius, "obstacle_radius");
  positive(robot_radius, "robot_radius");
  positive(gaussian_sigma, "gaussian_sigma");
  if (max_steps < 1) throw std::invalid_argument("env config: max_steps must be >= 1");
  if (!(obstacle_speed_max >= 0.0))
    throw std::invalid_argument("env config: obstacle_speed_max must be >= 0");
  if (!(gaussian_weight >= 0.0))
    throw std::invalid_argument("env config: gaussian_weight must be >= 0");
  if (!(spawn_separation >= 0.0))
    throw std::invalid_argument("env config: spawn_separation must be >= 0");
  if (field_half_length <= robot_radius || field_half_width <= robot_radius)
    throw std::invalid_argument("env config: field smaller than the robot");
  if (!limits.valid()) throw std::invalid_argument("env config: motion limits must be > 0");
  if (!gains.valid()) throw std::invalid_argument("env config: controller gains must be > 0");
}

}  // namespace pathlab
