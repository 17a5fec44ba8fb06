#include "pathlab/envs/obstacle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pathlab {

namespace {

// Mirrors `pos` back inside [-bound, bound]; returns true when it reflected.
bool reflect(double& pos, double bound) {
  bool reflected = false;
  // A single step never exceeds the field width, but loop in case of tiny fields.
  for (int i = 0; i < 8 && (pos > bound || pos < -bound); ++i) {
    pos = pos > bound ? 2.0 * bound - pos : -2.0 * bound - pos;
    reflected = true;
  }
  if (pos > bound || pos < -bound) pos = std::clamp(pos, -bound, bound);
  return reflected;
}

}  // namespace

ObstacleState obstacle_step(const ObstacleState& obstacle, Rng& rng, const EnvConfig& cfg) {
  ObstacleState next = obstacle;
  const double speed = rng.uniform(0.0, cfg.obstacle_speed_max);
  double heading = wrap_angle(obstacle.heading + rng.uniform(-kObstacleTurnLimit, kObstacleTurnLimit));
  double vx = speed * std::cos(heading);
  double vy = speed * std::sin(heading);

  double x = obstacle.pose.x + vx * cfg.dt;
  double y = obstacle.pose.y + vy * cfg.dt;
  if (reflect(x, cfg.field_half_length - cfg.obstacle_radius)) {
    vx = -vx;
    heading = std::numbers::pi - heading;
  }
  if (reflect(y, cfg.field_half_width - cfg.obstacle_radius)) {
    vy = -vy;
    heading = -heading;
  }

  next.pose.x = x;
  next.pose.y = y;
  next.vel = {vx, vy, 0.0};
  next.heading = wrap_angle(heading);
  return next;
}

}  // namespace pathlab
