#pragma once

#include "pathlab/envs/config.hpp"
#include "pathlab/envs/types.hpp"
#include "pathlab/rng.hpp"

namespace pathlab {

inline constexpr double kObstacleTurnLimit = 0.39269908169872414;  // pi / 8

/// Advances the moving obstacle one dt. Speed is redrawn uniformly in
/// [0, obstacle_speed_max] every step and the heading takes a uniform turn in
/// [-pi/8, pi/8]. Positions that would leave the field (shrunk by the obstacle
/// radius) are mirrored back and the heading is reflected off that wall.
/// The body orientation is left untouched and omega stays zero.
ObstacleState obstacle_step(const ObstacleState& obstacle, Rng& rng, const EnvConfig& cfg);

}  // namespace pathlab
