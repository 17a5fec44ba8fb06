#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "pathlab/envs/config.hpp"
#include "pathlab/envs/types.hpp"

namespace pathlab::eval {

/// Cumulative pairwise action distance: sum of Euclidean distances between
/// consecutive sub-goal positions, in the units of the input (meters).
double cpad(std::span<const Eigen::Vector2d> positions);

/// CPAD of normalized actions after scaling (x, y) back to meters.
double cpad(std::span<const SubGoalAction> actions, const EnvConfig& cfg);

struct StatsSummary {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double min = 0.0;
};

/// Quantile by linear interpolation between closest ranks (type 7).
double quantile(std::vector<double> values, double p);

/// Median, quartiles, extremes. Throws std::invalid_argument on empty input.
StatsSummary summarize(std::span<const double> values);

}  // namespace pathlab::eval
