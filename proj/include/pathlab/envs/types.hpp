#pragma once

#include <Eigen/Core>

#include "pathlab/kinematics.hpp"

namespace pathlab {

inline constexpr int kActionDim = 6;
inline constexpr int kBaseObservationDim = 13;
inline constexpr int kObstacleObservationDim = 18;

using ActionVector = Eigen::Matrix<double, kActionDim, 1>;
using Observation = Eigen::VectorXd;

/// Normalized sub-goal emitted by the planner: (x, y, vx, vy, sin, cos).
struct SubGoalAction {
  ActionVector values = ActionVector::Zero();

  SubGoalAction() = default;
  explicit SubGoalAction(const ActionVector& v) : values(v) {}
  SubGoalAction(double x, double y, double vx, double vy, double sin_theta, double cos_theta) {
    values << x, y, vx, vy, sin_theta, cos_theta;
  }

  double x() const { return values[0]; }
  double y() const { return values[1]; }
  double vx() const { return values[2]; }
  double vy() const { return values[3]; }
  double sin_theta() const { return values[4]; }
  double cos_theta() const { return values[5]; }

  bool operator==(const SubGoalAction& other) const { return values == other.values; }
};

struct ObstacleState {
  Pose2D pose;
  Velocity2D vel;
  /// Direction of travel; evolves by a bounded random walk.
  double heading = 0.0;
};

struct RewardBreakdown {
  double r_d = 0.0;
  double r_theta = 0.0;
  double r_t = 0.0;
  double r_obst = 0.0;
  double r_hit = 0.0;
  double total = 0.0;

  void recompute_total() { total = r_d + r_theta + r_t + r_obst + r_hit; }

  RewardBreakdown& operator+=(const RewardBreakdown& o) {
    r_d += o.r_d;
    r_theta += o.r_theta;
    r_t += o.r_t;
    r_obst += o.r_obst;
    r_hit += o.r_hit;
    recompute_total();
    return *this;
  }
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool terminated = false;
  bool truncated = false;
  RewardBreakdown breakdown;
  /// Terminated because the goal was reached (as opposed to a collision).
  bool succeeded = false;
  bool collided = false;
  /// Simulator steps consumed; larger than one only under frame skip.
  int sim_steps = 1;

  bool done() const { return terminated || truncated; }
};

}  // namespace pathlab
