#include "pathlab/envs/environment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "pathlab/envs/obstacle.hpp"
#include "pathlab/envs/rewards.hpp"

namespace pathlab {

namespace {

// Keeps the robot body inside the field; velocity into a wall is zeroed.
void clamp_to_field(RobotState& s, const EnvConfig& cfg) {
  const double bx = cfg.field_half_length - cfg.robot_radius;
  const double by = cfg.field_half_width - cfg.robot_radius;
  if (s.pose.x > bx || s.pose.x < -bx) {
    s.pose.x = std::clamp(s.pose.x, -bx, bx);
    s.vel.vx = 0.0;
  }
  if (s.pose.y > by || s.pose.y < -by) {
    s.pose.y = std::clamp(s.pose.y, -by, by);
    s.vel.vy = 0.0;
  }
}

}  // namespace

PathPlanningEnv::PathPlanningEnv(EnvKind kind, EnvConfig cfg) : kind_(kind), cfg_(cfg) {
  cfg_.validate();
}

int PathPlanningEnv::observation_dim() const {
  return kind_ == EnvKind::Obstacle ? kObstacleObservationDim : kBaseObservationDim;
}

Observation PathPlanningEnv::reset(std::uint64_t seed) {
  rng_.seed(seed);
  const double bx = cfg_.field_half_length - cfg_.robot_radius;
  const double by = cfg_.field_half_width - cfg_.robot_radius;
  const int bodies = kind_ == EnvKind::Obstacle ? 3 : 2;

  std::array<Eigen::Vector2d, 3> spots;
  for (bool ok = false; !ok;) {
    for (int i = 0; i < bodies; ++i) spots[i] = {rng_.uniform(-bx, bx), rng_.uniform(-by, by)};
    ok = true;
    for (int i = 0; i < bodies && ok; ++i)
      for (int j = i + 1; j < bodies && ok; ++j)
        ok = (spots[i] - spots[j]).norm() >= cfg_.spawn_separation;
  }

  const auto heading = [this] { return wrap_angle(rng_.uniform(-std::numbers::pi, std::numbers::pi)); };
  robot_ = {};
  robot_.pose = {spots[0].x(), spots[0].y(), heading()};
  target_ = {spots[1].x(), spots[1].y(), heading()};
  obstacle_.reset();
  if (kind_ == EnvKind::Obstacle) {
    ObstacleState obs;
    obs.pose = {spots[2].x(), spots[2].y(), heading()};
    obs.heading = heading();
    obstacle_ = obs;
  }
  steps_ = 0;
  started_ = true;
  over_ = false;
  return observation();
}

SubGoalAction PathPlanningEnv::constrain(const SubGoalAction& action) const {
  SubGoalAction a(action.values.cwiseMax(-1.0).cwiseMin(1.0));
  // The heading pair is projected onto the unit circle rather than clipped so
  // that only its direction matters.
  const double norm = std::hypot(action.sin_theta(), action.cos_theta());
  if (norm > 0.0) {
    a.values[4] = action.sin_theta() / norm;
    a.values[5] = action.cos_theta() / norm;
  }
  if (kind_ != EnvKind::Baseline) {
    a.values[2] = 0.0;
    a.values[3] = 0.0;
  }
  return a;
}

Observation PathPlanningEnv::observation() const {
  return normalize(RawState{target_, Velocity2D{}, robot_, obstacle_}, cfg_);
}

StepResult PathPlanningEnv::step(const SubGoalAction& action) {
  if (!started_) throw EpisodeStateError("step called before reset");
  if (over_) throw EpisodeStateError("step called on a finished episode; reset first");
  if (!action.values.allFinite()) throw std::invalid_argument("action has non-finite components");

  const DenormalizedAction sub = denormalize_action(constrain(action), cfg_);
  const Velocity2D command = go_to_point(robot_, sub.pose, sub.vel, cfg_.limits, cfg_.gains);
  robot_ = integrate(robot_, command, cfg_.dt, cfg_.limits);
  clamp_to_field(robot_, cfg_);
  if (obstacle_) obstacle_ = obstacle_step(*obstacle_, rng_, cfg_);

  const Pose2D& ref = kind_ == EnvKind::Baseline ? robot_.pose : sub.pose;
  StepResult out;
  out.breakdown = reward_goal_terms(ref, target_, cfg_);
  if (obstacle_) {
    const ObstacleTerms ot = reward_obstacle_terms(sub.pose, *obstacle_, robot_, cfg_);
    out.breakdown.r_obst = ot.r_obst;
    out.breakdown.r_hit = ot.r_hit;
    out.collided = ot.hit;
  }
  out.succeeded = !out.collided && out.breakdown.r_t > 0.0 && within_goal(robot_.pose, target_, cfg_);
  out.breakdown.r_t = out.succeeded ? 1000.0 : 0.0;
  out.breakdown.recompute_total();

  ++steps_;
  out.reward = out.breakdown.total;
  out.terminated = out.succeeded || out.collided;
  out.truncated = !out.terminated && steps_ >= cfg_.max_steps;
  out.observation = observation();
  over_ = out.done();
  return out;
}

std::unique_ptr<PathPlanningEnv> make_env(EnvKind kind, const EnvConfig& cfg) {
  return std::make_unique<PathPlanningEnv>(kind, cfg);
}

StepResult frame_skip(Environment& env, const SubGoalAction& action, int n) {
  return frame_skip(env, action, n, [](const StepResult&) {});
}

}  // namespace pathlab
