#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "pathlab/envs/environment.hpp"
#include "pathlab/envs/obstacle.hpp"
#include "pathlab/envs/rewards.hpp"
#include "support/oracles.hpp"

using namespace pathlab;

namespace {

constexpr double kPi = std::numbers::pi;

SubGoalAction random_action(Rng& rng, double lo = -1.0, double hi = 1.0) {
  ActionVector a;
  for (int i = 0; i < kActionDim; ++i) a[i] = rng.uniform(lo, hi);
  return SubGoalAction(a);
}

std::optional<Pose2D> obstacle_pose(const PathPlanningEnv& env) {
  if (!env.obstacle()) return std::nullopt;
  return env.obstacle()->pose;
}

// Counts steps and terminates on a chosen one.
class ScriptedEnv final : public Environment {
 public:
  explicit ScriptedEnv(int terminate_at) : terminate_at_(terminate_at) {}
  Observation reset(std::uint64_t) override {
    calls = 0;
    return Observation::Zero(1);
  }
  StepResult step(const SubGoalAction&) override {
    ++calls;
    StepResult r;
    r.observation = Observation::Constant(1, calls);
    r.breakdown.r_d = 1.0;
    r.breakdown.recompute_total();
    r.reward = r.breakdown.total;
    r.terminated = calls == terminate_at_;
    return r;
  }
  int observation_dim() const override { return 1; }
  int calls = 0;

 private:
  int terminate_at_;
};

}  // namespace

TEST(EnvKind, ParseAndPrint) {
  for (EnvKind k : {EnvKind::Baseline, EnvKind::Proposed, EnvKind::Obstacle})
    EXPECT_EQ(parse_env_kind(to_string(k)), k);
  EXPECT_THROW(parse_env_kind("unknown"), std::invalid_argument);
}

TEST(EnvConfig, DefaultsAndValidation) {
  EnvConfig c;
  EXPECT_EQ(c.max_steps, 1200);
  EXPECT_EQ(c.gaussian_sigma, 1.0);
  EXPECT_NO_THROW(c.validate());
  c.d_threshold = 0.0;
  try {
    c.validate();
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("d_threshold"), std::string::npos);
  }
}

TEST(Rewards, AtGoal) {
  const RewardBreakdown r = reward_goal_terms({1, 1, 0.5}, {1, 1, 0.5}, EnvConfig{});
  EXPECT_EQ(r.r_d, 10.0);
  EXPECT_EQ(r.r_theta, 1.0);
  EXPECT_EQ(r.r_t, 1000.0);
  EXPECT_EQ(r.total, 1011.0);
}

TEST(Rewards, BeyondBothThresholds) {
  const RewardBreakdown r = reward_goal_terms({2.3, 0, kPi / 2}, {0, 0, 0}, EnvConfig{});
  EXPECT_NEAR(r.r_d, -2.3, 1e-15);
  EXPECT_NEAR(r.r_theta, -0.5, 1e-15);
  EXPECT_EQ(r.r_t, 0.0);
  EXPECT_NEAR(r.total, -2.8, 1e-15);
}

TEST(Rewards, MixedThresholdsMatchReference) {
  const EnvConfig cfg;
  const Pose2D ref{0.02, 0.0, kPi / 4};
  const Pose2D target{0, 0, 0};
  const RewardBreakdown r = reward_goal_terms(ref, target, cfg);
  const oracle::Terms o = oracle::reward(EnvKind::Baseline, ref, {0, 0, 0}, target, std::nullopt, cfg);
  EXPECT_EQ(r.r_d, 10.0);
  EXPECT_NEAR(r.r_theta, -0.25, 1e-15);
  EXPECT_EQ(r.r_t, 0.0);
  EXPECT_NEAR(r.r_d, o.r_d, 1e-15);
  EXPECT_NEAR(r.r_theta, o.r_theta, 1e-15);
}

TEST(Rewards, ThresholdsAreInclusive) {
  EnvConfig cfg;
  cfg.d_threshold = 0.5;
  cfg.theta_threshold = 0.25;
  const RewardBreakdown r = reward_goal_terms({0.5, 0, 0.25}, {0, 0, 0}, cfg);
  EXPECT_EQ(r.r_d, 10.0);
  EXPECT_EQ(r.r_theta, 1.0);
  EXPECT_EQ(r.r_t, 1000.0);
}

TEST(Rewards, GaussianProximity) {
  const EnvConfig cfg;
  RobotState far_robot;
  far_robot.pose = {4, 2, 0};
  ObstacleState ob;

  EXPECT_EQ(reward_obstacle_terms({0, 0, 0}, ob, far_robot, cfg).r_obst, -cfg.gaussian_weight);
  EXPECT_LT(std::fabs(reward_obstacle_terms({10, 0, 0}, ob, far_robot, cfg).r_obst), 1e-10 * cfg.gaussian_weight);
  const double expected = -std::exp(-0.5);
  EXPECT_NEAR(expected, -0.6065306597126334, 1e-15);
  EXPECT_NEAR(reward_obstacle_terms({1, 0, 0}, ob, far_robot, cfg).r_obst, expected, 1e-15);
  EXPECT_FALSE(reward_obstacle_terms({1, 0, 0}, ob, far_robot, cfg).hit);
}

TEST(Rewards, HitUsesBodyDistance) {
  const EnvConfig cfg;
  ObstacleState ob;
  RobotState robot;
  robot.pose = {0.17, 0, 0};
  const ObstacleTerms t = reward_obstacle_terms({3, 0, 0}, ob, robot, cfg);
  EXPECT_TRUE(t.hit);
  EXPECT_EQ(t.r_hit, -1000.0);
  robot.pose = {0.19, 0, 0};
  EXPECT_FALSE(reward_obstacle_terms({3, 0, 0}, ob, robot, cfg).hit);
}

TEST(Normalization, ZeroStateMapsToZeroExceptCosines) {
  RawState raw;
  raw.obstacle = ObstacleState{};
  const Observation o = normalize(raw, EnvConfig{});
  ASSERT_EQ(o.size(), kObstacleObservationDim);
  for (int i = 0; i < o.size(); ++i) EXPECT_EQ(o[i], (i == 2 || i == 8) ? 1.0 : 0.0) << i;
}

TEST(Normalization, ClipsOutOfRangeValues) {
  RawState raw;
  raw.robot.pose.x = 100.0;
  raw.robot.vel.omega = -1000.0;
  const Observation o = normalize(raw, EnvConfig{});
  EXPECT_EQ(o.size(), kBaseObservationDim);
  EXPECT_EQ(o[6], 1.0);
  EXPECT_EQ(o[12], -1.0);
}

TEST(Normalization, DenormalizeAction) {
  const DenormalizedAction d = denormalize_action({0.5, -0.5, 0, 0, 0, 1}, EnvConfig{});
  EXPECT_EQ(d.pose.x, 2.25);
  EXPECT_EQ(d.pose.y, -2.25);
  EXPECT_EQ(d.pose.theta, 0.0);
  EXPECT_EQ(denormalize_action({0, 0, 0, 0, 0, 0}, EnvConfig{}).pose.theta, 0.0);
}

TEST(Normalization, ActionForPoseRoundTrips) {
  Rng rng(4);
  const EnvConfig cfg;
  for (int i = 0; i < 1000; ++i) {
    const Pose2D p{rng.uniform(-4.5, 4.5), rng.uniform(-3, 3), rng.uniform(-kPi, kPi)};
    const DenormalizedAction d = denormalize_action(action_for_pose(p, cfg), cfg);
    EXPECT_NEAR(d.pose.x, p.x, 1e-12);
    EXPECT_NEAR(d.pose.y, p.y, 1e-12);
    EXPECT_NEAR(oracle::brute_wrap(d.pose.theta - p.theta), 0.0, 1e-12);
  }
}

TEST(Reset, DimensionsPerEnv) {
  EXPECT_EQ(PathPlanningEnv(EnvKind::Baseline, {}).reset(1).size(), 13);
  EXPECT_EQ(PathPlanningEnv(EnvKind::Proposed, {}).reset(1).size(), 13);
  EXPECT_EQ(PathPlanningEnv(EnvKind::Obstacle, {}).reset(1).size(), 18);
  EXPECT_EQ(PathPlanningEnv(EnvKind::Obstacle, {}).observation_dim(), 18);
}

TEST(Reset, SameSeedSameObservation) {
  for (EnvKind k : {EnvKind::Baseline, EnvKind::Proposed, EnvKind::Obstacle}) {
    PathPlanningEnv a(k, {}), b(k, {});
    EXPECT_EQ(a.reset(77), b.reset(77));
    EXPECT_NE(a.reset(78), b.reset(79));
  }
}

TEST(Reset, ObservationsBoundedAndBodiesSeparated) {
  PathPlanningEnv env(EnvKind::Obstacle, {});
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Observation o = env.reset(s);
    EXPECT_LE(o.cwiseAbs().maxCoeff(), 1.0);
    const Eigen::Vector2d robot = env.robot().pose.position();
    const Eigen::Vector2d target = env.target().position();
    EXPECT_GE((robot - target).norm(), 0.5);
    EXPECT_GE((robot - env.obstacle()->pose.position()).norm(), 0.5);
    EXPECT_EQ(env.robot().vel.vx, 0.0);
  }
}

TEST(Step, LifecycleErrors) {
  PathPlanningEnv env(EnvKind::Proposed, {});
  EXPECT_THROW(env.step(SubGoalAction{}), EpisodeStateError);
  env.reset(3);
  ActionVector nan = ActionVector::Zero();
  nan[0] = std::nan("");
  EXPECT_THROW(env.step(SubGoalAction(nan)), std::invalid_argument);
  StepResult r;
  do r = env.step(SubGoalAction(0.9, 0.9, 0, 0, 0, 1));
  while (!r.done());
  EXPECT_THROW(env.step(SubGoalAction{}), EpisodeStateError);
  env.reset(4);
  EXPECT_NO_THROW(env.step(SubGoalAction{}));
}

TEST(Step, ProposedZeroesVelocity) {
  PathPlanningEnv proposed(EnvKind::Proposed, {});
  PathPlanningEnv baseline(EnvKind::Baseline, {});
  const SubGoalAction a(0.2, 0.1, 0.7, 0.7, 0, 1);
  const SubGoalAction c = proposed.constrain(a);
  EXPECT_EQ(c.vx(), 0.0);
  EXPECT_EQ(c.vy(), 0.0);
  EXPECT_EQ(baseline.constrain(a).vx(), 0.7);

  // Zero-velocity and 0.7-velocity requests drive the robot identically.
  PathPlanningEnv other(EnvKind::Proposed, {});
  proposed.reset(5);
  other.reset(5);
  for (int i = 0; i < 50; ++i) {
    const StepResult r1 = proposed.step(a);
    const StepResult r2 = other.step(SubGoalAction(0.2, 0.1, 0, 0, 0, 1));
    EXPECT_EQ(r1.observation, r2.observation);
    EXPECT_EQ(r1.reward, r2.reward);
  }
}

TEST(Step, ReachingTargetTerminatesWithBonus) {
  for (EnvKind k : {EnvKind::Baseline, EnvKind::Proposed}) {
    PathPlanningEnv env(k, {});
    env.reset(12);
    const SubGoalAction a = action_for_pose(env.target(), env.config());
    StepResult r;
    int n = 0;
    do {
      r = env.step(a);
      ++n;
      if (!r.done()) {
        EXPECT_EQ(r.breakdown.r_t, 0.0);
      }
    } while (!r.done());
    EXPECT_TRUE(r.terminated);
    EXPECT_FALSE(r.truncated);
    EXPECT_TRUE(r.succeeded);
    EXPECT_EQ(r.breakdown.r_t, 1000.0);
    EXPECT_LT(n, 1200);
    EXPECT_TRUE(within_goal(env.robot().pose, env.target(), env.config()));
  }
}

TEST(Step, SubGoalAtTargetAloneIsNotSuccess) {
  // In Proposed the reward reference is the sub-goal, but success needs the
  // robot too: the first step cannot succeed since bodies spawn >= 0.5 m apart.
  PathPlanningEnv env(EnvKind::Proposed, {});
  env.reset(8);
  const StepResult r = env.step(action_for_pose(env.target(), env.config()));
  EXPECT_EQ(r.breakdown.r_d, 10.0);
  EXPECT_EQ(r.breakdown.r_theta, 1.0);
  EXPECT_EQ(r.breakdown.r_t, 0.0);
  EXPECT_FALSE(r.terminated);
}

TEST(Step, DrivingIntoObstacleCollides) {
  PathPlanningEnv env(EnvKind::Obstacle, {});
  env.reset(2);
  StepResult r;
  do r = env.step(action_for_pose(env.obstacle()->pose, env.config()));
  while (!r.done());
  EXPECT_TRUE(r.terminated);
  EXPECT_TRUE(r.collided);
  EXPECT_FALSE(r.succeeded);
  EXPECT_EQ(r.breakdown.r_hit, -1000.0);
}

TEST(Step, TruncatesAtMaxSteps) {
  EnvConfig cfg;
  cfg.max_steps = 30;
  PathPlanningEnv env(EnvKind::Proposed, cfg);
  env.reset(1);
  // Park the sub-goal at a corner, far from the target in all but rare seeds.
  const SubGoalAction a = action_for_pose({-env.target().x, -env.target().y, env.target().theta + kPi}, cfg);
  for (int i = 1; i <= 30; ++i) {
    const StepResult r = env.step(a);
    EXPECT_FALSE(r.terminated && r.truncated);
    EXPECT_EQ(r.truncated, i == 30);
  }
}

TEST(Step, HeadingPairScaleInvariance) {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    PathPlanningEnv a(EnvKind::Proposed, {}), b(EnvKind::Proposed, {});
    const std::uint64_t seed = 100 + trial;
    a.reset(seed);
    b.reset(seed);
    SubGoalAction base = action_for_pose(a.target(), a.config());
    base.values[0] += rng.uniform(-0.005, 0.005);
    SubGoalAction scaled = base;
    const double k = rng.uniform(0.01, 50.0);
    scaled.values[4] *= k;
    scaled.values[5] *= k;
    StepResult ra, rb;
    do {
      ra = a.step(base);
      rb = b.step(scaled);
      ASSERT_EQ(ra.succeeded, rb.succeeded);
      ASSERT_NEAR(ra.reward, rb.reward, 1e-9);
    } while (!ra.done());
    EXPECT_TRUE(rb.done());
  }
}

TEST(Step, RewardsMatchReferenceAndInvariantsHold) {
  Rng rng(1234);
  const EnvConfig cfg;
  for (EnvKind k : {EnvKind::Baseline, EnvKind::Proposed, EnvKind::Obstacle}) {
    PathPlanningEnv env(k, cfg);
    env.reset(rng.next_u64());
    int successes = 0;
    for (int i = 0; i < 3000; ++i) {
      SubGoalAction a = i % 3 == 0 ? random_action(rng, -1.3, 1.3) : action_for_pose(env.target(), cfg);
      if (i % 3 == 2) a.values.head<2>() += Eigen::Vector2d(rng.uniform(-0.01, 0.01), rng.uniform(-0.01, 0.01));
      const StepResult r = env.step(a);
      const oracle::Terms o =
          oracle::reward(k, env.robot().pose, oracle::decode_action(a, cfg), env.target(), obstacle_pose(env), cfg);
      ASSERT_LE(oracle::max_abs_diff(o, r.breakdown), 1e-9) << "step " << i;
      EXPECT_NEAR(r.breakdown.total, r.breakdown.r_d + r.breakdown.r_theta + r.breakdown.r_t + r.breakdown.r_obst +
                                         r.breakdown.r_hit,
                  1e-12);
      EXPECT_EQ(r.breakdown.r_t == 1000.0, r.succeeded && r.terminated);
      EXPECT_FALSE(r.terminated && r.truncated);
      EXPECT_LE(r.observation.cwiseAbs().maxCoeff(), 1.0);
      if (k != EnvKind::Obstacle) {
        EXPECT_EQ(r.breakdown.r_obst, 0.0);
        EXPECT_EQ(r.breakdown.r_hit, 0.0);
      }
      successes += r.succeeded;
      if (r.done()) env.reset(rng.next_u64());
    }
    EXPECT_GT(successes, 0) << to_string(k);
  }
}

TEST(Step, TracesAreReproducible) {
  auto trace = [](std::uint64_t seed) {
    PathPlanningEnv env(EnvKind::Obstacle, {});
    Rng rng(seed);
    std::vector<double> out;
    env.reset(seed);
    for (int i = 0; i < 500; ++i) {
      const StepResult r = env.step(random_action(rng));
      out.insert(out.end(), r.observation.data(), r.observation.data() + r.observation.size());
      out.push_back(r.reward);
      if (r.done()) env.reset(seed + i);
    }
    return out;
  };
  EXPECT_EQ(trace(9), trace(9));
}

TEST(Obstacle, ZeroSpeedStaysPut) {
  EnvConfig cfg;
  cfg.obstacle_speed_max = 0.0;
  Rng rng(1);
  ObstacleState o;
  o.pose = {1.0, -1.0, 0.3};
  for (int i = 0; i < 100; ++i) o = obstacle_step(o, rng, cfg);
  EXPECT_EQ(o.pose.x, 1.0);
  EXPECT_EQ(o.pose.y, -1.0);
  EXPECT_EQ(o.pose.theta, 0.3);
}

TEST(Obstacle, SpeedAndPositionBounded) {
  const EnvConfig cfg;
  Rng rng(2);
  Rng replay(2);
  ObstacleState o;
  const double bx = cfg.field_half_length - cfg.obstacle_radius;
  const double by = cfg.field_half_width - cfg.obstacle_radius;
  for (int i = 0; i < 100000; ++i) {
    const ObstacleState prev = o;
    o = obstacle_step(o, rng, cfg);
    const double speed = std::hypot(o.vel.vx, o.vel.vy);
    ASSERT_LE(speed, cfg.obstacle_speed_max + 1e-12);
    ASSERT_LE(std::fabs(o.pose.x), bx);
    ASSERT_LE(std::fabs(o.pose.y), by);
    ASSERT_EQ(o.vel.omega, 0.0);

    // Wall-reflection oracle fed with the same draws: free move, then mirror.
    const double s = replay.uniform(0.0, cfg.obstacle_speed_max);
    const double h = prev.heading + replay.uniform(-kObstacleTurnLimit, kObstacleTurnLimit);
    double ex = prev.pose.x + s * std::cos(h) * cfg.dt;
    double ey = prev.pose.y + s * std::sin(h) * cfg.dt;
    if (ex > bx) ex = 2 * bx - ex;
    if (ex < -bx) ex = -2 * bx - ex;
    if (ey > by) ey = 2 * by - ey;
    if (ey < -by) ey = -2 * by - ey;
    ASSERT_NEAR(o.pose.x, ex, 1e-12);
    ASSERT_NEAR(o.pose.y, ey, 1e-12);
    ASSERT_NEAR(speed, s, 1e-12);
  }
}

TEST(FrameSkip, SingleRepeatMatchesPlainStep) {
  PathPlanningEnv a(EnvKind::Obstacle, {}), b(EnvKind::Obstacle, {});
  a.reset(6);
  b.reset(6);
  Rng rng(6);
  for (int i = 0; i < 300; ++i) {
    const SubGoalAction act = random_action(rng);
    const StepResult r1 = a.step(act);
    const StepResult r2 = frame_skip(b, act, 1);
    ASSERT_EQ(r1.observation, r2.observation);
    ASSERT_EQ(r1.reward, r2.reward);
    ASSERT_EQ(r1.terminated, r2.terminated);
    ASSERT_EQ(r1.truncated, r2.truncated);
    ASSERT_EQ(r2.sim_steps, 1);
    if (r1.done()) {
      a.reset(i);
      b.reset(i);
    }
  }
}

TEST(FrameSkip, StopsAtInnerTermination) {
  ScriptedEnv env(3);
  env.reset(0);
  int seen = 0;
  const StepResult r = frame_skip(env, SubGoalAction{}, 16, [&](const StepResult&) { ++seen; });
  EXPECT_EQ(env.calls, 3);
  EXPECT_EQ(seen, 3);
  EXPECT_EQ(r.sim_steps, 3);
  EXPECT_TRUE(r.terminated);
  EXPECT_EQ(r.reward, 3.0);
  EXPECT_EQ(r.breakdown.r_d, 3.0);
  EXPECT_EQ(r.observation[0], 3.0);
}

TEST(FrameSkip, SumsRewardsOverInnerSteps) {
  PathPlanningEnv a(EnvKind::Proposed, {}), b(EnvKind::Proposed, {});
  a.reset(10);
  b.reset(10);
  const SubGoalAction act(0.3, -0.2, 0, 0, 1, 0);
  double sum = 0.0;
  for (int i = 0; i < 16; ++i) sum += a.step(act).reward;
  const StepResult r = frame_skip(b, act, 16);
  EXPECT_NEAR(r.reward, sum, 1e-9);
  EXPECT_EQ(r.observation, a.observation());
  EXPECT_THROW(frame_skip(b, act, 0), std::invalid_argument);
}

TEST(FrameSkip, AtMost75DecisionsPerEpisode) {
  PathPlanningEnv env(EnvKind::Obstacle, {});
  Rng rng(8);
  for (std::uint64_t ep = 0; ep < 40; ++ep) {
    env.reset(ep);
    int decisions = 0;
    StepResult r;
    do {
      r = frame_skip(env, random_action(rng), 16);
      ++decisions;
    } while (!r.done());
    EXPECT_LE(decisions, 75);
    if (r.truncated) {
      EXPECT_EQ(decisions, 75);
    }
  }
}
