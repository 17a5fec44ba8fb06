#include "pathlab/eval/episodes.hpp"

#include <stdexcept>

namespace pathlab::eval {

SubGoalAction target_policy(const Observation& obs) {
  if (obs.size() < kBaseObservationDim) throw std::invalid_argument("target_policy: observation too short");
  return SubGoalAction(obs[0], obs[1], 0.0, 0.0, obs[3], obs[2]);
}

EpisodeRecord run_episode(PathPlanningEnv& env, const Policy& policy, std::uint64_t seed, int frame_skip) {
  EpisodeRecord rec;
  Observation obs = env.reset(seed);
  rec.target = env.target();
  rec.robot_path.push_back(env.robot().pose);
  if (env.obstacle()) rec.obstacle_path.push_back(env.obstacle()->pose);

  for (bool done = false; !done;) {
    const SubGoalAction action = policy(obs);
    if (!action.values.allFinite()) throw std::runtime_error("policy produced a non-finite action");
    rec.actions.push_back(env.constrain(action));
    const StepResult r = pathlab::frame_skip(env, action, frame_skip, [&](const StepResult&) {
      rec.robot_path.push_back(env.robot().pose);
      if (env.obstacle()) rec.obstacle_path.push_back(env.obstacle()->pose);
    });
    rec.length_steps += r.sim_steps;
    rec.episode_return += r.reward;

    DecisionLog log;
    log.step = rec.length_steps;
    log.action = rec.actions.back();
    log.robot = env.robot().pose;
    log.reward = r.reward;
    log.breakdown = r.breakdown;
    log.terminated = r.terminated;
    log.truncated = r.truncated;
    rec.decisions.push_back(log);

    rec.succeeded = r.succeeded;
    rec.collided = r.collided;
    obs = r.observation;
    done = r.done();
  }
  return rec;
}

std::vector<EpisodeRecord> run_episodes(PathPlanningEnv& env, const Policy& policy, int n, std::uint64_t seed,
                                        int frame_skip) {
  if (n < 0) throw std::invalid_argument("run_episodes: n must be >= 0");
  std::vector<EpisodeRecord> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(run_episode(env, policy, seed + static_cast<std::uint64_t>(i), frame_skip));
  return out;
}

EvalSummary evaluate(std::span<const EpisodeRecord> records, const EnvConfig& cfg) {
  if (records.empty()) throw std::invalid_argument("evaluate: no episodes");
  std::vector<double> lengths;
  std::vector<double> cpads;
  int collided = 0;
  int succeeded = 0;
  for (const auto& r : records) {
    lengths.push_back(static_cast<double>(r.length_steps));
    cpads.push_back(cpad(r.actions, cfg));
    collided += r.collided ? 1 : 0;
    succeeded += r.succeeded ? 1 : 0;
  }
  EvalSummary s;
  s.n = static_cast<int>(records.size());
  s.episode_length = summarize(lengths);
  s.cpad = summarize(cpads);
  s.collision_rate = static_cast<double>(collided) / s.n;
  s.success_rate = static_cast<double>(succeeded) / s.n;
  return s;
}

}  // namespace pathlab::eval
