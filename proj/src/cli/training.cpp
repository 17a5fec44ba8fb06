#include "pathlab/cli/training.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "pathlab/agent/checkpoint.hpp"
#include "pathlab/envs/environment.hpp"

namespace pathlab::cli {

using nlohmann::json;

namespace {

// Evaluation episodes use a seed range disjoint from training.
constexpr std::uint64_t kEvalSeedOffset = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

json loss_json(const agent::LossReport& l) {
  return {{"critic_loss", l.critic_loss}, {"actor_loss", l.actor_loss},       {"alpha", l.alpha},
          {"entropy", l.entropy},         {"caps_temporal", l.caps_temporal}, {"caps_spatial", l.caps_spatial},
          {"mean_q", l.mean_q}};
}

}  // namespace

std::uint64_t episode_seed(std::uint64_t run_seed, std::uint64_t index) { return splitmix64(run_seed ^ splitmix64(index)); }

eval::Policy greedy_policy(Agent& agent) {
  return [&agent](const Observation& obs) { return agent.act(obs, true); };
}

TrainSummary train(RunConfig cfg, std::ostream* progress) {
  cfg.resolve();
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);

  TrainSummary summary;
  summary.config_path = (fs::path(cfg.output_dir) / "config.json").string();
  summary.metrics_path = (fs::path(cfg.output_dir) / "metrics.jsonl").string();
  summary.checkpoint_path = (fs::path(cfg.output_dir) / "checkpoint.bin").string();
  {
    std::ofstream out(summary.config_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + summary.config_path);
    out << to_json(cfg).dump(2) << '\n';
  }
  std::ofstream metrics(summary.metrics_path, std::ios::trunc);
  if (!metrics) throw std::runtime_error("cannot write " + summary.metrics_path);

  const int skip = cfg.skip();
  auto env = make_env(cfg.env, cfg.env_config);
  auto eval_env = make_env(cfg.env, cfg.env_config);
  Agent agent(env->observation_dim(), cfg.sac);
  agent::ReplayBuffer<TrainScalar> buffer(env->observation_dim(), static_cast<std::size_t>(cfg.sac.buffer_capacity));

  std::int64_t sim_steps = 0;
  std::int64_t decisions = 0;
  std::int64_t episodes = 0;
  std::int64_t updates = 0;
  std::int64_t next_eval = cfg.eval_every > 0 ? cfg.eval_every : -1;
  agent::LossReport last_loss;
  last_loss.alpha = agent.alpha();

  Observation obs = env->reset(episode_seed(cfg.seed, 0));
  double ep_return = 0.0;
  std::int64_t ep_steps = 0;
  std::int64_t ep_decisions = 0;

  auto run_eval = [&](const char* kind) {
    const auto records = eval::run_episodes(*eval_env, greedy_policy(agent), cfg.eval_episodes,
                                            cfg.seed + kEvalSeedOffset, skip);
    const eval::EvalSummary s = eval::evaluate(records, cfg.env_config);
    json line = {{"type", kind},
                 {"sim_steps", sim_steps},
                 {"decisions", decisions},
                 {"updates", updates},
                 {"episode_length_median", s.episode_length.median},
                 {"cpad_median", s.cpad.median},
                 {"success_rate", s.success_rate},
                 {"collision_rate", s.collision_rate},
                 {"alpha", agent.alpha()},
                 {"loss", loss_json(last_loss)}};
    metrics << line.dump() << '\n';
    if (progress) *progress << line.dump() << std::endl;
  };

  while (sim_steps < cfg.total_env_steps) {
    const bool warm = sim_steps < cfg.sac.warmup_steps;
    const SubGoalAction action = warm ? agent.random_action() : agent.act(obs, false);
    const StepResult r = frame_skip(*env, action, skip);
    buffer.push(obs, action, cfg.sac.reward_scale * r.reward, r.observation, r.terminated);
    sim_steps += r.sim_steps;
    ++decisions;
    ep_return += r.reward;
    ep_steps += r.sim_steps;
    ++ep_decisions;
    obs = r.observation;

    if (sim_steps >= cfg.sac.warmup_steps && buffer.size() >= static_cast<std::size_t>(cfg.sac.batch_size) &&
        decisions % cfg.sac.train_every == 0) {
      for (int g = 0; g < cfg.sac.gradient_steps; ++g) {
        last_loss = agent.update(buffer);
        ++updates;
      }
    }

    if (r.done()) {
      json line = {{"type", "episode"},     {"sim_steps", sim_steps},     {"decisions", decisions},
                   {"episode", episodes},   {"return", ep_return},        {"length", ep_steps},
                   {"agent_decisions", ep_decisions}, {"success", r.succeeded}, {"collided", r.collided},
                   {"alpha", agent.alpha()}, {"critic_loss", last_loss.critic_loss},
                   {"actor_loss", last_loss.actor_loss}};
      metrics << line.dump() << '\n';
      ++episodes;
      obs = env->reset(episode_seed(cfg.seed, static_cast<std::uint64_t>(episodes)));
      ep_return = 0.0;
      ep_steps = 0;
      ep_decisions = 0;
    }

    if (next_eval > 0 && sim_steps >= next_eval) {
      run_eval("eval");
      while (next_eval <= sim_steps) next_eval += cfg.eval_every;
    }
  }

  run_eval("final");
  agent::save_checkpoint(agent, summary.checkpoint_path);

  summary.sim_steps = sim_steps;
  summary.decisions = decisions;
  summary.episodes = episodes;
  summary.updates = updates;
  return summary;
}

}  // namespace pathlab::cli
