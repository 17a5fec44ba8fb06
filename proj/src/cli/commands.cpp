#include "pathlab/cli/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "pathlab/agent/checkpoint.hpp"
#include "pathlab/cli/run_config.hpp"
#include "pathlab/cli/training.hpp"
#include "pathlab/eval/export.hpp"

namespace pathlab::cli {

namespace fs = std::filesystem;

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("SSL_PATHLAB_SEED"); s && *s) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("SSL_PATHLAB_SEED is not an integer: ") + s);
    }
  }
  return fallback;
}

namespace {

// Everything needed to play episodes with one policy.
struct PolicyContext {
  RunConfig run;
  std::unique_ptr<Agent> agent;
  std::unique_ptr<Rng> rng;
  eval::Policy policy;
};

PolicyContext make_context(const PolicySource& src, const std::optional<EnvKind>& env,
                           const std::optional<std::string>& setup, std::uint64_t seed) {
  PolicyContext ctx;
  if (!src.checkpoint.empty() && !src.builtin.empty())
    throw std::invalid_argument("give either a checkpoint or a built-in policy, not both");
  if (src.checkpoint.empty() && src.builtin.empty())
    throw std::invalid_argument("no policy: pass --checkpoint or --policy");

  if (!src.checkpoint.empty()) {
    if (!fs::exists(src.checkpoint)) throw std::invalid_argument("missing checkpoint: " + src.checkpoint);
    const fs::path cfg_path = fs::path(src.checkpoint).parent_path() / "config.json";
    if (fs::exists(cfg_path)) ctx.run = load_run_config(cfg_path.string());
  }
  if (env) ctx.run.env = *env;
  if (setup) ctx.run.setup = parse_setup(*setup);
  ctx.run.env_config.validate();
  const int obs_dim = ctx.run.env == EnvKind::Obstacle ? kObstacleObservationDim : kBaseObservationDim;

  if (!src.checkpoint.empty()) {
    const auto header = agent::read_checkpoint_header(src.checkpoint);
    if (header.obs_dim != obs_dim)
      throw std::invalid_argument("checkpoint expects " + std::to_string(header.obs_dim) + "-dim observations but env '" +
                                  std::string(to_string(ctx.run.env)) + "' emits " + std::to_string(obs_dim));
    ctx.agent = std::make_unique<Agent>(agent::load_checkpoint<TrainScalar>(src.checkpoint));
    ctx.policy = greedy_policy(*ctx.agent);
  } else if (src.builtin == "target") {
    ctx.policy = eval::target_policy;
  } else if (src.builtin == "random") {
    ctx.rng = std::make_unique<Rng>(seed ^ 0xA5A5A5A5A5A5A5A5ULL);
    Rng* rng = ctx.rng.get();
    ctx.policy = [rng](const Observation&) {
      ActionVector a;
      for (int i = 0; i < kActionDim; ++i) a[i] = rng->uniform(-1.0, 1.0);
      return SubGoalAction(a);
    };
  } else {
    throw std::invalid_argument("unknown built-in policy '" + src.builtin + "' (expected target|random)");
  }
  return ctx;
}

}  // namespace

nlohmann::json run_eval(const EvalOptions& opts) {
  if (opts.n < 1) throw std::invalid_argument("evaluation needs n >= 1 episodes");
  PolicyContext ctx = make_context(opts.policy, opts.env, opts.setup, opts.seed);
  PathPlanningEnv env(ctx.run.env, ctx.run.env_config);
  const auto records = eval::run_episodes(env, ctx.policy, opts.n, opts.seed, ctx.run.skip());
  const nlohmann::json report =
      eval::report_json(std::string(to_string(ctx.run.env)), std::string(to_string(ctx.run.setup)),
                        eval::evaluate(records, ctx.run.env_config));

  if (!opts.csv_dir.empty()) {
    fs::create_directories(opts.csv_dir);
    for (std::size_t i = 0; i < records.size(); ++i)
      eval::write_episode_csv(records[i], (fs::path(opts.csv_dir) / ("episode_" + std::to_string(i) + ".csv")).string());
  }
  if (!opts.report_path.empty()) {
    const fs::path parent = fs::path(opts.report_path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    std::ofstream out(opts.report_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + opts.report_path);
    out << report.dump(2) << '\n';
  }
  return report;
}

eval::EpisodeRecord run_rollout(const RolloutOptions& opts) {
  if (opts.out_base.empty()) throw std::invalid_argument("rollout needs an output path");
  PolicyContext ctx = make_context(opts.policy, opts.env, opts.setup, opts.seed);
  PathPlanningEnv env(ctx.run.env, ctx.run.env_config);
  eval::EpisodeRecord rec = eval::run_episode(env, ctx.policy, opts.seed, ctx.run.skip());
  const fs::path parent = fs::path(opts.out_base).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  eval::export_trajectory(rec, ctx.run.env_config, opts.out_base);
  return rec;
}

void plot_csv(const std::string& csv_path, const std::string& svg_path, const EnvConfig& cfg,
              std::optional<Pose2D> target) {
  const auto rows = eval::read_episode_csv(csv_path);
  if (rows.empty()) throw std::invalid_argument("no decisions in " + csv_path);
  eval::SvgScene scene;
  scene.target = target;
  for (const auto& r : rows) {
    scene.actions.push_back(r.action);
    scene.robot_path.push_back(r.robot);
  }
  std::ofstream out(svg_path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + svg_path);
  out << eval::render_svg(scene, cfg);
}

}  // namespace pathlab::cli
