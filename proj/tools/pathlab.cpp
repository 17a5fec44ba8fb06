// Command-line entry point: train, eval, rollout, plot, serve.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pathlab/cli/commands.hpp"
#include "pathlab/cli/protocol.hpp"
#include "pathlab/cli/run_config.hpp"
#include "pathlab/cli/training.hpp"

namespace {

using namespace pathlab;

std::optional<EnvKind> optional_env(const std::string& name) {
  if (name.empty()) return std::nullopt;
  return parse_env_kind(name);
}

std::optional<std::string> optional_string(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

Pose2D parse_pose(const std::string& text) {
  Pose2D p;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> p.x >> c1 >> p.y >> c2 >> p.theta) || c1 != ',' || c2 != ',')
    throw std::invalid_argument("expected x,y,theta but got '" + text + "'");
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path-planning laboratory for omnidirectional SSL robots"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "Train a SAC agent on one experiment arm");
  std::string train_config, train_env, train_setup, train_out;
  std::vector<std::string> train_sets;
  std::int64_t train_steps = -1;
  std::uint64_t train_seed = 0;
  bool train_quiet = false;
  train->add_option("--config", train_config, "JSON run config (e.g. a previous run's config.json)");
  train->add_option("--env", train_env, "baseline|proposed|obstacle");
  train->add_option("--setup", train_setup, "vanilla|frameskip|caps|fscaps");
  train->add_option("--steps", train_steps, "Total simulator steps");
  auto* train_seed_opt = train->add_option("--seed", train_seed, "Run seed (falls back to SSL_PATHLAB_SEED)");
  train->add_option("--out", train_out, "Output directory");
  train->add_option("--set", train_sets, "Override key=value (dotted keys, e.g. sac.batch_size=64)");
  train->add_flag("--quiet", train_quiet, "No progress output");

  // eval
  auto* ev = app.add_subcommand("eval", "Evaluate a checkpoint or a built-in policy");
  cli::EvalOptions eval_opts;
  std::string eval_env, eval_setup;
  ev->add_option("--checkpoint", eval_opts.policy.checkpoint, "Checkpoint file");
  ev->add_option("--policy", eval_opts.policy.builtin, "Built-in policy: target|random");
  ev->add_option("--env", eval_env, "baseline|proposed|obstacle");
  ev->add_option("--setup", eval_setup, "vanilla|frameskip|caps|fscaps (decides frame skip)");
  ev->add_option("--n", eval_opts.n, "Episodes")->capture_default_str();
  auto* eval_seed_opt = ev->add_option("--seed", eval_opts.seed, "First episode seed");
  ev->add_option("--out", eval_opts.report_path, "Report JSON path");
  ev->add_option("--csv-dir", eval_opts.csv_dir, "Directory for per-episode CSVs");

  // rollout
  auto* ro = app.add_subcommand("rollout", "Play one episode and export CSV + SVG");
  cli::RolloutOptions ro_opts;
  std::string ro_env, ro_setup;
  ro->add_option("--checkpoint", ro_opts.policy.checkpoint, "Checkpoint file");
  ro->add_option("--policy", ro_opts.policy.builtin, "Built-in policy: target|random");
  ro->add_option("--env", ro_env, "baseline|proposed|obstacle");
  ro->add_option("--setup", ro_setup, "vanilla|frameskip|caps|fscaps");
  auto* ro_seed_opt = ro->add_option("--seed", ro_opts.seed, "Episode seed");
  ro->add_option("--out", ro_opts.out_base, "Output path without extension")->required();

  // plot
  auto* plot = app.add_subcommand("plot", "Render an episode CSV as SVG");
  std::string plot_csv, plot_svg, plot_target;
  plot->add_option("--csv", plot_csv, "Episode CSV")->required();
  plot->add_option("--out", plot_svg, "SVG output")->required();
  plot->add_option("--target", plot_target, "Target pose x,y,theta");

  // serve
  auto* serve = app.add_subcommand("serve", "Serve the line-delimited JSON environment protocol");
  std::string serve_env;
  int serve_port = 0;
  int serve_skip = 1;
  bool serve_once = false;
  serve->add_option("--env", serve_env, "Pre-make this env (clients may still send make)");
  serve->add_option("--frame-skip", serve_skip, "Frame skip for the pre-made env")->capture_default_str();
  serve->add_option("--port", serve_port, "TCP port on 127.0.0.1 (default: standard streams)");
  serve->add_flag("--once", serve_once, "Exit after the first TCP connection");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) {
      cli::RunConfig cfg;
      if (!train_config.empty()) cfg = cli::load_run_config(train_config);
      if (!train_env.empty()) cfg.env = parse_env_kind(train_env);
      if (!train_setup.empty()) cfg.setup = cli::parse_setup(train_setup);
      if (train_steps >= 0) cfg.total_env_steps = train_steps;
      cfg.seed = train_seed_opt->count() ? train_seed : cli::seed_from_env(cfg.seed);
      if (!train_out.empty()) cfg.output_dir = train_out;
      cli::apply_overrides(cfg, train_sets);
      const auto s = cli::train(cfg, train_quiet ? nullptr : &std::cerr);
      std::cout << "trained " << s.sim_steps << " sim steps, " << s.decisions << " decisions, " << s.episodes
                << " episodes, " << s.updates << " updates\ncheckpoint: " << s.checkpoint_path
                << "\nmetrics: " << s.metrics_path << "\n";
    } else if (*ev) {
      eval_opts.env = optional_env(eval_env);
      eval_opts.setup = optional_string(eval_setup);
      if (!eval_seed_opt->count()) eval_opts.seed = cli::seed_from_env(0);
      std::cout << cli::run_eval(eval_opts).dump(2) << "\n";
    } else if (*ro) {
      ro_opts.env = optional_env(ro_env);
      ro_opts.setup = optional_string(ro_setup);
      if (!ro_seed_opt->count()) ro_opts.seed = cli::seed_from_env(0);
      const auto rec = cli::run_rollout(ro_opts);
      std::cout << "episode: " << rec.length_steps << " steps, " << rec.actions.size() << " decisions, "
                << (rec.succeeded ? "success" : rec.collided ? "collision" : "timeout") << "\n";
    } else if (*plot) {
      std::optional<Pose2D> target;
      if (!plot_target.empty()) target = parse_pose(plot_target);
      cli::plot_csv(plot_csv, plot_svg, EnvConfig{}, target);
    } else if (*serve) {
      auto make_session = [&] {
        return serve_env.empty() ? cli::ProtocolSession()
                                 : cli::ProtocolSession(parse_env_kind(serve_env), EnvConfig{}, serve_skip);
      };
      if (serve_port > 0) {
        cli::serve_tcp(serve_port, serve_once, make_session, &std::cerr);
      } else {
        cli::ProtocolSession session = make_session();
        cli::serve_stream(session, std::cin, std::cout);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
