#include "pathlab/cli/run_config.hpp"

#include <fstream>
#include <stdexcept>

#include "pathlab/agent/config_json.hpp"

namespace pathlab::cli {

using nlohmann::json;

std::string_view to_string(Setup s) {
  switch (s) {
    case Setup::Vanilla:
      return "vanilla";
    case Setup::FrameSkip:
      return "frameskip";
    case Setup::Caps:
      return "caps";
    case Setup::FsCaps:
      return "fscaps";
  }
  return "unknown";
}

Setup parse_setup(std::string_view name) {
  if (name == "vanilla") return Setup::Vanilla;
  if (name == "frameskip") return Setup::FrameSkip;
  if (name == "caps") return Setup::Caps;
  if (name == "fscaps") return Setup::FsCaps;
  throw std::invalid_argument("unknown setup '" + std::string(name) + "' (expected vanilla|frameskip|caps|fscaps)");
}

bool uses_frame_skip(Setup s) { return s == Setup::FrameSkip || s == Setup::FsCaps; }
bool uses_caps(Setup s) { return s == Setup::Caps || s == Setup::FsCaps; }

void RunConfig::resolve() {
  sac.caps_enabled = uses_caps(setup);
  if (sac.caps_enabled) sac.alpha_trainable = false;
  sac.seed = seed;
  env_config.validate();
  sac.validate();
  if (total_env_steps < 1) throw std::invalid_argument("total_env_steps must be >= 1");
  if (eval_every < 0) throw std::invalid_argument("eval_every must be >= 0");
  if (eval_episodes < 1) throw std::invalid_argument("eval_episodes must be >= 1");
  if (frame_skip < 1) throw std::invalid_argument("frame_skip must be >= 1");
}

json env_config_to_json(const EnvConfig& c) {
  return {{"field_half_length", c.field_half_length},
          {"field_half_width", c.field_half_width},
          {"dt", c.dt},
          {"max_steps", c.max_steps},
          {"d_threshold", c.d_threshold},
          {"theta_threshold", c.theta_threshold},
          {"norm_max_pos", c.norm_max_pos},
          {"norm_max_vel", c.norm_max_vel},
          {"norm_max_omega", c.norm_max_omega},
          {"obstacle_speed_max", c.obstacle_speed_max},
          {"obstacle_radius", c.obstacle_radius},
          {"robot_radius", c.robot_radius},
          {"gaussian_sigma", c.gaussian_sigma},
          {"gaussian_weight", c.gaussian_weight},
          {"spawn_separation", c.spawn_separation},
          {"max_linear_speed", c.limits.max_linear_speed},
          {"max_angular_speed", c.limits.max_angular_speed},
          {"max_linear_accel", c.limits.max_linear_accel},
          {"max_angular_accel", c.limits.max_angular_accel},
          {"kp_pos", c.gains.kp_pos},
          {"kp_theta", c.gains.kp_theta}};
}

void update_env_config(EnvConfig& c, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("env config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "field_half_length") c.field_half_length = v.get<double>();
    else if (key == "field_half_width") c.field_half_width = v.get<double>();
    else if (key == "dt") c.dt = v.get<double>();
    else if (key == "max_steps") c.max_steps = v.get<int>();
    else if (key == "d_threshold") c.d_threshold = v.get<double>();
    else if (key == "theta_threshold") c.theta_threshold = v.get<double>();
    else if (key == "norm_max_pos") c.norm_max_pos = v.get<double>();
    else if (key == "norm_max_vel") c.norm_max_vel = v.get<double>();
    else if (key == "norm_max_omega") c.norm_max_omega = v.get<double>();
    else if (key == "obstacle_speed_max") c.obstacle_speed_max = v.get<double>();
    else if (key == "obstacle_radius") c.obstacle_radius = v.get<double>();
    else if (key == "robot_radius") c.robot_radius = v.get<double>();
    else if (key == "gaussian_sigma") c.gaussian_sigma = v.get<double>();
    else if (key == "gaussian_weight") c.gaussian_weight = v.get<double>();
    else if (key == "spawn_separation") c.spawn_separation = v.get<double>();
    else if (key == "max_linear_speed") c.limits.max_linear_speed = v.get<double>();
    else if (key == "max_angular_speed") c.limits.max_angular_speed = v.get<double>();
    else if (key == "max_linear_accel") c.limits.max_linear_accel = v.get<double>();
    else if (key == "max_angular_accel") c.limits.max_angular_accel = v.get<double>();
    else if (key == "kp_pos") c.gains.kp_pos = v.get<double>();
    else if (key == "kp_theta") c.gains.kp_theta = v.get<double>();
    else throw std::invalid_argument("unknown env config key '" + key + "'");
  }
}

json to_json(const RunConfig& c) {
  return {{"env", std::string(to_string(c.env))},
          {"setup", std::string(to_string(c.setup))},
          {"env_config", env_config_to_json(c.env_config)},
          {"sac", json(c.sac)},
          {"total_env_steps", c.total_env_steps},
          {"eval_every", c.eval_every},
          {"eval_episodes", c.eval_episodes},
          {"frame_skip", c.frame_skip},
          {"output_dir", c.output_dir},
          {"seed", c.seed}};
}

void update_from_json(RunConfig& c, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("run config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "env") c.env = parse_env_kind(v.get<std::string>());
      else if (key == "setup") c.setup = parse_setup(v.get<std::string>());
      else if (key == "env_config") update_env_config(c.env_config, v);
      else if (key == "sac") agent::update_from_json(c.sac, v);
      else if (key == "total_env_steps") c.total_env_steps = v.get<std::int64_t>();
      else if (key == "eval_every") c.eval_every = v.get<std::int64_t>();
      else if (key == "eval_episodes") c.eval_episodes = v.get<int>();
      else if (key == "frame_skip") c.frame_skip = v.get<int>();
      else if (key == "output_dir") c.output_dir = v.get<std::string>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else throw std::invalid_argument("unknown config key '" + key + "'");
    } catch (const json::exception& e) {
      throw std::invalid_argument("bad value for config key '" + key + "': " + e.what());
    }
  }
}

void apply_overrides(RunConfig& c, const std::vector<std::string>& assignments) {
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("override '" + a + "' is not key=value");
    const std::string key = a.substr(0, eq);
    const std::string text = a.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;

    // Build a nested object from the dotted key and overlay it.
    json patch = value;
    std::string rest = key;
    std::vector<std::string> parts;
    for (std::size_t pos; (pos = rest.find('.')) != std::string::npos; rest = rest.substr(pos + 1))
      parts.push_back(rest.substr(0, pos));
    parts.push_back(rest);
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) patch = json{{*it, patch}};
    update_from_json(c, patch);
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("config file " + path + " is not valid JSON");
  RunConfig c;
  update_from_json(c, j);
  return c;
}

}  // namespace pathlab::cli
