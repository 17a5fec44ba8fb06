#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathlab/eval/episodes.hpp"

namespace pathlab::eval {

class ExportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kEpisodeCsvHeader =
    "step,ax,ay,avx,avy,asin,acos,rx,ry,rtheta,reward,r_d,r_theta,r_t,r_obst,r_hit,terminated,truncated";

/// One row per agent decision; floats are written with 17 significant digits.
void write_episode_csv(const EpisodeRecord& record, const std::string& path);

/// Parses a file written by write_episode_csv.
std::vector<DecisionLog> read_episode_csv(const std::string& path);

struct SvgScene {
  std::vector<SubGoalAction> actions;
  std::vector<Pose2D> robot_path;
  std::vector<Pose2D> obstacle_path;
  std::optional<Pose2D> target;
};

/// Field rectangle, target circle, one marker per action, robot polyline.
std::string render_svg(const SvgScene& scene, const EnvConfig& cfg);

/// Writes `<base>.csv` and `<base>.svg`. Throws ExportError for an empty
/// record (nothing written) or an unwritable path.
void export_trajectory(const EpisodeRecord& record, const EnvConfig& cfg, const std::string& base);

nlohmann::json summary_json(const StatsSummary& s);

/// {env, setup, n, episode_length:{...}, cpad:{...}, collision_rate, success_rate}
nlohmann::json report_json(const std::string& env, const std::string& setup, const EvalSummary& summary);

}  // namespace pathlab::eval
