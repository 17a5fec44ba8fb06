#include "pathlab/eval/export.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pathlab::eval {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ExportError("cannot write " + path);
  out << text;
  if (!out) throw ExportError("failed writing " + path);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

void write_episode_csv(const EpisodeRecord& record, const std::string& path) {
  std::ostringstream os;
  os << kEpisodeCsvHeader << '\n';
  for (const auto& d : record.decisions) {
    os << d.step;
    for (int i = 0; i < kActionDim; ++i) os << ',' << fmt17(d.action.values[i]);
    os << ',' << fmt17(d.robot.x) << ',' << fmt17(d.robot.y) << ',' << fmt17(d.robot.theta) << ','
       << fmt17(d.reward) << ',' << fmt17(d.breakdown.r_d) << ',' << fmt17(d.breakdown.r_theta) << ','
       << fmt17(d.breakdown.r_t) << ',' << fmt17(d.breakdown.r_obst) << ',' << fmt17(d.breakdown.r_hit) << ','
       << (d.terminated ? 1 : 0) << ',' << (d.truncated ? 1 : 0) << '\n';
  }
  write_text(path, os.str());
}

std::vector<DecisionLog> read_episode_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ExportError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line != kEpisodeCsvHeader) throw ExportError("unexpected CSV header in " + path);
  std::vector<DecisionLog> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 18) throw ExportError("malformed CSV row in " + path);
    try {
      DecisionLog d;
      d.step = std::stoi(f[0]);
      for (int i = 0; i < kActionDim; ++i) d.action.values[i] = std::stod(f[1 + i]);
      d.robot = {std::stod(f[7]), std::stod(f[8]), std::stod(f[9])};
      d.reward = std::stod(f[10]);
      d.breakdown.r_d = std::stod(f[11]);
      d.breakdown.r_theta = std::stod(f[12]);
      d.breakdown.r_t = std::stod(f[13]);
      d.breakdown.r_obst = std::stod(f[14]);
      d.breakdown.r_hit = std::stod(f[15]);
      d.breakdown.recompute_total();
      d.terminated = f[16] == "1";
      d.truncated = f[17] == "1";
      rows.push_back(d);
    } catch (const std::logic_error&) {
      throw ExportError("malformed number in " + path);
    }
  }
  return rows;
}

std::string render_svg(const SvgScene& scene, const EnvConfig& cfg) {
  constexpr double kScale = 100.0;  // px per meter
  const double w = 2.0 * cfg.field_half_length * kScale;
  const double h = 2.0 * cfg.field_half_width * kScale;
  auto px = [&](double x) { return fmt17((x + cfg.field_half_length) * kScale); };
  auto py = [&](double y) { return fmt17((cfg.field_half_width - y) * kScale); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
     << w << ' ' << h << "\">\n";
  os << "  <rect class=\"field\" x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
     << "\" fill=\"#1b5e20\" stroke=\"white\" stroke-width=\"4\"/>\n";
  if (scene.target) {
    os << "  <circle class=\"target\" cx=\"" << px(scene.target->x) << "\" cy=\"" << py(scene.target->y)
       << "\" r=\"" << cfg.robot_radius * kScale << "\" fill=\"orange\"/>\n";
  }
  auto polyline = [&](const std::vector<Pose2D>& path, const char* cls, const char* color) {
    if (path.empty()) return;
    os << "  <polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < path.size(); ++i) os << (i ? " " : "") << px(path[i].x) << ',' << py(path[i].y);
    os << "\"/>\n";
  };
  polyline(scene.obstacle_path, "obstacle-path", "yellow");
  polyline(scene.robot_path, "robot-path", "red");
  for (const auto& a : scene.actions) {
    os << "  <circle class=\"action\" cx=\"" << px(a.x() * cfg.norm_max_pos) << "\" cy=\""
       << py(a.y() * cfg.norm_max_pos) << "\" r=\"4\" fill=\"red\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void export_trajectory(const EpisodeRecord& record, const EnvConfig& cfg, const std::string& base) {
  if (record.actions.empty() || record.robot_path.empty() || record.decisions.empty())
    throw ExportError("cannot export an empty episode");
  SvgScene scene{record.actions, record.robot_path, record.obstacle_path, record.target};
  const std::string svg = render_svg(scene, cfg);
  write_episode_csv(record, base + ".csv");
  write_text(base + ".svg", svg);
}

nlohmann::json summary_json(const StatsSummary& s) {
  return {{"median", s.median}, {"q1", s.q1}, {"q3", s.q3}, {"max", s.max}, {"min", s.min}};
}

nlohmann::json report_json(const std::string& env, const std::string& setup, const EvalSummary& summary) {
  return {{"env", env},
          {"setup", setup},
          {"n", summary.n},
          {"episode_length", summary_json(summary.episode_length)},
          {"cpad", summary_json(summary.cpad)},
          {"collision_rate", summary.collision_rate},
          {"success_rate", summary.success_rate}};
}

}  // namespace pathlab::eval
