#include "pathlab/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathlab::eval {

double cpad(std::span<const Eigen::Vector2d> positions) {
  double total = 0.0;
  for (std::size_t i = 1; i < positions.size(); ++i) total += (positions[i] - positions[i - 1]).norm();
  return total;
}

double cpad(std::span<const SubGoalAction> actions, const EnvConfig& cfg) {
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(actions.size());
  for (const auto& a : actions) pts.emplace_back(a.x() * cfg.norm_max_pos, a.y() * cfg.norm_max_pos);
  return cpad(pts);
}

namespace {

double sorted_quantile(const std::vector<double>& sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sequence");
  std::sort(values.begin(), values.end());
  return sorted_quantile(values, p);
}

StatsSummary summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty input");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  return {sorted_quantile(v, 0.5), sorted_quantile(v, 0.25), sorted_quantile(v, 0.75), v.back(), v.front()};
}

}  // namespace pathlab::eval
