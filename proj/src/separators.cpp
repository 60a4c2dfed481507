#include "c0forge/separators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "c0forge/error.hpp"

namespace c0forge {

namespace {

void check_spec(const FiniteMetricSpace& space, const SeparatorSpec& spec) {
  if (spec.A.empty() || spec.B.empty() || spec.C.empty())
    throw Error(ErrorCode::EmptySet, "separator sets A, B, C must be nonempty");
  if (!(spec.eps > 0.0)) throw Error(ErrorCode::BadParams, "separator eps must be positive");
  for (const PointSet* set : {&spec.A, &spec.B, &spec.C})
    if (set->back() >= space.size())
      throw Error(ErrorCode::BadParams, "separator set references a missing point");
}

std::vector<double> distances_to(const FiniteMetricSpace& space, const PointSet& set) {
  std::vector<double> out(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) out[x] = dist_to_set(space, x, set);
  return out;
}

}  // namespace

SeparatorColumn SeparatorColumn::scaled(double factor) const {
  SeparatorColumn out = *this;
  for (double& v : out.values) v *= factor;
  out.lip_bound *= factor;
  out.gap *= factor;
  out.small_bound *= factor;
  return out;
}

std::vector<std::vector<double>> augmented_metric(const FiniteMetricSpace& space,
                                                  const PointSet& C, double eps) {
  const std::size_t n = space.size();
  const auto dc = distances_to(space, C);
  std::vector<std::vector<double>> out(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y)
      out[x][y] = x == y ? 0.0 : std::min(space(x, y), dc[x] + dc[y] + 2.0 * eps);
    out[x][n] = out[n][x] = dc[x] + eps;
  }
  return out;
}

SeparatorColumn build_separator(const FiniteMetricSpace& space, const SeparatorSpec& spec) {
  check_spec(space, spec);
  const std::size_t n = space.size();
  const double gap_ab = set_gap(space, spec.A, spec.B);
  const double gap_ac = set_gap(space, spec.A, spec.C);
  const double gap_bc = set_gap(space, spec.B, spec.C);
  const double theta = std::min(gap_ab, gap_ac + gap_bc + 2.0 * spec.eps);
  const double t = std::min(theta, gap_ac + spec.eps);
  const double s = t - theta;

  const auto dstar = augmented_metric(space, spec.C, spec.eps);
  SeparatorColumn col;
  col.values.assign(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    double best = dstar[x][n];  // anchor 0 has value 0
    for (std::size_t a : spec.A) best = std::min(best, t + dstar[x][a]);
    for (std::size_t b : spec.B) best = std::min(best, s + dstar[x][b]);
    col.values[x] = best;
  }
  for (std::size_t a : spec.A) col.values[a] = t;
  for (std::size_t b : spec.B) col.values[b] = s;

  col.lip_bound = 1.0;
  col.gap = theta;
  col.small_bound = spec.eps;
  col.nonnegative = false;
  col.degenerate = gap_ab == 0.0;
  return col;
}

SeparatorColumn build_separator_plus(const FiniteMetricSpace& space, const SeparatorSpec& spec) {
  check_spec(space, spec);
  const double gap_ab = set_gap(space, spec.A, spec.B);
  const double gap_ac = set_gap(space, spec.A, spec.C);
  const double gap_bc = set_gap(space, spec.B, spec.C);
  const PointSet& far = gap_ac >= gap_bc ? spec.A : spec.B;
  const double theta = std::min(gap_ab, std::max(gap_ac, gap_bc) + spec.eps);

  SeparatorColumn col;
  col.values.resize(space.size());
  for (std::size_t x = 0; x < space.size(); ++x)
    col.values[x] = std::max(theta - dist_to_set(space, x, far), 0.0);
  col.lip_bound = 1.0;
  col.gap = theta;
  col.small_bound = spec.eps;
  col.nonnegative = true;
  col.degenerate = gap_ab == 0.0;
  return col;
}

double lipschitz_constant(const FiniteMetricSpace& space, const std::vector<double>& values) {
  double best = 0.0;
  for (std::size_t x = 0; x < space.size(); ++x)
    for (std::size_t y = x + 1; y < space.size(); ++y)
      best = std::max(best, std::fabs(values[x] - values[y]) / space(x, y));
  return best;
}

}  // namespace c0forge
