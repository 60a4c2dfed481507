#include "c0forge/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "c0forge/error.hpp"

namespace c0forge {

namespace {

// Portable uniform draw in [0, 1); std::uniform_real_distribution is
// implementation-defined.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t below(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % bound);
}

void require_points(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "generator needs n >= 1");
}

// Labelled point on one axis of l_1, optionally shifted by the base vector.
struct AxisPoint {
  bool shifted = false;
  int axis = -1;  // -1: no axis component
  double coeff = 0.0;
  std::string label;
};

double axis_distance(const AxisPoint& a, const AxisPoint& b) {
  double d = a.shifted != b.shifted ? 1.0 : 0.0;
  if (a.axis == b.axis)
    d += std::abs(a.coeff - b.coeff);
  else
    d += a.coeff + b.coeff;
  return d;
}

FiniteMetricSpace axis_space(const std::vector<AxisPoint>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::vector<double>> raw(n, std::vector<double>(n, 0.0));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(pts[i].label);
    for (std::size_t j = 0; j < n; ++j) raw[i][j] = i == j ? 0.0 : axis_distance(pts[i], pts[j]);
  }
  return validate_metric(raw, std::move(labels));
}

}  // namespace

LpPointCloud gen_lp_cloud(double p, std::size_t dim, std::size_t n, std::uint64_t seed,
                          bool positive) {
  require_points(n);
  if (!(p >= 1.0)) throw Error(ErrorCode::BadParams, "l_p exponent must satisfy p >= 1");
  if (dim < 1) throw Error(ErrorCode::BadParams, "dimension must be >= 1");
  std::mt19937_64 rng(seed);
  LpPointCloud cloud;
  cloud.p = p;
  cloud.dim = dim;
  cloud.positive = positive;
  cloud.points.assign(n, std::vector<double>(dim));
  for (auto& pt : cloud.points)
    for (auto& c : pt) c = positive ? 10.0 * unit(rng) : 10.0 * unit(rng) - 5.0;
  return cloud;
}

FiniteMetricSpace gen_random_metric(std::size_t n, std::uint64_t seed) {
  require_points(n);
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = 1.0 + 9.0 * unit(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  // Floating sums are not associative; force exact symmetry.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[j][i] = d[i][j] = std::min(d[i][j], d[j][i]);
  return validate_metric(d);
}

FiniteMetricSpace gen_random_ultrametric(std::size_t n, std::uint64_t seed) {
  require_points(n);
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> clusters(n);
  for (std::size_t i = 0; i < n; ++i) clusters[i] = {i};
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  double height = 0.0;
  while (clusters.size() > 1) {
    height += 0.5 + unit(rng);
    std::size_t a = below(rng, clusters.size());
    std::size_t b = below(rng, clusters.size() - 1);
    if (b >= a) ++b;
    if (a > b) std::swap(a, b);
    for (std::size_t x : clusters[a])
      for (std::size_t y : clusters[b]) d[x][y] = d[y][x] = height;
    clusters[a].insert(clusters[a].end(), clusters[b].begin(), clusters[b].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(b));
  }
  return validate_metric(d);
}

TreeNodeSet gen_random_tree(std::size_t nodes, std::uint64_t seed) {
  require_points(nodes);
  std::mt19937_64 rng(seed);
  TreeNodeSet tree;
  tree.nodes.push_back({});
  std::set<TreeNode> seen{TreeNode{}};
  while (tree.nodes.size() < nodes) {
    TreeNode child = tree.nodes[below(rng, tree.nodes.size())];
    const std::int64_t last = child.empty() ? 0 : child.back();
    child.push_back(last + 1 + static_cast<std::int64_t>(below(rng, 3)));
    if (seen.insert(child).second) tree.nodes.push_back(std::move(child));
  }
  return tree;
}

TreeNodeSet gen_full_tree(std::size_t depth, std::size_t branch) {
  if (branch < 1) throw Error(ErrorCode::BadParams, "branch must be >= 1");
  TreeNodeSet tree;
  tree.nodes.push_back({});
  std::size_t level_begin = 0;
  for (std::size_t level = 0; level < depth; ++level) {
    const std::size_t level_end = tree.nodes.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::size_t c = 1; c <= branch; ++c) {
        TreeNode child = tree.nodes[i];
        const std::int64_t last = child.empty() ? 0 : child.back();
        child.push_back(last + static_cast<std::int64_t>(c));
        tree.nodes.push_back(std::move(child));
      }
    }
    level_begin = level_end;
  }
  return tree;
}

FiniteMetricSpace gen_shifted_axes(std::size_t n_max) {
  if (n_max < 1) throw Error(ErrorCode::BadParams, "shifted axes need N >= 1");
  std::vector<AxisPoint> pts;
  pts.push_back({false, -1, 0.0, "0"});
  pts.push_back({true, -1, 0.0, "e0"});
  for (std::size_t k = 1; k <= n_max; ++k) {
    const auto c = static_cast<double>(k);
    const std::string tag = std::to_string(k) + "e" + std::to_string(k);
    pts.push_back({false, static_cast<int>(k), c, tag});
    pts.push_back({true, static_cast<int>(k), c, "e0+" + tag});
  }
  return axis_space(pts);
}

FiniteMetricSpace gen_dyadic_shifted(std::size_t depth) {
  if (depth < 1) throw Error(ErrorCode::BadParams, "dyadic family needs depth >= 1");
  if (depth > 16) throw Error(ErrorCode::BadParams, "dyadic depth capped at 16");
  std::vector<AxisPoint> pts;
  pts.push_back({false, -1, 0.0, "0"});
  pts.push_back({true, -1, 0.0, "e_"});
  int axis = 0;
  for (std::size_t len = 1; len <= depth; ++len) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits, ++axis) {
      std::string word;
      for (std::size_t i = 0; i < len; ++i) word += ((bits >> (len - 1 - i)) & 1U) ? '1' : '0';
      const auto c = static_cast<double>(len);
      const std::string tag = std::to_string(len) + "e_" + word;
      pts.push_back({false, axis, c, tag});
      pts.push_back({true, axis, c, "e_+" + tag});
    }
  }
  return axis_space(pts);
}

}  // namespace c0forge
