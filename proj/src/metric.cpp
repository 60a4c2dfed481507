#include "c0forge/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "c0forge/error.hpp"

namespace c0forge {

PointSet make_point_set(std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return indices;
}

PointSet all_points(std::size_t n) {
  PointSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

bool contains(const PointSet& set, std::size_t x) {
  return std::binary_search(set.begin(), set.end(), x);
}

PointSet intersect(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::vector<double>> FiniteMetricSpace::matrix() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = dist_[i * n_ + j];
  return out;
}

namespace {

std::string pair_text(std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << "(" << i << "," << j << ")";
  return os.str();
}

}  // namespace

FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& raw,
                                  std::vector<std::string> labels) {
  const std::size_t n = raw.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i].size() != n)
      throw Error(ErrorCode::NotSquare, "row " + std::to_string(i) + " has " +
                                            std::to_string(raw[i].size()) + " entries, expected " +
                                            std::to_string(n));
  }
  if (!labels.empty() && labels.size() != n)
    throw Error(ErrorCode::ShapeMismatch, "label count does not match point count");

  double max_d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = raw[i][j];
      if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "entry " + pair_text(i, j));
      if (i == j) {
        if (v != 0.0) throw Error(ErrorCode::NonzeroDiagonal, "entry " + pair_text(i, i));
        continue;
      }
      if (v != raw[j][i]) throw Error(ErrorCode::Asymmetric, "entries " + pair_text(i, j));
      if (v < 0.0) throw Error(ErrorCode::NegativeDistance, "entry " + pair_text(i, j));
      if (v == 0.0) throw Error(ErrorCode::DuplicatePoints, "points " + pair_text(i, j));
      max_d = std::max(max_d, v);
    }
  }

  const double tol = 1e-12 * max_d;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (raw[i][k] > raw[i][j] + raw[j][k] + tol)
          throw Error(ErrorCode::TriangleViolation,
                      "d(" + std::to_string(i) + "," + std::to_string(k) + ") > d(" +
                          std::to_string(i) + "," + std::to_string(j) + ") + d(" +
                          std::to_string(j) + "," + std::to_string(k) + ")");

  FiniteMetricSpace space;
  space.n_ = n;
  space.dist_.resize(n * n);
  double min_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      space.dist_[i * n + j] = raw[i][j];
      if (i != j) min_d = std::min(min_d, raw[i][j]);
    }
  space.diameter_ = max_d;
  space.min_distance_ = n > 1 ? min_d : 0.0;
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  }
  space.labels_ = std::move(labels);
  return space;
}

bool is_ultrametric(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (space(x, y) > std::max(space(x, z), space(z, y))) return false;
  return true;
}

double dist_to_set(const FiniteMetricSpace& space, std::size_t x, const PointSet& set) {
  if (set.empty()) throw Error(ErrorCode::EmptySet, "distance to an empty set");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a : set) best = std::min(best, space(x, a));
  return best;
}

double set_gap(const FiniteMetricSpace& space, const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySet, "set_gap needs nonempty sets");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t x : a)
    for (std::size_t y : b) best = std::min(best, space(x, y));
  return best;
}

double set_span(const FiniteMetricSpace& space, const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySet, "set_span needs nonempty sets");
  double best = 0.0;
  for (std::size_t x : a)
    for (std::size_t y : b) best = std::max(best, space(x, y));
  return best;
}

double set_diameter(const FiniteMetricSpace& space, const PointSet& a) {
  return set_span(space, a, a);
}

Ball make_ball(const FiniteMetricSpace& space, std::size_t center, double radius) {
  if (center >= space.size())
    throw Error(ErrorCode::BadParams, "ball center " + std::to_string(center) + " out of range");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(ErrorCode::BadParams, "ball radius must be positive and finite");
  return Ball{center, radius};
}

PointSet ball_members(const FiniteMetricSpace& space, const Ball& ball) {
  PointSet out;
  for (std::size_t x = 0; x < space.size(); ++x)
    if (space(x, ball.center) <= ball.radius) out.push_back(x);
  return out;
}

double lp_norm(std::span<const double> v, double p) {
  double sum = 0.0;
  for (double c : v) sum += std::pow(std::fabs(c), p);
  return p == 1.0 ? sum : std::pow(sum, 1.0 / p);
}

double lp_distance(std::span<const double> a, std::span<const double> b, double p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::pow(std::fabs(a[i] - b[i]), p);
  return p == 1.0 ? sum : std::pow(sum, 1.0 / p);
}

FiniteMetricSpace lp_space(const LpPointCloud& cloud) {
  if (!(cloud.p >= 1.0) || !std::isfinite(cloud.p))
    throw Error(ErrorCode::BadParams, "l_p exponent must satisfy p >= 1");
  const std::size_t n = cloud.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cloud.points[i].size() != cloud.dim)
      throw Error(ErrorCode::ShapeMismatch, "point " + std::to_string(i) + " has wrong dimension");
    if (cloud.positive)
      for (double c : cloud.points[i])
        if (c < 0.0)
          throw Error(ErrorCode::NotPositiveCone,
                      "point " + std::to_string(i) + " has a negative coordinate");
  }
  std::vector<std::vector<double>> raw(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      raw[i][j] = raw[j][i] = lp_distance(cloud.points[i], cloud.points[j], cloud.p);
  return validate_metric(raw);
}

void validate_tree(const TreeNodeSet& tree) {
  std::set<TreeNode> seen;
  for (const auto& node : tree.nodes) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (node[i] < 1 || (i > 0 && node[i] <= node[i - 1]))
        throw Error(ErrorCode::NotIncreasing, "node " + tree_label(node));
    }
    if (!seen.insert(node).second)
      throw Error(ErrorCode::BadParams, "repeated node " + tree_label(node));
  }
  if (tree.nodes.empty()) throw Error(ErrorCode::NotPrefixClosed, "tree has no root");
  for (const auto& node : tree.nodes) {
    for (std::size_t len = 0; len < node.size(); ++len) {
      TreeNode prefix(node.begin(), node.begin() + static_cast<std::ptrdiff_t>(len));
      if (!seen.count(prefix))
        throw Error(ErrorCode::NotPrefixClosed,
                    "prefix " + tree_label(prefix) + " of " + tree_label(node) + " is missing");
    }
  }
}

std::size_t common_prefix_length(const TreeNode& a, const TreeNode& b) {
  std::size_t r = 0;
  while (r < a.size() && r < b.size() && a[r] == b[r]) ++r;
  return r;
}

std::int64_t tree_distance(const TreeNode& a, const TreeNode& b) {
  const auto meet = static_cast<std::int64_t>(common_prefix_length(a, b));
  return static_cast<std::int64_t>(a.size()) + static_cast<std::int64_t>(b.size()) - 2 * meet;
}

std::string tree_label(const TreeNode& node) {
  std::string out = "(";
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(node[i]);
  }
  return out + ")";
}

FiniteMetricSpace tree_space(const TreeNodeSet& tree) {
  validate_tree(tree);
  const std::size_t n = tree.nodes.size();
  std::vector<std::vector<double>> raw(n, std::vector<double>(n, 0.0));
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(tree_label(tree.nodes[i]));
    for (std::size_t j = 0; j < n; ++j)
      raw[i][j] = static_cast<double>(tree_distance(tree.nodes[i], tree.nodes[j]));
  }
  return validate_metric(raw, std::move(labels));
}

}  // namespace c0forge
