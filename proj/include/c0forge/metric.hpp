#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace c0forge {

/// Sorted, duplicate-free list of point indices.
using PointSet = std::vector<std::size_t>;

PointSet make_point_set(std::vector<std::size_t> indices);
PointSet all_points(std::size_t n);
bool contains(const PointSet& set, std::size_t x);
PointSet intersect(const PointSet& a, const PointSet& b);

/// A finite metric space held as a dense, validated distance matrix.
///
/// Instances only come out of validate_metric(), so every live value
/// satisfies the metric axioms (with the triangle inequality checked up to
/// 1e-12 * max distance) and has no duplicate points.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return dist_[i * n_ + j]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  /// Row-major n*n distances.
  std::span<const double> raw() const noexcept { return dist_; }
  std::vector<std::vector<double>> matrix() const;

  double diameter() const noexcept { return diameter_; }
  /// Smallest positive distance; 0 for a single point.
  double min_distance() const noexcept { return min_distance_; }

 private:
  friend FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>&,
                                           std::vector<std::string>);

  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<std::string> labels_;
  double diameter_ = 0.0;
  double min_distance_ = 0.0;
};

/// Throws Error naming the first violated axiom and the offending indices.
/// Empty labels are replaced by "p0", "p1", ...
FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& raw,
                                  std::vector<std::string> labels = {});

/// Strong triangle inequality over all triples, compared exactly.
bool is_ultrametric(const FiniteMetricSpace& space);

double dist_to_set(const FiniteMetricSpace& space, std::size_t x, const PointSet& set);
/// delta(A,B): min distance across the two sets.
double set_gap(const FiniteMetricSpace& space, const PointSet& a, const PointSet& b);
/// D(A,B): max distance across the two sets.
double set_span(const FiniteMetricSpace& space, const PointSet& a, const PointSet& b);
double set_diameter(const FiniteMetricSpace& space, const PointSet& a);

/// Closed ball; the radius must be strictly positive.
struct Ball {
  std::size_t center = 0;
  double radius = 1.0;
};

Ball make_ball(const FiniteMetricSpace& space, std::size_t center, double radius);
PointSet ball_members(const FiniteMetricSpace& space, const Ball& ball);

/// Points of l_p (p >= 1) in `dim` coordinates, optionally restricted to the
/// nonnegative cone.
struct LpPointCloud {
  double p = 2.0;
  std::size_t dim = 0;
  std::vector<std::vector<double>> points;
  bool positive = false;

  std::size_t size() const noexcept { return points.size(); }
};

double lp_norm(std::span<const double> v, double p);
double lp_distance(std::span<const double> a, std::span<const double> b, double p);

/// Checks the cloud invariants and returns the induced metric space.
FiniteMetricSpace lp_space(const LpPointCloud& cloud);

/// Node of the infinite branching tree: a strictly increasing sequence of
/// positive integers. The empty sequence is the root.
using TreeNode = std::vector<std::int64_t>;

struct TreeNodeSet {
  std::vector<TreeNode> nodes;
};

/// Throws NotIncreasing or NotPrefixClosed; also rejects repeated nodes.
void validate_tree(const TreeNodeSet& tree);
std::size_t common_prefix_length(const TreeNode& a, const TreeNode& b);
/// |a| + |b| - 2|a ^ b|.
std::int64_t tree_distance(const TreeNode& a, const TreeNode& b);
std::string tree_label(const TreeNode& node);
FiniteMetricSpace tree_space(const TreeNodeSet& tree);

}  // namespace c0forge
