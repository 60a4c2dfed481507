#pragma once

#include <cstddef>
#include <cstdint>

#include "c0forge/metric.hpp"

namespace c0forge {

/// Coordinates uniform in [-5, 5) (or [0, 10) for the positive cone).
LpPointCloud gen_lp_cloud(double p, std::size_t dim, std::size_t n, std::uint64_t seed,
                          bool positive = false);

/// Shortest-path completion of a random symmetric weight matrix with
/// weights in [1, 10).
FiniteMetricSpace gen_random_metric(std::size_t n, std::uint64_t seed);

/// Random binary merge tree with strictly increasing merge heights; the
/// distance between two points is the height at which they first merge.
FiniteMetricSpace gen_random_ultrametric(std::size_t n, std::uint64_t seed);

/// Random prefix-closed node set grown one child at a time.
TreeNodeSet gen_random_tree(std::size_t nodes, std::uint64_t seed);

/// Every node of depth <= `depth` whose child labels step by 1..branch.
TreeNodeSet gen_full_tree(std::size_t depth, std::size_t branch);

/// {0, e0} u {n e_n, e0 + n e_n : 1 <= n <= N} with the l_1 metric.
FiniteMetricSpace gen_shifted_axes(std::size_t n_max);

/// {0, e_root} u {|s| e_s, e_root + |s| e_s : s binary, 1 <= |s| <= depth}
/// with the l_1 metric.
FiniteMetricSpace gen_dyadic_shifted(std::size_t depth);

}  // namespace c0forge
