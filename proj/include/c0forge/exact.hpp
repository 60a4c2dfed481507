#pragma once

#include <cstdint>
#include <vector>

#include "c0forge/embedding.hpp"
#include "c0forge/metric.hpp"

namespace c0forge {

/// Coordinate of the ultrametric embedding: a prefix (r_1..r_k) of a
/// point's distance profile to the enumeration a_1..a_n.
struct ProfileIndex {
  std::vector<double> prefix;
};

struct UltrametricEmbedding {
  Embedding embedding;
  std::vector<ProfileIndex> index;  // one per column
};

/// Isometric embedding into c0plus, enumerating points in input order.
/// Only prefixes with min > 0 are materialized; values are min(prefix).
UltrametricEmbedding embed_ultrametric(const FiniteMetricSpace& space);

/// Coordinate (a, n) of the tree embedding.
struct TreeCoordIndex {
  TreeNode node;
  std::int64_t n = 1;
};

struct TreeEmbedding {
  FiniteMetricSpace space;
  Embedding embedding;
  std::vector<TreeCoordIndex> index;
};

/// Isometric embedding of a prefix-closed node set with the graph metric
/// into c0; points keep the order of tree.nodes.
TreeEmbedding embed_tree(const TreeNodeSet& tree);

}  // namespace c0forge
