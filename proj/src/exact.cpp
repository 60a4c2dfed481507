#include "c0forge/exact.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "c0forge/error.hpp"

namespace c0forge {

UltrametricEmbedding embed_ultrametric(const FiniteMetricSpace& space) {
  if (!is_ultrametric(space))
    throw Error(ErrorCode::NotUltrametric, "input violates the strong triangle inequality");
  const std::size_t n = space.size();
  UltrametricEmbedding out;
  out.embedding.target = Target::c0plus;
  out.embedding.lambda = 1.0;
  out.embedding.points = n;

  for (std::size_t len = 1; len <= n; ++len) {
    // Points sharing a prefix form one column; first occurrence fixes order.
    std::map<std::vector<double>, std::size_t> column_of;
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<double> prefix(len);
      for (std::size_t j = 0; j < len; ++j) prefix[j] = space(x, j);
      const double low = *std::min_element(prefix.begin(), prefix.end());
      if (low == 0.0) continue;
      auto [it, fresh] = column_of.emplace(prefix, out.embedding.columns.size());
      if (fresh) {
        out.embedding.columns.emplace_back(n, 0.0);
        out.index.push_back({prefix});
      }
      out.embedding.columns[it->second][x] = low;
    }
  }
  return out;
}

TreeEmbedding embed_tree(const TreeNodeSet& tree) {
  TreeEmbedding out{tree_space(tree), {}, {}};
  const std::size_t n = tree.nodes.size();
  out.embedding.target = Target::c0;
  out.embedding.lambda = 1.0;
  out.embedding.points = n;

  std::map<TreeNode, std::int64_t> max_child;
  for (const auto& node : tree.nodes) {
    if (node.empty()) continue;
    TreeNode parent(node.begin(), node.end() - 1);
    auto& m = max_child[parent];
    m = std::max(m, node.back());
  }

  for (const auto& a : tree.nodes) {
    auto it = max_child.find(a);
    if (it == max_child.end()) continue;
    for (std::int64_t label = 1; label <= it->second; ++label) {
      std::vector<double> col(n, 0.0);
      const auto depth = static_cast<std::int64_t>(a.size());
      for (std::size_t i = 0; i < n; ++i) {
        const TreeNode& b = tree.nodes[i];
        if (b.size() <= a.size() || !std::equal(a.begin(), a.end(), b.begin())) continue;
        const std::int64_t next = b[a.size()];
        const auto length = static_cast<std::int64_t>(b.size());
        if (next == label)
          col[i] = static_cast<double>(length - depth);
        else if (next > label)
          col[i] = static_cast<double>(depth - length);
      }
      out.embedding.columns.push_back(std::move(col));
      out.index.push_back({a, label});
    }
  }
  return out;
}

}  // namespace c0forge
