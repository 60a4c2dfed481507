#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "c0forge/audit.hpp"
#include "c0forge/embedding.hpp"
#include "c0forge/metric.hpp"

namespace c0forge {

enum class SpaceKind { matrix, lp, tree };

/// A parsed space file. `cloud` is set for lp files, `tree` for tree files.
struct SpaceFile {
  SpaceKind kind = SpaceKind::matrix;
  FiniteMetricSpace space;
  std::shared_ptr<const LpPointCloud> cloud;
  std::optional<TreeNodeSet> tree;
};

SpaceFile matrix_file(FiniteMetricSpace space);
SpaceFile lp_file(LpPointCloud cloud);
SpaceFile tree_file(TreeNodeSet tree);

std::string space_to_json(const SpaceFile& file);
/// Throws ParseError on malformed JSON and the metric errors on bad data.
SpaceFile space_from_json(const std::string& text);

std::string embedding_to_json(const Embedding& emb);
/// Nonzero entries only; `keys` optionally names each column.
std::string embedding_to_sparse_json(const Embedding& emb,
                                     const std::vector<std::string>& keys = {});
/// Accepts both the dense and the sparse layout.
Embedding embedding_from_json(const std::string& text);

std::string report_to_json(const DistortionReport& rep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace c0forge
