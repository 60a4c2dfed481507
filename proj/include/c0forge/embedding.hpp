#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "c0forge/metric.hpp"

namespace c0forge {

enum class Target { c0, c0plus };

std::string_view to_string(Target target);

/// Columns [col_begin, col_end) were produced by block k for the scale
/// eps_k; their entries are bounded by lambda * eps_k on F_k.
struct BlockMeta {
  std::size_t k = 0;
  std::size_t col_begin = 0;
  std::size_t col_end = 0;
  PointSet F;
  double eps = 0.0;
};

/// n points mapped into m-dimensional max-norm space, stored column by
/// column.
struct Embedding {
  Target target = Target::c0;
  double lambda = 1.0;
  std::size_t points = 0;
  std::vector<std::vector<double>> columns;
  std::vector<BlockMeta> blocks;

  std::size_t dimension() const noexcept { return columns.size(); }
  double value(std::size_t point, std::size_t column) const { return columns[column][point]; }
  /// ||f(x) - f(y)||_inf over all columns.
  double distance(std::size_t x, std::size_t y) const;
  /// ||f(x)||_inf.
  double norm(std::size_t x) const;
};

}  // namespace c0forge
