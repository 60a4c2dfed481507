#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "c0forge/embedding.hpp"
#include "c0forge/metric.hpp"

namespace c0forge {

struct PointPair {
  std::size_t x = 0;
  std::size_t y = 0;
};

struct BlockCheck {
  std::size_t k = 0;
  bool pass = true;
  /// max |f_j(x)| / (lambda eps_k) over the block; 0 for empty blocks.
  double worst = 0.0;
};

/// Lower margins (||Df|| - d) / d below this are counted as warnings.
inline constexpr double kMarginWarning = 1e-6;

struct DistortionReport {
  bool pass = true;
  /// lambda == 1: ratios must equal 1 exactly.
  bool isometry = false;
  double lambda = 1.0;
  double tol = 1e-9;
  std::size_t pairs = 0;
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  PointPair argmin;
  PointPair argmax;
  double worst_lower_margin = 0.0;
  std::size_t margin_warnings = 0;
  std::vector<BlockCheck> blocks;
  bool nonneg = true;
  double column_lipschitz = 0.0;
};

/// Ratios ||f(x) - f(y)|| / d(x,y) over all pairs. Ties in the arg pairs go
/// to the lexicographically smallest pair.
DistortionReport distortion_report(const FiniteMetricSpace& space, const Embedding& emb,
                                   double tol = 1e-9);

struct BlockBoundReport {
  bool pass = true;
  std::vector<BlockCheck> blocks;
  /// First violation, when pass is false.
  std::size_t point = 0;
  std::size_t column = 0;
  std::string detail;
};

/// |f_j(x)| <= lambda eps_k for x in F_k and j in block k, up to a relative
/// 1e-12 plus an absolute 16 ulp(1) * lambda * diam rounding allowance.
/// Throws MissingBlockMeta when columns exist without block metadata.
BlockBoundReport check_block_bounds(const FiniteMetricSpace& space, const Embedding& emb);

struct Witness {
  std::string name;
  double p = 1.0;
  double value = 0.0;
  double expected = 0.0;
  /// The constant this norm shows cannot be lowered.
  std::string certifies;
  bool exact = false;
};

/// ||e1 + e2||_p = 2^{1/p} and ||e1 + e2 - e3||_p = 3^{1/p} for p = 1, 2, 3.
std::vector<Witness> lower_bound_witnesses();

}  // namespace c0forge
