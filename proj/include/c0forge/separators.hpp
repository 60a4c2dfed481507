#pragma once

#include <vector>

#include "c0forge/metric.hpp"

namespace c0forge {

struct SeparatorSpec {
  PointSet A;
  PointSet B;
  PointSet C;
  double eps = 1.0;
};

/// One real coordinate function on the space.
struct SeparatorColumn {
  std::vector<double> values;
  double lip_bound = 1.0;
  /// Gap achieved between A and B.
  double gap = 0.0;
  /// Bound on |f| over C.
  double small_bound = 0.0;
  bool nonnegative = false;
  /// Set when delta(A,B) = 0: the column is valid but separates nothing.
  bool degenerate = false;

  /// Multiplies values and every recorded bound by `factor` > 0.
  SeparatorColumn scaled(double factor) const;
};

/// Signed 1-Lipschitz separator: |f| <= eps on C and f = t on A, f = s on B
/// with t - s = min(delta(A,B), delta(A,C) + delta(B,C) + 2 eps).
///
/// Built as the smallest 1-Lipschitz extension, for the augmented metric
/// of augmented_metric(), of the anchor values t on A, s on B and 0 on the
/// virtual point. A and B keep their anchor values verbatim.
SeparatorColumn build_separator(const FiniteMetricSpace& space, const SeparatorSpec& spec);

/// Nonnegative 1-Lipschitz separator f(x) = max(theta - d(x, A'), 0), where
/// A' is whichever of A, B is farther from C.
SeparatorColumn build_separator_plus(const FiniteMetricSpace& space, const SeparatorSpec& spec);

/// The (n+1)x(n+1) matrix of d*(x,y) = min(d(x,y), d(x,C) + d(y,C) + 2 eps)
/// with the virtual point at index n and d*(x,0) = d(x,C) + eps.
std::vector<std::vector<double>> augmented_metric(const FiniteMetricSpace& space,
                                                  const PointSet& C, double eps);

/// Exhaustive max |f(x) - f(y)| / d(x,y).
double lipschitz_constant(const FiniteMetricSpace& space, const std::vector<double>& values);

}  // namespace c0forge
