#include "c0forge/audit.hpp"

#include <cmath>
#include <limits>

#include "c0forge/error.hpp"
#include "c0forge/separators.hpp"

namespace c0forge {

namespace {

constexpr double kRoundingUnits = 16.0 * std::numeric_limits<double>::epsilon();

void check_shape(const FiniteMetricSpace& space, const Embedding& emb) {
  if (emb.points != space.size())
    throw Error(ErrorCode::ShapeMismatch, "embedding has " + std::to_string(emb.points) +
                                              " points, space has " +
                                              std::to_string(space.size()));
  for (const auto& col : emb.columns)
    if (col.size() != space.size())
      throw Error(ErrorCode::ShapeMismatch, "column length differs from point count");
}

std::vector<BlockCheck> block_checks(const FiniteMetricSpace& space, const Embedding& emb,
                                     std::size_t* bad_point, std::size_t* bad_column) {
  std::vector<BlockCheck> out;
  bool first = true;
  for (const auto& meta : emb.blocks) {
    BlockCheck check{meta.k, true, 0.0};
    const double bound = emb.lambda * meta.eps;
    // Entries are sums of distances, so rounding scales with the diameter.
    const double limit = bound * (1.0 + 1e-12) + kRoundingUnits * emb.lambda * space.diameter();
    for (std::size_t j = meta.col_begin; j < meta.col_end && j < emb.dimension(); ++j)
      for (std::size_t x : meta.F) {
        if (x >= space.size()) continue;
        const double v = std::fabs(emb.columns[j][x]);
        check.worst = std::max(check.worst, bound > 0.0 ? v / bound : v);
        if (v > limit) {
          if (check.pass && first && bad_point) {
            *bad_point = x;
            *bad_column = j;
            first = false;
          }
          check.pass = false;
        }
      }
    out.push_back(check);
  }
  return out;
}

}  // namespace

DistortionReport distortion_report(const FiniteMetricSpace& space, const Embedding& emb,
                                   double tol) {
  check_shape(space, emb);
  DistortionReport rep;
  rep.lambda = emb.lambda;
  rep.tol = tol;
  rep.isometry = emb.lambda == 1.0;
  const std::size_t n = space.size();

  bool any = false;
  bool exact = true;
  rep.worst_lower_margin = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const double d = space(x, y);
      const double img = emb.distance(x, y);
      const double ratio = img / d;
      ++rep.pairs;
      if (img != d) exact = false;
      if (!any || ratio < rep.min_ratio) {
        rep.min_ratio = ratio;
        rep.argmin = {x, y};
      }
      if (!any || ratio > rep.max_ratio) {
        rep.max_ratio = ratio;
        rep.argmax = {x, y};
      }
      any = true;
      const double margin = (img - d) / d;
      rep.worst_lower_margin = std::min(rep.worst_lower_margin, margin);
      if (margin < kMarginWarning) ++rep.margin_warnings;
    }
  if (!any) rep.worst_lower_margin = 0.0;

  for (const auto& col : emb.columns) {
    for (double v : col)
      if (v < 0.0) rep.nonneg = false;
    rep.column_lipschitz = std::max(rep.column_lipschitz, lipschitz_constant(space, col));
  }
  rep.blocks = block_checks(space, emb, nullptr, nullptr);

  if (rep.isometry)
    rep.pass = exact;
  else
    rep.pass = !any || (rep.min_ratio > 1.0 - tol && rep.max_ratio <= emb.lambda * (1.0 + tol));
  return rep;
}

BlockBoundReport check_block_bounds(const FiniteMetricSpace& space, const Embedding& emb) {
  check_shape(space, emb);
  if (emb.blocks.empty() && emb.dimension() > 0)
    throw Error(ErrorCode::MissingBlockMeta, "embedding carries no block metadata");
  BlockBoundReport rep;
  rep.blocks = block_checks(space, emb, &rep.point, &rep.column);
  for (const auto& b : rep.blocks)
    if (!b.pass) rep.pass = false;
  if (!rep.pass)
    rep.detail = "point " + std::to_string(rep.point) + " column " + std::to_string(rep.column) +
                 " exceeds lambda * eps_k";
  return rep;
}

std::vector<Witness> lower_bound_witnesses() {
  std::vector<Witness> out;
  for (double p : {1.0, 2.0, 3.0}) {
    const std::vector<double> two{1.0, 1.0};
    const std::vector<double> three{1.0, 1.0, -1.0};
    Witness a{"|e1+e2|_p", p, lp_norm(two, p), std::pow(2.0, 1.0 / p), "lp into c0: 2^{1/p}",
              false};
    a.exact = a.value == a.expected;
    Witness b{"|e1+e2-e3|_p", p, lp_norm(three, p), std::pow(3.0, 1.0 / p),
              "positive lp into c0plus: 3^{1/p}", false};
    b.exact = b.value == b.expected;
    out.push_back(a);
    out.push_back(b);
  }
  return out;
}

}  // namespace c0forge
