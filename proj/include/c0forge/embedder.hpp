#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "c0forge/covers.hpp"
#include "c0forge/embedding.hpp"
#include "c0forge/metric.hpp"
#include "c0forge/separators.hpp"

namespace c0forge {

/// Inputs of one block: F within G, and the scale window alpha < beta.
struct BlockSpec {
  PointSet F;
  PointSet G;
  double alpha = 0.0;
  double beta = 0.0;
};

/// Whether (x,y) lies in the set a block has to separate:
///   Pi:  lambda (d(x,G) + d(y,G)) + alpha <= d(x,y) < lambda (d(x,F) + d(y,F)) + beta
///   Pi+: the same with max in place of the sums.
bool in_block_window(const FiniteMetricSpace& space, double lambda, CoverMode mode,
                     const BlockSpec& block, std::size_t x, std::size_t y);

/// Columns with Lip <= lambda and |f| <= lambda*beta on F such that every
/// pair in the Pi window gets a column gap strictly above d(x,y).
std::vector<SeparatorColumn> block_functions(const FiniteMetricSpace& space, double lambda,
                                             const BlockSpec& block, const ProviderSpec& provider);

/// Nonnegative analogue for the Pi+ window. `phi` is mandatory when
/// lambda <= 2.
std::vector<SeparatorColumn> block_functions_plus(const FiniteMetricSpace& space, double lambda,
                                                  const BlockSpec& block,
                                                  const ProviderSpec& provider,
                                                  const PhiFunction* phi = nullptr);

enum class PointOrder { input, farthest_first };

/// Point order u_1..u_n and scales eps[0] = eps_1 > ... > eps[K] = eps_{K+1}.
/// Block k (1-based) uses F_k = {u_1..u_k} (all points once k >= n).
struct BlockSchedule {
  std::vector<std::size_t> order;
  std::vector<double> eps;

  std::size_t blocks() const noexcept { return eps.empty() ? 0 : eps.size() - 1; }
  double scale(std::size_t k) const { return eps[k - 1]; }
  PointSet prefix(std::size_t k) const;
};

inline constexpr std::size_t kMaxBlocks = 64;

/// Geometric schedule eps_k = eps_1 * ratio^{k-1} with eps_1 = diam, or
/// 2 lambda phi(u_1) for Pi+ at lambda <= 2, and K the least k >= n-1 with
/// eps_{k+1} <= d_min. Throws ScheduleTooLong past kMaxBlocks. Blocks whose
/// alpha / diam(G) falls near 1e-12 cannot be covered in double precision;
/// long orders with a small ratio hit this first.
BlockSchedule make_schedule(const FiniteMetricSpace& space, double lambda, CoverMode mode,
                            const PhiFunction* phi = nullptr,
                            PointOrder order = PointOrder::input, double ratio = 0.5);

void validate_schedule(const FiniteMetricSpace& space, double lambda, CoverMode mode,
                       const BlockSchedule& schedule, const PhiFunction* phi = nullptr);

/// sigma_k (Pi) or tau_k (Pi+) for the pair; k is 1-based up to blocks()+1.
double capture_scale(const FiniteMetricSpace& space, const BlockSchedule& schedule, double lambda,
                     CoverMode mode, std::size_t k, std::size_t x, std::size_t y);
/// Blocks k with capture_scale(k+1) <= d(x,y) < capture_scale(k).
std::vector<std::size_t> capturing_blocks(const FiniteMetricSpace& space,
                                          const BlockSchedule& schedule, double lambda,
                                          CoverMode mode, std::size_t x, std::size_t y);

struct EmbedOptions {
  std::optional<BlockSchedule> schedule;
  PointOrder order = PointOrder::input;
  double schedule_ratio = 0.5;
  /// 0: C0FORGE_THREADS, else hardware concurrency.
  unsigned threads = 0;
};

/// d(x,y) < ||f(x) - f(y)|| <= lambda d(x,y) in max-norm space.
Embedding embed_c0(const FiniteMetricSpace& space, double lambda, const ProviderSpec& provider,
                   const EmbedOptions& options = {});

/// Same bounds with nonnegative coordinates.
Embedding embed_c0_plus(const FiniteMetricSpace& space, double lambda,
                        const ProviderSpec& provider, const PhiFunction* phi = nullptr,
                        const EmbedOptions& options = {});

/// Splits each column g into 2 max(g,0) and 2 max(-g,0).
Embedding pos_split(const Embedding& emb);

/// Drops columns, last first, while every pair keeps ||f(x)-f(y)|| > d(x,y).
Embedding prune(const FiniteMetricSpace& space, const Embedding& emb);

}  // namespace c0forge
