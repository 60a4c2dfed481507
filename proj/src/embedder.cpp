#include "c0forge/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <thread>

#include "c0forge/error.hpp"

namespace c0forge {

std::string_view to_string(Target target) { return target == Target::c0 ? "c0" : "c0plus"; }

double Embedding::distance(std::size_t x, std::size_t y) const {
  double best = 0.0;
  for (const auto& col : columns) best = std::max(best, std::fabs(col[x] - col[y]));
  return best;
}

double Embedding::norm(std::size_t x) const {
  double best = 0.0;
  for (const auto& col : columns) best = std::max(best, std::fabs(col[x]));
  return best;
}

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 1.0) || !std::isfinite(lambda))
    throw Error(ErrorCode::LambdaOutOfRange, "lambda must exceed 1");
}

void check_provider_for(const ProviderSpec& provider, double lambda, CoverMode mode) {
  validate_provider(provider);
  if (mode_of(provider.kind) != mode)
    throw Error(ErrorCode::ProviderMismatch,
                std::string(to_string(provider.kind)) + " does not certify this target cone");
  if (std::fabs(provider.lambda - lambda) > 1e-12 * lambda)
    throw Error(ErrorCode::ProviderMismatch, "provider lambda differs from embedding lambda");
}

void check_block(const FiniteMetricSpace& space, const BlockSpec& block) {
  if (block.F.empty() || block.G.empty())
    throw Error(ErrorCode::EmptySet, "block sets F and G must be nonempty");
  if (!(block.alpha > 0.0 && block.alpha < block.beta))
    throw Error(ErrorCode::BadParams, "block needs 0 < alpha < beta");
  if (block.G.back() >= space.size() || block.F.back() >= space.size())
    throw Error(ErrorCode::BadParams, "block references a missing point");
}

std::vector<double> distances_to(const FiniteMetricSpace& space, const PointSet& set) {
  std::vector<double> out(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) out[x] = dist_to_set(space, x, set);
  return out;
}

// Partition of E in which every member of a class is within eps of every
// other member in its distance to each reference point.
struct ClassPartition {
  std::vector<PointSet> classes;
  std::vector<std::size_t> class_of;  // npos outside E
  std::vector<std::size_t> anchor;    // z_j
  std::vector<double> offset;         // r_j
};

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

ClassPartition partition_profiles(const FiniteMetricSpace& space, const PointSet& E,
                                  const PointSet& refs, const PointSet& G, double eps) {
  std::map<std::vector<double>, PointSet> buckets;
  for (std::size_t x : E) {
    std::vector<double> key(refs.size());
    for (std::size_t i = 0; i < refs.size(); ++i) key[i] = std::floor(space(x, refs[i]) / eps);
    buckets[std::move(key)].push_back(x);
  }

  ClassPartition part;
  part.class_of.assign(space.size(), npos);
  auto spread_ok = [&](const PointSet& cls) {
    for (std::size_t z : refs) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (std::size_t x : cls) {
        lo = std::min(lo, space(x, z));
        hi = std::max(hi, space(x, z));
      }
      if (hi - lo > eps) return false;
    }
    return true;
  };
  auto add_class = [&](PointSet cls) {
    for (std::size_t x : cls) part.class_of[x] = part.classes.size();
    part.classes.push_back(std::move(cls));
  };
  for (auto& [key, cls] : buckets) {
    if (spread_ok(cls)) {
      add_class(std::move(cls));
    } else {
      // Quotient rounding straddled a cell boundary.
      for (std::size_t x : cls) add_class({x});
    }
  }

  for (const auto& cls : part.classes) {
    std::size_t best_z = G.front();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t z : G) {
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t x : cls) m = std::min(m, space(x, z));
      if (m < best) {
        best = m;
        best_z = z;
      }
    }
    part.anchor.push_back(best_z);
    part.offset.push_back(best);
  }
  return part;
}

struct WindowPairs {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  PointSet members;
};

WindowPairs window_pairs(const FiniteMetricSpace& space, double lambda, CoverMode mode,
                         const BlockSpec& block) {
  WindowPairs out;
  std::vector<char> mark(space.size(), 0);
  for (std::size_t x = 0; x < space.size(); ++x)
    for (std::size_t y = x + 1; y < space.size(); ++y)
      if (in_block_window(space, lambda, mode, block, x, y)) {
        out.pairs.emplace_back(x, y);
        mark[x] = mark[y] = 1;
      }
  for (std::size_t x = 0; x < space.size(); ++x)
    if (mark[x]) out.members.push_back(x);
  return out;
}

void append_unique(std::vector<SeparatorColumn>& out, std::set<std::vector<double>>& seen,
                   SeparatorColumn col) {
  if (seen.insert(col.values).second) out.push_back(std::move(col));
}

// Unordered class pairs (j <= k) that hold a window pair, each with the
// orientation of the first window pair seen.
std::vector<std::pair<std::size_t, std::size_t>> class_pairs(const WindowPairs& window,
                                                             const ClassPartition& part) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto [x, y] : window.pairs) {
    std::size_t j = part.class_of[x];
    std::size_t k = part.class_of[y];
    if (j > k) std::swap(j, k);
    if (seen.insert({j, k}).second) out.emplace_back(j, k);
  }
  return out;
}

PointSet window_region(const FiniteMetricSpace& space, const std::vector<double>& dist_g,
                       double bound, bool strict, const PointSet& extra) {
  PointSet E;
  for (std::size_t x = 0; x < space.size(); ++x)
    if (strict ? dist_g[x] < bound : dist_g[x] <= bound) E.push_back(x);
  PointSet merged;
  std::set_union(E.begin(), E.end(), extra.begin(), extra.end(), std::back_inserter(merged));
  return merged;
}

unsigned worker_count(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("C0FORGE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace

bool in_block_window(const FiniteMetricSpace& space, double lambda, CoverMode mode,
                     const BlockSpec& block, std::size_t x, std::size_t y) {
  const double d = space(x, y);
  const double gx = dist_to_set(space, x, block.G), gy = dist_to_set(space, y, block.G);
  const double fx = dist_to_set(space, x, block.F), fy = dist_to_set(space, y, block.F);
  if (mode == CoverMode::pi)
    return lambda * (gx + gy) + block.alpha <= d && d < lambda * (fx + fy) + block.beta;
  return lambda * std::max(gx, gy) + block.alpha <= d && d < lambda * std::max(fx, fy) + block.beta;
}

std::vector<SeparatorColumn> block_functions(const FiniteMetricSpace& space, double lambda,
                                             const BlockSpec& block, const ProviderSpec& provider) {
  check_lambda(lambda);
  check_provider_for(provider, lambda, CoverMode::pi);
  check_block(space, block);

  const double R = set_diameter(space, block.G);
  if (R == 0.0) return {};
  const WindowPairs window = window_pairs(space, lambda, CoverMode::pi, block);
  if (window.pairs.empty()) return {};

  const double mu = lambda + (lambda - 1.0) * block.alpha / (2.0 * R);
  const double eps = block.alpha / (8.0 * mu);
  const auto dist_g = distances_to(space, block.G);
  const PointSet E = window_region(space, dist_g, R / (lambda - 1.0), true, window.members);
  PointSet refs;
  std::set_union(block.F.begin(), block.F.end(), block.G.begin(), block.G.end(),
                 std::back_inserter(refs));
  const ClassPartition part = partition_profiles(space, E, refs, block.G, eps);

  std::vector<SeparatorColumn> out;
  std::set<std::vector<double>> seen;
  for (auto [j, k] : class_pairs(window, part)) {
    const Ball bj{part.anchor[j], part.offset[j] + eps};
    const Ball bk{part.anchor[k], part.offset[k] + eps};
    const CoverFocus focus{part.classes[j], part.classes[k]};
    const CoverFamily fam = graded_cover(space, bj, bk, mu, provider, &focus);
    for (const auto& pair : fam.pairs) {
      SeparatorSpec spec{pair.U, pair.V, block.F, block.beta};
      append_unique(out, seen, build_separator(space, spec).scaled(lambda));
    }
  }
  return out;
}

std::vector<SeparatorColumn> block_functions_plus(const FiniteMetricSpace& space, double lambda,
                                                  const BlockSpec& block,
                                                  const ProviderSpec& provider,
                                                  const PhiFunction* phi) {
  check_lambda(lambda);
  check_provider_for(provider, lambda, CoverMode::pi_plus);
  check_block(space, block);

  const double R = set_diameter(space, block.G);
  double K = 0.0;
  if (lambda > 2.0) {
    K = lambda * R / (lambda - 2.0);
  } else {
    if (!phi) throw Error(ErrorCode::PhiMissing, "Pi+ blocks at lambda <= 2 need a phi function");
    const double theta = phi->theta_plus;
    if (!(theta > 1.0 && theta < lambda))
      throw Error(ErrorCode::ThetaInfeasible, "phi theta must lie in (1, lambda)");
    double k0 = 0.0;
    for (std::size_t z : block.G) k0 = std::max(k0, phi->values.at(z));
    K = lambda * theta * k0 / (lambda - theta);
  }
  if (K == 0.0) return {};
  const WindowPairs window = window_pairs(space, lambda, CoverMode::pi_plus, block);
  if (window.pairs.empty()) return {};

  const double mu = lambda + block.alpha * lambda / (2.0 * K);
  // The ball threshold mu (max r + eps) must stay below lambda max r + alpha,
  // which needs mu * eps < alpha / 2.
  const double eps =
      0.5 * std::min(block.alpha / (2.0 * mu), (lambda - 1.0) * block.beta / lambda);
  const auto dist_g = distances_to(space, block.G);
  const PointSet E = window_region(space, dist_g, K / lambda, false, window.members);
  PointSet refs;
  std::set_union(block.F.begin(), block.F.end(), block.G.begin(), block.G.end(),
                 std::back_inserter(refs));
  const ClassPartition part = partition_profiles(space, E, refs, block.G, eps);

  std::vector<SeparatorColumn> out;
  std::set<std::vector<double>> seen;
  for (auto [j, k] : class_pairs(window, part)) {
    const double radius = std::max(part.offset[j], part.offset[k]) + eps;
    const Ball bj{part.anchor[j], radius};
    const Ball bk{part.anchor[k], radius};
    const CoverFocus focus{part.classes[j], part.classes[k]};
    const CoverFamily fam = graded_cover(space, bj, bk, mu, provider, &focus);
    for (const auto& pair : fam.pairs) {
      SeparatorSpec spec{pair.U, pair.V, block.F, block.beta};
      append_unique(out, seen, build_separator_plus(space, spec).scaled(lambda));
    }
  }
  return out;
}

PointSet BlockSchedule::prefix(std::size_t k) const {
  const std::size_t len = std::min(k, order.size());
  return make_point_set(std::vector<std::size_t>(order.begin(),
                                                 order.begin() + static_cast<std::ptrdiff_t>(len)));
}

BlockSchedule make_schedule(const FiniteMetricSpace& space, double lambda, CoverMode mode,
                            const PhiFunction* phi, PointOrder order, double ratio) {
  check_lambda(lambda);
  if (!(ratio > 0.0 && ratio < 1.0))
    throw Error(ErrorCode::BadParams, "schedule ratio must lie in (0, 1)");
  const std::size_t n = space.size();
  BlockSchedule sched;
  if (order == PointOrder::input) {
    sched.order = all_points(n);
  } else if (n > 0) {
    std::vector<double> gap(n, std::numeric_limits<double>::infinity());
    std::vector<char> used(n, 0);
    std::size_t next = 0;
    for (std::size_t step = 0; step < n; ++step) {
      sched.order.push_back(next);
      used[next] = 1;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t x = 0; x < n; ++x) {
        gap[x] = std::min(gap[x], space(x, next));
        if (!used[x] && gap[x] > far_d) {
          far_d = gap[x];
          far = x;
        }
      }
      next = far;
    }
  }
  if (n < 2) return sched;

  double eps1 = space.diameter();
  if (mode == CoverMode::pi_plus && lambda <= 2.0) {
    if (!phi) throw Error(ErrorCode::PhiMissing, "Pi+ schedules at lambda <= 2 need phi");
    const double anchored = 2.0 * lambda * phi->values.at(sched.order.front());
    if (anchored > 0.0) eps1 = anchored;
  }
  sched.eps.push_back(eps1);
  // K = least k >= n-1 with eps_{k+1} <= d_min.
  for (std::size_t k = 1;; ++k) {
    const double next = eps1 * std::pow(ratio, static_cast<double>(k));
    sched.eps.push_back(next);
    if (k >= n - 1 && next <= space.min_distance()) break;
    if (k >= kMaxBlocks)
      throw Error(ErrorCode::ScheduleTooLong,
                  "more than " + std::to_string(kMaxBlocks) + " blocks needed");
  }
  return sched;
}

void validate_schedule(const FiniteMetricSpace& space, double lambda, CoverMode mode,
                       const BlockSchedule& schedule, const PhiFunction* phi) {
  const std::size_t n = space.size();
  if (make_point_set(schedule.order) != all_points(n) || schedule.order.size() != n)
    throw Error(ErrorCode::BadParams, "schedule order must be a permutation of the points");
  if (n < 2) return;
  if (schedule.eps.size() < 2) throw Error(ErrorCode::BadParams, "schedule needs a block");
  for (std::size_t i = 0; i < schedule.eps.size(); ++i) {
    if (!(schedule.eps[i] > 0.0)) throw Error(ErrorCode::BadParams, "scales must be positive");
    if (i > 0 && !(schedule.eps[i] < schedule.eps[i - 1]))
      throw Error(ErrorCode::BadParams, "scales must strictly decrease");
  }
  if (schedule.blocks() > kMaxBlocks)
    throw Error(ErrorCode::ScheduleTooLong, "schedule exceeds the block cap");
  if (schedule.blocks() + 1 < n || schedule.eps.back() > space.min_distance())
    throw Error(ErrorCode::BadParams, "schedule does not reach every pair");
  if (mode == CoverMode::pi_plus && lambda <= 2.0) {
    if (!phi) throw Error(ErrorCode::PhiMissing, "Pi+ schedules at lambda <= 2 need phi");
    if (!(schedule.eps.front() > lambda * phi->values.at(schedule.order.front())))
      throw Error(ErrorCode::BadParams, "eps_1 must exceed lambda * phi(u_1)");
  }
}

double capture_scale(const FiniteMetricSpace& space, const BlockSchedule& schedule, double lambda,
                     CoverMode mode, std::size_t k, std::size_t x, std::size_t y) {
  const PointSet F = schedule.prefix(k);
  const double fx = dist_to_set(space, x, F), fy = dist_to_set(space, y, F);
  const double spread = mode == CoverMode::pi ? fx + fy : std::max(fx, fy);
  return lambda * spread + schedule.scale(k);
}

std::vector<std::size_t> capturing_blocks(const FiniteMetricSpace& space,
                                          const BlockSchedule& schedule, double lambda,
                                          CoverMode mode, std::size_t x, std::size_t y) {
  std::vector<std::size_t> out;
  const double d = space(x, y);
  for (std::size_t k = 1; k <= schedule.blocks(); ++k) {
    if (capture_scale(space, schedule, lambda, mode, k + 1, x, y) <= d &&
        d < capture_scale(space, schedule, lambda, mode, k, x, y))
      out.push_back(k);
  }
  return out;
}

namespace {

Embedding assemble(const FiniteMetricSpace& space, double lambda, CoverMode mode,
                   const ProviderSpec& provider, const PhiFunction* phi,
                   const EmbedOptions& options) {
  Embedding emb;
  emb.target = mode == CoverMode::pi ? Target::c0 : Target::c0plus;
  emb.lambda = lambda;
  emb.points = space.size();
  if (space.size() < 2) return emb;

  const BlockSchedule sched =
      options.schedule ? *options.schedule
                       : make_schedule(space, lambda, mode, phi, options.order,
                                       options.schedule_ratio);
  validate_schedule(space, lambda, mode, sched, phi);

  const std::size_t K = sched.blocks();
  std::vector<std::vector<SeparatorColumn>> per_block(K);
  std::vector<std::exception_ptr> errors(K);
  auto run = [&](std::size_t idx) {
    try {
      const std::size_t k = idx + 1;
      const BlockSpec block{sched.prefix(k), sched.prefix(k + 1), sched.eps[k], sched.eps[k - 1]};
      per_block[idx] = mode == CoverMode::pi
                           ? block_functions(space, lambda, block, provider)
                           : block_functions_plus(space, lambda, block, provider, phi);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  };
  const unsigned workers = std::min<unsigned>(worker_count(options.threads),
                                              static_cast<unsigned>(K));
  if (workers <= 1) {
    for (std::size_t i = 0; i < K; ++i) run(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < K; i += workers) run(i);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t idx = 0; idx < K; ++idx) {
    BlockMeta meta;
    meta.k = idx + 1;
    meta.col_begin = emb.columns.size();
    for (auto& col : per_block[idx]) emb.columns.push_back(std::move(col.values));
    meta.col_end = emb.columns.size();
    meta.F = sched.prefix(idx + 1);
    meta.eps = sched.eps[idx];
    emb.blocks.push_back(std::move(meta));
  }
  return emb;
}

}  // namespace

Embedding embed_c0(const FiniteMetricSpace& space, double lambda, const ProviderSpec& provider,
                   const EmbedOptions& options) {
  check_lambda(lambda);
  check_provider_for(provider, lambda, CoverMode::pi);
  return assemble(space, lambda, CoverMode::pi, provider, nullptr, options);
}

Embedding embed_c0_plus(const FiniteMetricSpace& space, double lambda,
                        const ProviderSpec& provider, const PhiFunction* phi,
                        const EmbedOptions& options) {
  check_lambda(lambda);
  check_provider_for(provider, lambda, CoverMode::pi_plus);
  if (lambda <= 2.0 && !phi && space.size() > 1)
    throw Error(ErrorCode::PhiMissing, "c0plus embeddings at lambda <= 2 need a phi function");
  if (phi && phi->values.size() != space.size())
    throw Error(ErrorCode::ShapeMismatch, "phi has the wrong number of values");
  return assemble(space, lambda, CoverMode::pi_plus, provider, phi, options);
}

Embedding pos_split(const Embedding& emb) {
  if (emb.target != Target::c0)
    throw Error(ErrorCode::BadParams, "pos_split expects a c0 embedding");
  Embedding out;
  out.target = Target::c0plus;
  out.lambda = 2.0 * emb.lambda;
  out.points = emb.points;
  out.columns.reserve(2 * emb.columns.size());
  for (const auto& col : emb.columns) {
    std::vector<double> plus(col.size()), minus(col.size());
    for (std::size_t i = 0; i < col.size(); ++i) {
      plus[i] = 2.0 * std::max(col[i], 0.0);
      minus[i] = 2.0 * std::max(-col[i], 0.0);
    }
    out.columns.push_back(std::move(plus));
    out.columns.push_back(std::move(minus));
  }
  for (auto meta : emb.blocks) {
    meta.col_begin *= 2;
    meta.col_end *= 2;
    out.blocks.push_back(std::move(meta));
  }
  return out;
}

Embedding prune(const FiniteMetricSpace& space, const Embedding& emb) {
  if (emb.points != space.size())
    throw Error(ErrorCode::ShapeMismatch, "embedding and space sizes differ");
  const std::size_t n = space.size();
  const std::size_t m = emb.dimension();
  auto pair_index = [n](std::size_t x, std::size_t y) { return x * n + y; };

  // witnesses[p]: columns whose gap alone exceeds d for pair p.
  std::vector<std::size_t> witnesses(n * n, 0);
  std::vector<std::size_t> protect(n * n, m);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      double best = -1.0;
      for (std::size_t c = 0; c < m; ++c) {
        const double gap = std::fabs(emb.columns[c][x] - emb.columns[c][y]);
        if (gap > space(x, y)) ++witnesses[pair_index(x, y)];
        if (gap > best) {
          best = gap;
          protect[pair_index(x, y)] = c;
        }
      }
    }

  std::vector<char> keep(m, 1);
  for (std::size_t c = m; c-- > 0;) {
    bool removable = true;
    for (std::size_t x = 0; x < n && removable; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        const std::size_t p = pair_index(x, y);
        const bool witness = std::fabs(emb.columns[c][x] - emb.columns[c][y]) > space(x, y);
        // Pairs with no witness at all keep their best column.
        if ((witness && witnesses[p] < 2) || (witnesses[p] == 0 && protect[p] == c)) {
          removable = false;
          break;
        }
      }
    if (!removable) continue;
    keep[c] = 0;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y)
        if (std::fabs(emb.columns[c][x] - emb.columns[c][y]) > space(x, y))
          --witnesses[pair_index(x, y)];
  }

  Embedding out;
  out.target = emb.target;
  out.lambda = emb.lambda;
  out.points = emb.points;
  std::vector<std::size_t> new_index(m + 1, 0);
  for (std::size_t c = 0; c < m; ++c) {
    new_index[c] = out.columns.size();
    if (keep[c]) out.columns.push_back(emb.columns[c]);
  }
  new_index[m] = out.columns.size();
  for (auto meta : emb.blocks) {
    meta.col_begin = new_index[std::min(meta.col_begin, m)];
    meta.col_end = new_index[std::min(meta.col_end, m)];
    out.blocks.push_back(std::move(meta));
  }
  return out;
}

}  // namespace c0forge
