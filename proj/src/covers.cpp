#include "c0forge/covers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "c0forge/error.hpp"

namespace c0forge {

namespace {

constexpr double kSlack = 1e-12;
// Halving floor for every epsilon search, relative to the ball scale.
constexpr double kEpsFloor = 0x1.0p-40;

bool same_constant(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::fabs(b); }

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_mu(double mu, double lambda, std::string_view who) {
  if (!(mu > lambda))
    throw Error(ErrorCode::MuTooSmall,
                std::string(who) + " needs mu > " + num(lambda) + ", got " + num(mu));
}

void require_equal_radii(const Ball& b1, const Ball& b2) {
  if (b1.radius != b2.radius)
    throw Error(ErrorCode::UnequalRadii, "Pi+ covers need balls of equal radius");
}

CoverFamily empty_family(double lambda, double mu, double nu, CoverMode mode, double scale) {
  CoverFamily fam;
  fam.lambda = lambda;
  fam.mu = mu;
  fam.nu = nu;
  fam.mode = mode;
  fam.variant = CoverVariant::plain;
  fam.scale = scale;
  fam.threshold = mu * scale;
  return fam;
}

double scale_of(CoverMode mode, const Ball& b1, const Ball& b2) {
  return mode == CoverMode::pi ? b1.radius + b2.radius : b1.radius;
}

// U = {x in B1 : some y in B2 is far}, V symmetric.
CoverFamily far_product_cover(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2,
                              CoverFamily fam) {
  const PointSet m1 = ball_members(space, b1);
  const PointSet m2 = ball_members(space, b2);
  PointSet u, v;
  std::vector<char> v_mark(space.size(), 0);
  for (std::size_t x : m1) {
    bool far = false;
    for (std::size_t y : m2)
      if (space(x, y) > fam.threshold) {
        far = true;
        v_mark[y] = 1;
      }
    if (far) u.push_back(x);
  }
  for (std::size_t y : m2)
    if (v_mark[y]) v.push_back(y);
  if (!u.empty()) fam.pairs.push_back({std::move(u), std::move(v)});
  return fam;
}

// Greedy eps-net over the far pairs: every uncovered far pair becomes the
// center of a new product of eps-balls.
CoverFamily greedy_net_cover(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2,
                             double eps, CoverFamily fam) {
  const PointSet m1 = ball_members(space, b1);
  const PointSet m2 = ball_members(space, b2);
  std::vector<char> covered(m1.size() * m2.size(), 0);
  for (std::size_t i = 0; i < m1.size(); ++i) {
    for (std::size_t j = 0; j < m2.size(); ++j) {
      if (covered[i * m2.size() + j] || space(m1[i], m2[j]) <= fam.threshold) continue;
      CoverPair pair;
      std::vector<std::size_t> ui, vj;
      for (std::size_t a = 0; a < m1.size(); ++a)
        if (space(m1[a], m1[i]) <= eps) {
          pair.U.push_back(m1[a]);
          ui.push_back(a);
        }
      for (std::size_t b = 0; b < m2.size(); ++b)
        if (space(m2[b], m2[j]) <= eps) {
          pair.V.push_back(m2[b]);
          vj.push_back(b);
        }
      for (std::size_t a : ui)
        for (std::size_t b : vj) covered[a * m2.size() + b] = 1;
      fam.pairs.push_back(std::move(pair));
    }
  }
  return fam;
}

struct LpBound {
  double lambda;
  double nu;
  // Strict inequality the cell size eps has to satisfy at scale s.
  bool (*ok)(double mu, double nu, double p, double s, double eps);
};

bool lp_pi_ok(double mu, double nu, double p, double s, double eps) {
  const double inner = std::pow(mu, p) * std::pow(s, p) - std::pow(s + 2.0 * eps, p);
  if (!(inner > 0.0)) return false;
  const double c = std::pow(2.0, 1.0 / p);
  return c * std::pow(inner, 1.0 / p) - 2.0 * c * eps > nu * s;
}

bool lp_plus_ok(double mu, double nu, double p, double s, double eps) {
  const double inner =
      std::pow(mu, p) * std::pow(s, p) - std::pow(2.0, p) * std::pow(s + eps, p);
  if (!(inner > 0.0)) return false;
  const double c = std::pow(1.0 + std::pow(2.0, p), 1.0 / p);
  return c * std::pow(inner, 1.0 / p) - 2.0 * eps * c > nu * s;
}

bool lp_positive_ok(double mu, double nu, double p, double s, double eps) {
  const double inner = std::pow(mu, p) * std::pow(s, p) - 2.0 * std::pow(s + eps, p);
  if (!(inner > 0.0)) return false;
  const double c = std::pow(3.0, 1.0 / p);
  return c * std::pow(inner, 1.0 / p) - 2.0 * eps * c > nu * s;
}

using CellKey = std::vector<std::int64_t>;

CellKey cell_of(const std::vector<double>& pt, double width) {
  CellKey key(pt.size());
  for (std::size_t i = 0; i < pt.size(); ++i)
    key[i] = static_cast<std::int64_t>(std::floor(pt[i] / width));
  return key;
}

// Partition both balls by a grid of per-axis width eps / (2 N^{1/p}), whose
// cells have l_p diameter below eps, and keep the cell pairs that hold a far
// pair.
CoverFamily grid_cover(const LpPointCloud& cloud, const FiniteMetricSpace& space, const Ball& b1,
                       const Ball& b2, CoverFamily fam, const LpBound& bound) {
  if (cloud.size() != space.size())
    throw Error(ErrorCode::ShapeMismatch, "cloud and space sizes differ");
  const double s = fam.scale;
  double eps = s / 4.0;
  while (!bound.ok(fam.mu, fam.nu, cloud.p, s, eps)) {
    eps *= 0.5;
    if (eps < kEpsFloor * s)
      throw Error(ErrorCode::EpsilonSearchFailed,
                  "no cell size satisfies the l_p separation bound at mu=" + num(fam.mu));
  }
  const double dim = static_cast<double>(std::max<std::size_t>(cloud.dim, 1));
  const double width = eps / (2.0 * std::pow(dim, 1.0 / cloud.p));

  auto cells_of = [&](const Ball& b) {
    std::map<CellKey, PointSet> cells;
    for (std::size_t x : ball_members(space, b)) cells[cell_of(cloud.points[x], width)].push_back(x);
    return cells;
  };
  const auto left = cells_of(b1);
  const auto right = cells_of(b2);
  for (const auto& [kl, u] : left) {
    for (const auto& [kr, v] : right) {
      bool far = false;
      for (std::size_t x : u) {
        for (std::size_t y : v)
          if (space(x, y) > fam.threshold) {
            far = true;
            break;
          }
        if (far) break;
      }
      if (far) fam.pairs.push_back({u, v});
    }
  }
  return fam;
}

double midpoint(double a, double b) { return 0.5 * (a + b); }

double lp_nu(double mu, double p) {
  return midpoint(mu, std::pow(2.0, 1.0 / p) * std::pow(std::pow(mu, p) - 1.0, 1.0 / p));
}

double lp_plus_nu(double mu, double p) {
  const double c = std::pow(1.0 + std::pow(2.0, p), 1.0 / p);
  return midpoint(mu, c * std::pow(std::pow(mu, p) - std::pow(2.0, p), 1.0 / p));
}

double lp_positive_nu(double mu, double p) {
  return midpoint(mu, std::pow(3.0, 1.0 / p) * std::pow(std::pow(mu, p) - 2.0, 1.0 / p));
}

double net_nu(double mu, double lambda) { return midpoint(mu, lambda * mu); }

void check_ball(const FiniteMetricSpace& space, const Ball& b) {
  make_ball(space, b.center, b.radius);
}

}  // namespace

std::string_view to_string(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::generic: return "generic";
    case ProviderKind::net: return "net";
    case ProviderKind::lp: return "lp";
    case ProviderKind::generic_plus: return "generic-plus";
    case ProviderKind::net_plus: return "net-plus";
    case ProviderKind::lp_plus: return "lp-plus";
    case ProviderKind::lp_positive: return "lp-positive";
  }
  return "unknown";
}

std::optional<ProviderKind> parse_provider_kind(std::string_view text) {
  for (auto kind : {ProviderKind::generic, ProviderKind::net, ProviderKind::lp,
                    ProviderKind::generic_plus, ProviderKind::net_plus, ProviderKind::lp_plus,
                    ProviderKind::lp_positive})
    if (to_string(kind) == text) return kind;
  return std::nullopt;
}

CoverMode mode_of(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::generic:
    case ProviderKind::net:
    case ProviderKind::lp: return CoverMode::pi;
    default: return CoverMode::pi_plus;
  }
}

bool is_lp_kind(ProviderKind kind) {
  return kind == ProviderKind::lp || kind == ProviderKind::lp_plus ||
         kind == ProviderKind::lp_positive;
}

std::optional<double> provider_constant(ProviderKind kind, double p) {
  switch (kind) {
    case ProviderKind::generic: return 2.0;
    case ProviderKind::generic_plus: return 3.0;
    case ProviderKind::lp: return std::pow(2.0, 1.0 / p);
    case ProviderKind::lp_plus: return std::pow(std::pow(2.0, p) + 1.0, 1.0 / p);
    case ProviderKind::lp_positive: return std::pow(3.0, 1.0 / p);
    case ProviderKind::net:
    case ProviderKind::net_plus: return std::nullopt;
  }
  return std::nullopt;
}

void validate_provider(const ProviderSpec& spec) {
  if (is_lp_kind(spec.kind)) {
    if (!spec.cloud)
      throw Error(ErrorCode::BadParams, std::string(to_string(spec.kind)) + " needs an l_p cloud");
    if (spec.kind == ProviderKind::lp_positive && !spec.cloud->positive)
      throw Error(ErrorCode::NotPositiveCone, "lp-positive needs a cloud in the positive cone");
  }
  if (!(spec.lambda > 1.0) || !std::isfinite(spec.lambda))
    throw Error(ErrorCode::LambdaOutOfRange, "lambda must exceed 1, got " + num(spec.lambda));
  if (auto c = provider_constant(spec.kind, spec.p()); c && !same_constant(spec.lambda, *c))
    throw Error(ErrorCode::LambdaOutOfRange, std::string(to_string(spec.kind)) +
                                                 " only certifies lambda = " + num(*c) +
                                                 ", got " + num(spec.lambda));
  if (spec.kind == ProviderKind::net || spec.kind == ProviderKind::net_plus)
    if (!(spec.net_fraction > 0.0 && spec.net_fraction < 1.0))
      throw Error(ErrorCode::BadParams, "net_fraction must lie in (0, 1)");
}

ProviderSpec make_provider(ProviderKind kind, double lambda,
                           std::shared_ptr<const LpPointCloud> cloud, double net_fraction) {
  ProviderSpec spec{kind, lambda, net_fraction, std::move(cloud)};
  validate_provider(spec);
  return spec;
}

ProviderSpec make_provider_auto(ProviderKind kind, std::shared_ptr<const LpPointCloud> cloud) {
  const double p = cloud ? cloud->p : 1.0;
  auto c = provider_constant(kind, p);
  if (!c)
    throw Error(ErrorCode::BadParams,
                std::string(to_string(kind)) + " has no fixed constant; pass lambda explicitly");
  return make_provider(kind, *c, std::move(cloud));
}

double provider_nu(const ProviderSpec& spec, double mu) {
  switch (spec.kind) {
    case ProviderKind::generic: return 2.0 * mu - 2.0;
    case ProviderKind::generic_plus: return 3.0 * mu - 6.0;
    case ProviderKind::net:
    case ProviderKind::net_plus: return net_nu(mu, spec.lambda);
    case ProviderKind::lp: return lp_nu(mu, spec.p());
    case ProviderKind::lp_plus: return lp_plus_nu(mu, spec.p());
    case ProviderKind::lp_positive: return lp_positive_nu(mu, spec.p());
  }
  return 0.0;
}

CoverFamily generic_cover(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2,
                          double mu) {
  check_ball(space, b1);
  check_ball(space, b2);
  require_mu(mu, 2.0, "generic_cover");
  return far_product_cover(
      space, b1, b2, empty_family(2.0, mu, 2.0 * mu - 2.0, CoverMode::pi, b1.radius + b2.radius));
}

CoverFamily generic_cover_plus(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2,
                               double mu) {
  check_ball(space, b1);
  check_ball(space, b2);
  require_equal_radii(b1, b2);
  require_mu(mu, 3.0, "generic_cover_plus");
  return far_product_cover(space, b1, b2,
                           empty_family(3.0, mu, 3.0 * mu - 6.0, CoverMode::pi_plus, b1.radius));
}

CoverFamily net_cover(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2, double mu,
                      double lambda, double net_fraction) {
  check_ball(space, b1);
  check_ball(space, b2);
  if (!(lambda > 1.0)) throw Error(ErrorCode::LambdaOutOfRange, "net_cover needs lambda > 1");
  require_mu(mu, lambda, "net_cover");
  const double s = b1.radius + b2.radius;
  const double nu = net_nu(mu, lambda);
  const double eps = net_fraction * (lambda * mu - nu) * s / (2.0 * lambda);
  return greedy_net_cover(space, b1, b2, eps, empty_family(lambda, mu, nu, CoverMode::pi, s));
}

CoverFamily net_cover_plus(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2,
                           double mu, double lambda, double net_fraction) {
  check_ball(space, b1);
  check_ball(space, b2);
  require_equal_radii(b1, b2);
  if (!(lambda > 1.0)) throw Error(ErrorCode::LambdaOutOfRange, "net_cover_plus needs lambda > 1");
  require_mu(mu, lambda, "net_cover_plus");
  const double s = b1.radius;
  const double nu = net_nu(mu, lambda);
  const double eps = net_fraction * (lambda * mu - nu) * s / (2.0 * lambda);
  return greedy_net_cover(space, b1, b2, eps,
                          empty_family(lambda, mu, nu, CoverMode::pi_plus, s));
}

CoverFamily lp_cover(const LpPointCloud& cloud, const FiniteMetricSpace& space, const Ball& b1,
                     const Ball& b2, double mu) {
  check_ball(space, b1);
  check_ball(space, b2);
  const double lambda = std::pow(2.0, 1.0 / cloud.p);
  require_mu(mu, lambda, "lp_cover");
  const LpBound bound{lambda, lp_nu(mu, cloud.p), &lp_pi_ok};
  return grid_cover(cloud, space, b1, b2,
                    empty_family(lambda, mu, bound.nu, CoverMode::pi, b1.radius + b2.radius),
                    bound);
}

CoverFamily lp_cover_plus(const LpPointCloud& cloud, const FiniteMetricSpace& space,
                          const Ball& b1, const Ball& b2, double mu) {
  check_ball(space, b1);
  check_ball(space, b2);
  require_equal_radii(b1, b2);
  const double lambda = std::pow(1.0 + std::pow(2.0, cloud.p), 1.0 / cloud.p);
  require_mu(mu, lambda, "lp_cover_plus");
  const LpBound bound{lambda, lp_plus_nu(mu, cloud.p), &lp_plus_ok};
  return grid_cover(cloud, space, b1, b2,
                    empty_family(lambda, mu, bound.nu, CoverMode::pi_plus, b1.radius), bound);
}

CoverFamily lp_positive_cover(const LpPointCloud& cloud, const FiniteMetricSpace& space,
                              const Ball& b1, const Ball& b2, double mu) {
  check_ball(space, b1);
  check_ball(space, b2);
  require_equal_radii(b1, b2);
  if (!cloud.positive)
    throw Error(ErrorCode::NotPositiveCone, "lp_positive_cover needs a positive cloud");
  const double lambda = std::pow(3.0, 1.0 / cloud.p);
  require_mu(mu, lambda, "lp_positive_cover");
  const LpBound bound{lambda, lp_positive_nu(mu, cloud.p), &lp_positive_ok};
  return grid_cover(cloud, space, b1, b2,
                    empty_family(lambda, mu, bound.nu, CoverMode::pi_plus, b1.radius), bound);
}

CoverFamily base_cover(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2, double mu,
                       const ProviderSpec& spec) {
  switch (spec.kind) {
    case ProviderKind::generic: return generic_cover(space, b1, b2, mu);
    case ProviderKind::net: return net_cover(space, b1, b2, mu, spec.lambda, spec.net_fraction);
    case ProviderKind::lp: return lp_cover(*spec.cloud, space, b1, b2, mu);
    case ProviderKind::generic_plus: return generic_cover_plus(space, b1, b2, mu);
    case ProviderKind::net_plus:
      return net_cover_plus(space, b1, b2, mu, spec.lambda, spec.net_fraction);
    case ProviderKind::lp_plus: return lp_cover_plus(*spec.cloud, space, b1, b2, mu);
    case ProviderKind::lp_positive: return lp_positive_cover(*spec.cloud, space, b1, b2, mu);
  }
  throw Error(ErrorCode::BadParams, "unknown provider kind");
}

CoverFamily graded_cover(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2, double mu,
                         const ProviderSpec& base, const CoverFocus* focus) {
  validate_provider(base);
  check_ball(space, b1);
  check_ball(space, b2);
  const CoverMode mode = mode_of(base.kind);
  if (mode == CoverMode::pi_plus) require_equal_radii(b1, b2);
  require_mu(mu, base.lambda, "graded_cover");

  const double nu_base = provider_nu(base, mu);
  const double nu = midpoint(mu, nu_base);
  const double eps = nu_base / nu - 1.0;
  // Below this the band factors (1+eps)^k stop being distinguishable.
  if (!(eps > 1e-12))
    throw Error(ErrorCode::EpsilonSearchFailed,
                "graded step " + num(eps) + " is below floating point resolution (mu = " +
                    num(mu) + ")");
  const double log_step = std::log1p(eps);

  CoverFamily fam = empty_family(base.lambda, mu, nu, mode, scale_of(mode, b1, b2));
  fam.variant = CoverVariant::graded;

  PointSet left = ball_members(space, b1);
  PointSet right = ball_members(space, b2);
  if (focus) {
    left = intersect(left, focus->left);
    right = intersect(right, focus->right);
  }
  if (left.empty() || right.empty()) return fam;

  // The base provider sees radii r * f(k) and derives its own threshold from
  // them, so band membership is decided with that same floating expression.
  auto factor = [&](std::int64_t k) { return std::exp(static_cast<double>(k) * log_step); };
  auto scaled_ball = [&](const Ball& b, std::int64_t k) {
    return Ball{b.center, b.radius * factor(k)};
  };
  auto threshold_at = [&](std::int64_t k) {
    const Ball s1 = scaled_ball(b1, k);
    const Ball s2 = scaled_ball(b2, k);
    return mu * scale_of(mode, s1, s2);
  };

  std::set<std::int64_t> bands;
  for (std::size_t x : left) {
    for (std::size_t y : right) {
      const double d = space(x, y);
      if (!(d > fam.threshold)) continue;
      auto k = static_cast<std::int64_t>(std::floor(std::log(d / fam.threshold) / log_step));
      k = std::max<std::int64_t>(k, 0);
      while (k > 0 && !(threshold_at(k) < d)) --k;
      while (threshold_at(k + 1) < d) ++k;
      bands.insert(k);
    }
  }

  std::set<std::pair<PointSet, PointSet>> seen;
  for (std::int64_t k : bands) {
    CoverFamily layer = base_cover(space, scaled_ball(b1, k), scaled_ball(b2, k), mu, base);
    for (auto& pair : layer.pairs) {
      if (focus) {
        pair.U = intersect(pair.U, left);
        pair.V = intersect(pair.V, right);
        if (pair.U.empty() || pair.V.empty()) continue;
      }
      if (!seen.insert({pair.U, pair.V}).second) continue;
      fam.pairs.push_back(std::move(pair));
    }
  }
  return fam;
}

PhiFunction phi_net(const FiniteMetricSpace& space, double lambda, const PointSet& net) {
  if (!(lambda > 1.0)) throw Error(ErrorCode::LambdaOutOfRange, "phi_net needs lambda > 1");
  if (space.size() < 2) throw Error(ErrorCode::BadParams, "phi_net needs at least two points");
  const PointSet anchors = net.empty() ? all_points(space.size()) : net;
  PhiFunction phi;
  phi.values.resize(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    double best = 0.0;
    for (std::size_t z : anchors) best = std::max(best, space(x, z));
    phi.values[x] = best;
  }
  double theta_min = 0.0;
  for (std::size_t x = 0; x < space.size(); ++x)
    for (std::size_t y = x + 1; y < space.size(); ++y)
      theta_min = std::max(theta_min, space(x, y) / std::max(phi.values[x], phi.values[y]));
  if (!(theta_min < lambda))
    throw Error(ErrorCode::ThetaInfeasible, "max d/max(phi) = " + num(theta_min) +
                                                " is not below lambda = " + num(lambda));
  phi.theta_plus = midpoint(std::max(1.0, theta_min), lambda);
  return phi;
}

PhiFunction phi_anchor(const FiniteMetricSpace& space, std::size_t anchor) {
  if (anchor >= space.size()) throw Error(ErrorCode::BadParams, "anchor out of range");
  PhiFunction phi;
  phi.values.resize(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) phi.values[x] = space(x, anchor);
  phi.theta_plus = 2.0;
  return phi;
}

PhiFunction phi_norm(const LpPointCloud& cloud) {
  if (!cloud.positive) throw Error(ErrorCode::NotPositiveCone, "phi_norm needs a positive cloud");
  PhiFunction phi;
  for (const auto& pt : cloud.points) phi.values.push_back(lp_norm(pt, cloud.p));
  phi.theta_plus = std::pow(2.0, 1.0 / cloud.p);
  return phi;
}

bool check_phi(const FiniteMetricSpace& space, const PhiFunction& phi) {
  if (phi.values.size() != space.size()) return false;
  for (std::size_t x = 0; x < space.size(); ++x) {
    if (phi.values[x] < 0.0) return false;
    for (std::size_t y = x + 1; y < space.size(); ++y) {
      const double d = space(x, y);
      if (std::fabs(phi.values[x] - phi.values[y]) > d * (1.0 + kSlack)) return false;
      if (d > phi.theta_plus * std::max(phi.values[x], phi.values[y]) * (1.0 + kSlack))
        return false;
    }
  }
  return true;
}

ExtractedCover extract_cover_from_embedding(const FiniteMetricSpace& space, const Embedding& emb,
                                            const Ball& b1, const Ball& b2, double mu,
                                            double lambda) {
  if (emb.points != space.size())
    throw Error(ErrorCode::ShapeMismatch, "embedding and space sizes differ");
  check_ball(space, b1);
  check_ball(space, b2);
  const double lambda0 = emb.lambda;
  if (!(lambda > lambda0))
    throw Error(ErrorCode::ConstantTooTight,
                "need lambda > embedding constant " + num(lambda0) + ", got " + num(lambda));
  require_mu(mu, lambda, "extract_cover_from_embedding");
  const bool positive = emb.target == Target::c0plus;
  const CoverMode mode = positive ? CoverMode::pi_plus : CoverMode::pi;
  if (positive) require_equal_radii(b1, b2);
  const double s = scale_of(mode, b1, b2);
  const std::size_t a1 = b1.center;
  const std::size_t a2 = b2.center;

  // Columns past the cutoff cannot witness a far pair.
  std::size_t cutoff = 0;
  for (std::size_t i = 0; i < emb.dimension(); ++i) {
    const double fa = emb.value(a1, i);
    const double fb = emb.value(a2, i);
    const double size = positive ? std::max(fa, fb) : std::fabs(fa - fb);
    if (size >= (mu - lambda) * s) cutoff = i + 1;
  }

  const double eps = mu * (lambda - lambda0) / (2.0 * lambda);
  const double width = 0.5 * eps * s;
  auto cells_of = [&](const Ball& b) {
    std::map<CellKey, PointSet> cells;
    for (std::size_t x : ball_members(space, b)) {
      CellKey key(cutoff);
      for (std::size_t i = 0; i < cutoff; ++i)
        key[i] = static_cast<std::int64_t>(std::floor(emb.value(x, i) / width));
      cells[key].push_back(x);
    }
    return cells;
  };

  ExtractedCover out;
  out.family = empty_family(lambda, mu, lambda * (mu - eps) / lambda0, mode, s);
  const auto left = cells_of(b1);
  const auto right = cells_of(b2);
  for (const auto& [kl, u] : left)
    for (const auto& [kr, v] : right) {
      bool far = false;
      for (std::size_t x : u)
        for (std::size_t y : v) far = far || space(x, y) > out.family.threshold;
      if (far) out.family.pairs.push_back({u, v});
    }

  if (positive) {
    PhiFunction phi;
    phi.values.resize(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) phi.values[x] = emb.norm(x) / lambda0;
    phi.theta_plus = lambda0;
    out.phi = std::move(phi);
  }
  return out;
}

CoverReport verify_cover(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2,
                         const CoverFamily& family, const CoverFocus* focus) {
  CoverReport report;
  report.pair_count = family.pairs.size();
  report.worst_margin = std::numeric_limits<double>::infinity();
  auto fail = [&](const std::string& why) {
    if (report.pass) report.violation = why;
    report.pass = false;
  };

  std::vector<double> gaps(family.pairs.size(), 0.0);
  std::vector<std::vector<char>> in_u(family.pairs.size()), in_v(family.pairs.size());
  for (std::size_t j = 0; j < family.pairs.size(); ++j) {
    const auto& pair = family.pairs[j];
    if (pair.U.empty() || pair.V.empty()) {
      fail("pair " + std::to_string(j) + " has an empty side");
      continue;
    }
    gaps[j] = set_gap(space, pair.U, pair.V);
    in_u[j].assign(space.size(), 0);
    in_v[j].assign(space.size(), 0);
    for (std::size_t x : pair.U) in_u[j][x] = 1;
    for (std::size_t y : pair.V) in_v[j][y] = 1;
    if (family.variant == CoverVariant::plain) {
      const double lhs = family.lambda * gaps[j];
      const double rhs = family.nu * family.scale;
      report.worst_margin = std::min(report.worst_margin, lhs / rhs - 1.0);
      if (lhs < rhs * (1.0 - kSlack))
        fail("pair " + std::to_string(j) + ": lambda*delta = " + num(lhs) + " < nu*scale = " +
             num(rhs));
    }
  }

  PointSet left = ball_members(space, b1);
  PointSet right = ball_members(space, b2);
  if (focus) {
    left = intersect(left, focus->left);
    right = intersect(right, focus->right);
  }
  for (std::size_t x : left) {
    for (std::size_t y : right) {
      const double d = space(x, y);
      if (!(d > family.threshold)) continue;
      ++report.far_pairs;
      bool covered = false;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < family.pairs.size(); ++j) {
        if (in_u[j].empty() || !in_u[j][x] || !in_v[j][y]) continue;
        if (family.variant == CoverVariant::plain) {
          covered = true;
          break;
        }
        const double ratio = family.lambda * family.mu * gaps[j] / (family.nu * d);
        best = std::max(best, ratio - 1.0);
        if (ratio >= 1.0 - kSlack) covered = true;
      }
      if (family.variant == CoverVariant::graded && covered)
        report.worst_margin = std::min(report.worst_margin, best);
      if (!covered)
        fail("far pair (" + std::to_string(x) + "," + std::to_string(y) + ") at distance " +
             num(d) + " is not covered" +
             (family.variant == CoverVariant::graded ? " with the graded bound" : ""));
    }
  }
  if (!std::isfinite(report.worst_margin)) report.worst_margin = 0.0;
  return report;
}

}  // namespace c0forge
