// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "c0forge/audit.hpp"
#include "c0forge/covers.hpp"
#include "c0forge/embedder.hpp"
#include "c0forge/error.hpp"
#include "c0forge/exact.hpp"
#include "c0forge/generators.hpp"
#include "c0forge/separators.hpp"

using namespace c0forge;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

PointSet random_subset(std::mt19937_64& rng, std::size_t n, std::size_t max_size) {
  const std::size_t k = 1 + pick(rng, max_size);
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < k; ++i) v.push_back(pick(rng, n));
  return make_point_set(v);
}

// Ratios in (1 - 1e-9, lambda (1 + tol)], plus the block bounds.
void audit_embedding(Outcome& out, const std::string& tag, const FiniteMetricSpace& space,
                     const Embedding& emb, double lambda, double tol = 1e-9) {
  const DistortionReport rep = distortion_report(space, emb, 1e-9);
  if (!rep.pass) out.fail(tag + ": distortion verdict FAIL");
  if (!(rep.min_ratio > 1.0 - 1e-9)) out.fail(tag + ": min ratio " + fmt(rep.min_ratio));
  if (!(rep.max_ratio <= lambda * (1.0 + tol))) out.fail(tag + ": max ratio " + fmt(rep.max_ratio));
  if (!check_block_bounds(space, emb).pass) out.fail(tag + ": block bound violated");
  if (emb.target == Target::c0plus && !rep.nonneg) out.fail(tag + ": negative entry");
}

Outcome criterion_universal_c0() {
  Outcome out;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 30; ++i) {
    const std::size_t n = 4 + (i * 7) % 29;
    const auto space = gen_random_metric(n, 1000 + i);
    const auto t0 = Clock::now();
    const Embedding emb = embed_c0(space, 2.0, make_provider(ProviderKind::generic, 2.0));
    const double secs = seconds_since(t0);
    worst = std::max(worst, secs);
    audit_embedding(out, "seed " + std::to_string(1000 + i), space, emb, 2.0);
    if (secs >= 10.0) out.fail("run took " + fmt(secs) + " s");
  }
  if (out.pass) out.detail = "30 spaces, slowest " + fmt(worst) + " s";
  return out;
}

Outcome criterion_lp_constant() {
  Outcome out;
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    auto cloud = std::make_shared<const LpPointCloud>(gen_lp_cloud(p, 8, 24, 77));
    const auto space = lp_space(*cloud);
    const ProviderSpec provider = make_provider_auto(ProviderKind::lp, cloud);
    const Embedding emb = embed_c0(space, provider.lambda, provider);
    audit_embedding(out, "p=" + fmt(p), space, emb, std::pow(2.0, 1.0 / p));
  }
  if (out.pass) out.detail = "p in {1, 1.5, 2, 3}, 24 points in dimension 8";
  return out;
}

Outcome criterion_c0plus_three() {
  Outcome out;
  for (std::uint64_t i = 0; i < 30; ++i) {
    const std::size_t n = 3 + (i * 5) % 18;
    const auto space = gen_random_metric(n, 2000 + i);
    const Embedding emb =
        embed_c0_plus(space, 3.0, make_provider(ProviderKind::generic_plus, 3.0));
    audit_embedding(out, "seed " + std::to_string(2000 + i), space, emb, 3.0);
  }
  if (out.pass) out.detail = "30 spaces, nonnegative";
  return out;
}

Outcome criterion_c0plus_any_lambda() {
  Outcome out;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::size_t n = 3 + i % 14;
    const auto space = gen_random_metric(n, 3000 + i);
    const PhiFunction phi = phi_net(space, 1.2);
    const Embedding emb =
        embed_c0_plus(space, 1.2, make_provider(ProviderKind::net_plus, 1.2), &phi);
    audit_embedding(out, "seed " + std::to_string(3000 + i), space, emb, 1.2);
  }
  if (out.pass) out.detail = "20 spaces at lambda 1.2";
  return out;
}

Outcome criterion_lp_plus() {
  Outcome out;
  for (double p : {1.0, 2.0}) {
    auto signed_cloud = std::make_shared<const LpPointCloud>(gen_lp_cloud(p, 4, 16, 91));
    const auto s1 = lp_space(*signed_cloud);
    const ProviderSpec plus = make_provider_auto(ProviderKind::lp_plus, signed_cloud);
    const double c_plus = std::pow(std::pow(2.0, p) + 1.0, 1.0 / p);
    const PhiFunction phi1 = phi_net(s1, plus.lambda);
    const Embedding e1 = embed_c0_plus(s1, plus.lambda, plus, plus.lambda <= 2.0 ? &phi1 : nullptr);
    audit_embedding(out, "lp-plus p=" + fmt(p), s1, e1, c_plus);

    auto pos_cloud = std::make_shared<const LpPointCloud>(gen_lp_cloud(p, 4, 16, 92, true));
    const auto s2 = lp_space(*pos_cloud);
    const ProviderSpec positive = make_provider_auto(ProviderKind::lp_positive, pos_cloud);
    const PhiFunction phi2 = phi_norm(*pos_cloud);
    const Embedding e2 =
        embed_c0_plus(s2, positive.lambda, positive, positive.lambda <= 2.0 ? &phi2 : nullptr);
    audit_embedding(out, "lp-positive p=" + fmt(p), s2, e2, std::pow(3.0, 1.0 / p));
  }
  if (out.pass) out.detail = "p in {1, 2} for both engines";
  return out;
}

Outcome criterion_ultrametric() {
  Outcome out;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t n = 1 + (i * 13) % 64;
    const auto space = gen_random_ultrametric(n, 4000 + i);
    const auto um = embed_ultrametric(space);
    const DistortionReport rep = distortion_report(space, um.embedding, 0.0);
    if (!rep.isometry || !rep.pass || (n > 1 && (rep.min_ratio != 1.0 || rep.max_ratio != 1.0)))
      out.fail("seed " + std::to_string(4000 + i) + " not an exact isometry");
    if (!rep.nonneg) out.fail("negative entry");
  }
  if (out.pass) out.detail = "50 ultrametrics, ratios exactly 1";
  return out;
}

// Depth of the lowest common ancestor via parent links, independent of the
// prefix arithmetic in tree_distance.
std::int64_t lca_distance(const TreeNodeSet& tree, std::size_t a, std::size_t b) {
  std::map<TreeNode, std::size_t> index;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) index[tree.nodes[i]] = i;
  auto parent = [&](std::size_t i) {
    TreeNode up(tree.nodes[i].begin(), tree.nodes[i].end() - 1);
    return index.at(up);
  };
  std::int64_t steps = 0;
  while (tree.nodes[a].size() > tree.nodes[b].size()) a = parent(a), ++steps;
  while (tree.nodes[b].size() > tree.nodes[a].size()) b = parent(b), ++steps;
  while (a != b) a = parent(a), b = parent(b), steps += 2;
  return steps;
}

Outcome criterion_tree() {
  Outcome out;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::size_t nodes = 10 + (i * 37) % 191;
    const auto tree = gen_random_tree(nodes, 5000 + i);
    const auto te = embed_tree(tree);
    const DistortionReport rep = distortion_report(te.space, te.embedding, 0.0);
    if (!rep.pass) out.fail("seed " + std::to_string(5000 + i) + " not an exact isometry");
    for (std::size_t a = 0; a < nodes; ++a)
      for (std::size_t b = a + 1; b < nodes; b += 7)
        if (static_cast<double>(lca_distance(tree, a, b)) != te.space(a, b))
          out.fail("tree metric disagrees with the ancestor walk");
  }
  if (out.pass) out.detail = "20 trees up to 200 nodes";
  return out;
}

Outcome criterion_separators() {
  Outcome out;
  std::mt19937_64 rng(6000);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 4 + pick(rng, 9);
    const auto space = gen_random_metric(n, 6100 + static_cast<std::uint64_t>(trial));
    PointSet A = random_subset(rng, n, 3);
    PointSet B;
    for (std::size_t x : random_subset(rng, n, 3))
      if (!contains(A, x)) B.push_back(x);
    if (B.empty()) continue;
    const PointSet C = random_subset(rng, n, 3);
    const double eps = uniform(rng, 0.01, 3.0);
    const SeparatorSpec spec{A, B, C, eps};
    const std::string tag = "trial " + std::to_string(trial);

    const double dab = set_gap(space, A, B);
    const double dac = set_gap(space, A, C), dbc = set_gap(space, B, C);
    const SeparatorColumn f = build_separator(space, spec);
    const double theta = std::min(dab, dac + dbc + 2.0 * eps);
    if (lipschitz_constant(space, f.values) > 1.0 + 1e-12) out.fail(tag + ": signed Lip > 1");
    for (std::size_t c : C)
      if (std::fabs(f.values[c]) > eps * (1.0 + 1e-12)) out.fail(tag + ": signed |f| > eps on C");
    for (std::size_t a : A)
      for (std::size_t b : B)
        if (std::fabs((f.values[a] - f.values[b]) - theta) > 1e-12 * theta)
          out.fail(tag + ": signed gap differs from theta");

    const SeparatorColumn g = build_separator_plus(space, spec);
    const double theta_plus = std::min(dab, std::max(dac, dbc) + eps);
    if (lipschitz_constant(space, g.values) > 1.0 + 1e-12) out.fail(tag + ": plus Lip > 1");
    for (double v : g.values)
      if (v < 0.0) out.fail(tag + ": plus value negative");
    for (std::size_t c : C)
      if (g.values[c] > eps * (1.0 + 1e-12)) out.fail(tag + ": plus f > eps on C");
    for (std::size_t a : A)
      for (std::size_t b : B)
        if (std::fabs(g.values[a] - g.values[b]) < theta_plus * (1.0 - 1e-12))
          out.fail(tag + ": plus gap below theta");

    const auto dstar = augmented_metric(space, C, eps);
    const std::size_t m = dstar.size();
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y) {
        if (dstar[x][y] != dstar[y][x]) out.fail(tag + ": d* asymmetric");
        if ((x == y) != (dstar[x][y] == 0.0)) out.fail(tag + ": d* identity axiom");
        for (std::size_t z = 0; z < m; ++z)
          if (dstar[x][z] > (dstar[x][y] + dstar[y][z]) * (1.0 + 1e-12))
            out.fail(tag + ": d* triangle");
      }
  }
  if (out.pass) out.detail = "200 random separator instances";
  return out;
}

Outcome criterion_covers() {
  Outcome out;
  std::mt19937_64 rng(7000);
  const ProviderKind kinds[] = {ProviderKind::generic,     ProviderKind::net,
                                ProviderKind::lp,          ProviderKind::generic_plus,
                                ProviderKind::net_plus,    ProviderKind::lp_plus,
                                ProviderKind::lp_positive};
  std::size_t checked = 0;
  std::size_t nonvacuous = 0;
  for (int trial = 0; trial < 100; ++trial) {
    for (ProviderKind kind : kinds) {
      const auto seed = 7100 + static_cast<std::uint64_t>(trial) * 10 +
                        static_cast<std::uint64_t>(kind);
      const std::size_t n = 6 + pick(rng, 7);
      std::shared_ptr<const LpPointCloud> cloud;
      FiniteMetricSpace space;
      if (is_lp_kind(kind)) {
        const double p = trial % 3 == 0 ? 1.0 : (trial % 3 == 1 ? 2.0 : 1.5);
        cloud = std::make_shared<const LpPointCloud>(
            gen_lp_cloud(p, 2 + pick(rng, 2), n, seed, kind == ProviderKind::lp_positive));
        space = lp_space(*cloud);
      } else {
        space = gen_random_metric(n, seed);
      }
      const double lambda = provider_constant(kind, cloud ? cloud->p : 1.0)
                                .value_or(uniform(rng, 1.1, 3.0));
      const ProviderSpec spec = make_provider(kind, lambda, cloud);
      const double mu = lambda * uniform(rng, 1.02, 1.6);
      const double diam = space.diameter();
      Ball b1 = make_ball(space, pick(rng, n), diam * uniform(rng, 0.02, 0.3));
      Ball b2 = make_ball(space, pick(rng, n), diam * uniform(rng, 0.02, 0.3));
      if (mode_of(kind) == CoverMode::pi_plus) b2.radius = b1.radius;
      const std::string tag = std::string(to_string(kind)) + " trial " + std::to_string(trial);

      const CoverFamily plain = base_cover(space, b1, b2, mu, spec);
      if (!(plain.nu > mu)) out.fail(tag + ": nu <= mu");
      const CoverReport r1 = verify_cover(space, b1, b2, plain);
      if (!r1.pass) out.fail(tag + ": " + r1.violation);
      const CoverFamily graded = graded_cover(space, b1, b2, mu, spec);
      const CoverReport r2 = verify_cover(space, b1, b2, graded);
      if (!r2.pass) out.fail(tag + " graded: " + r2.violation);
      if (r1.far_pairs > 0) ++nonvacuous;
      ++checked;
    }
  }

  // Covers read off existing embeddings.
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto space = gen_random_metric(6 + i % 4, 7900 + i);
    const Embedding e0 = embed_c0(space, 2.0, make_provider(ProviderKind::generic, 2.0));
    const Embedding e1 = embed_c0_plus(space, 3.0, make_provider(ProviderKind::generic_plus, 3.0));
    for (std::size_t c = 0; c < space.size(); ++c) {
      const double r = space.diameter() * 0.15;
      const Ball b1{c, r};
      const Ball b2{(c + 1) % space.size(), r};
      const ExtractedCover x0 = extract_cover_from_embedding(space, e0, b1, b2, 3.0, 2.5);
      if (!(x0.family.nu > x0.family.mu)) out.fail("extracted nu <= mu");
      const CoverReport rx = verify_cover(space, b1, b2, x0.family);
      if (!rx.pass) out.fail("extracted c0 cover fails");
      if (rx.far_pairs > 0) ++nonvacuous;
      const ExtractedCover x1 = extract_cover_from_embedding(space, e1, b1, b2, 4.0, 3.5);
      if (!(x1.family.nu > x1.family.mu)) out.fail("extracted plus nu <= mu");
      if (!verify_cover(space, b1, b2, x1.family).pass) out.fail("extracted c0plus cover fails");
      if (!x1.phi || !check_phi(space, *x1.phi)) out.fail("extracted phi invalid");
      ++checked;
    }
  }
  if (out.pass) out.detail = std::to_string(checked) + " cover instances, " + std::to_string(nonvacuous) +
                              " with far pairs";
  return out;
}

Outcome criterion_shifted_axes() {
  Outcome out;
  const auto space = gen_shifted_axes(6);
  const Embedding emb = embed_c0(space, 1.1, make_provider(ProviderKind::net, 1.1));
  audit_embedding(out, "lambda 1.1", space, emb, 1.1);
  std::string dims;
  bool monotone = true;
  std::size_t prev = 0;
  bool first = true;
  for (double lambda : {1.05, 1.1, 1.25, 1.5, 2.0}) {
    const Embedding e = embed_c0(space, lambda, make_provider(ProviderKind::net, lambda));
    audit_embedding(out, "sweep " + fmt(lambda), space, e, lambda);
    if (!first && e.dimension() > prev) monotone = false;
    prev = e.dimension();
    first = false;
    dims += (dims.empty() ? "" : ",") + std::to_string(e.dimension());
  }
  if (out.pass)
    out.detail = "dimensions " + dims + (monotone ? " (non-increasing)" : " (not monotone, recorded)");
  return out;
}

Outcome criterion_pos_split() {
  Outcome out;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto space = gen_random_metric(3 + i % 12, 8000 + i);
    const Embedding emb = embed_c0(space, 2.0, make_provider(ProviderKind::generic, 2.0));
    const Embedding split = pos_split(emb);
    if (split.dimension() != 2 * emb.dimension() || split.lambda != 4.0)
      out.fail("shape or lambda wrong");
    for (const auto& col : split.columns)
      for (double v : col)
        if (v < 0.0) out.fail("negative entry");
    for (std::size_t x = 0; x < space.size(); ++x)
      for (std::size_t y = x + 1; y < space.size(); ++y) {
        const double ratio = split.distance(x, y) / emb.distance(x, y);
        if (ratio < 1.0 - 1e-12 || ratio > 2.0 + 1e-12) out.fail("ratio " + fmt(ratio));
      }
    audit_embedding(out, "split " + std::to_string(i), space, split, 4.0);
  }
  if (out.pass) out.detail = "20 embeddings split";
  return out;
}

Outcome criterion_witnesses() {
  Outcome out;
  for (const Witness& w : lower_bound_witnesses())
    if (!w.exact) out.fail(w.name + " p=" + fmt(w.p) + " = " + fmt(w.value));

  const auto space = gen_random_metric(8, 9000);
  Embedding emb = embed_c0(space, 2.0, make_provider(ProviderKind::generic, 2.0));
  if (!distortion_report(space, emb).pass) out.fail("unmutated embedding fails");
  emb.columns[0][0] += 10.0 * emb.lambda * space.diameter();
  if (distortion_report(space, emb).pass && check_block_bounds(space, emb).pass)
    out.fail("corrupted entry still verifies");
  if (out.pass) out.detail = "6 witness norms exact, mutation detected";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"universal c0 constant 2", criterion_universal_c0},
      {"lp constant 2^(1/p)", criterion_lp_constant},
      {"c0plus constant 3", criterion_c0plus_three},
      {"c0plus at lambda 1.2 with phi", criterion_c0plus_any_lambda},
      {"lp and positive lp into c0plus", criterion_lp_plus},
      {"ultrametric isometry", criterion_ultrametric},
      {"tree isometry", criterion_tree},
      {"separator properties", criterion_separators},
      {"cover contracts", criterion_covers},
      {"shifted axes stress and sweep", criterion_shifted_axes},
      {"pos_split", criterion_pos_split},
      {"optimality witnesses and mutation", criterion_witnesses},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] criterion %zu: %s (%s) [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
