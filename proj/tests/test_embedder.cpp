#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "c0forge/audit.hpp"
#include "c0forge/embedder.hpp"
#include "c0forge/error.hpp"
#include "c0forge/generators.hpp"
#include "line.hpp"

using namespace c0forge;

namespace {

void check_bounds(const FiniteMetricSpace& s, const Embedding& e, double lambda) {
  const DistortionReport r = distortion_report(s, e);
  CHECK(r.pass);
  CHECK(r.min_ratio > 1.0 - 1e-9);
  CHECK(r.max_ratio <= lambda * (1.0 + 1e-9));
  CHECK(r.column_lipschitz <= lambda * (1.0 + 1e-12));
  CHECK(check_block_bounds(s, e).pass);
}

const ProviderSpec kGeneric = make_provider(ProviderKind::generic, 2.0);

}  // namespace

TEST_CASE("single point and two point spaces") {
  const auto one = validate_metric({{0}});
  CHECK(embed_c0(one, 2.0, kGeneric).dimension() == 0);
  CHECK(embed_c0_plus(one, 3.0, make_provider(ProviderKind::generic_plus, 3.0)).dimension() == 0);

  const auto two = line_space({0, 5});
  const Embedding e = embed_c0(two, 2.0, kGeneric);
  CHECK(e.dimension() > 0);
  check_bounds(two, e, 2.0);
}

TEST_CASE("line 0 1 3 at lambda 2 with block metadata") {
  const auto s = line_space({0, 1, 3});
  const Embedding e = embed_c0(s, 2.0, kGeneric);
  check_bounds(s, e, 2.0);
  REQUIRE_FALSE(e.blocks.empty());
  CHECK(e.blocks.front().eps == 3);
  CHECK(e.blocks.front().F == PointSet{0});
  CHECK(e.blocks.back().col_end == e.dimension());
}

TEST_CASE("schedule shape and capture uniqueness") {
  const auto s = gen_random_metric(7, 21);
  const BlockSchedule sched = make_schedule(s, 2.0, CoverMode::pi);
  CHECK(sched.blocks() >= s.size() - 1);
  CHECK(sched.eps.back() <= s.min_distance());
  CHECK((sched.blocks() == s.size() - 1 || sched.eps[sched.blocks() - 1] > s.min_distance()));
  CHECK(sched.prefix(100).size() == s.size());
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = x + 1; y < s.size(); ++y) {
      CHECK(capturing_blocks(s, sched, 2.0, CoverMode::pi, x, y).size() == 1);
      CHECK(capturing_blocks(s, sched, 3.0, CoverMode::pi_plus, x, y).size() == 1);
    }
  const BlockSchedule far = make_schedule(s, 2.0, CoverMode::pi, nullptr, PointOrder::farthest_first);
  CHECK(make_point_set(far.order) == all_points(s.size()));
  CHECK(far.order.front() == 0);
}

TEST_CASE("schedule errors") {
  const auto s = line_space({0, 1e-30, 1});
  CHECK_THROWS_AS(make_schedule(s, 2.0, CoverMode::pi), Error);
  const auto t = line_space({0, 1, 3});
  BlockSchedule bad = make_schedule(t, 2.0, CoverMode::pi);
  bad.eps.back() = 5;
  CHECK_THROWS_AS(validate_schedule(t, 2.0, CoverMode::pi, bad), Error);
  EmbedOptions opts;
  opts.schedule = bad;
  CHECK_THROWS_AS(embed_c0(t, 2.0, kGeneric, opts), Error);
}

TEST_CASE("block functions separate the window") {
  const auto two = line_space({0, 5});
  const BlockSpec empty{{0, 1}, {0, 1}, 6.0, 8.0};
  CHECK_FALSE(in_block_window(two, 2.0, CoverMode::pi, empty, 0, 1));
  CHECK(block_functions(two, 2.0, empty, kGeneric).empty());
  const BlockSpec first{{0}, {0, 1}, 2.5, 5.5};
  CHECK(in_block_window(two, 2.0, CoverMode::pi, first, 0, 1));

  const auto s = gen_random_metric(6, 8);
  const BlockSchedule sched = make_schedule(s, 2.0, CoverMode::pi);
  for (std::size_t k = 1; k <= sched.blocks(); ++k) {
    const BlockSpec b{sched.prefix(k), sched.prefix(k + 1), sched.eps[k], sched.eps[k - 1]};
    const auto fs = block_functions(s, 2.0, b, kGeneric);
    for (std::size_t x = 0; x < s.size(); ++x)
      for (std::size_t y = x + 1; y < s.size(); ++y) {
        if (!in_block_window(s, 2.0, CoverMode::pi, b, x, y)) continue;
        double best = 0.0;
        for (const auto& f : fs) best = std::max(best, std::fabs(f.values[x] - f.values[y]));
        CHECK(best > s(x, y));
      }
    for (const auto& f : fs)
      for (std::size_t x : b.F) CHECK(std::fabs(f.values[x]) <= 2.0 * b.beta * (1 + 1e-9) + 1e-12);
  }
}

TEST_CASE("block functions on a two point space with G = F = M") {
  const auto two = line_space({0, 5});
  const BlockSpec block{{0, 1}, {0, 1}, 4.0, 8.0};
  CHECK(in_block_window(two, 2.0, CoverMode::pi, block, 0, 1));
  const auto fs = block_functions(two, 2.0, block, kGeneric);
  REQUIRE_FALSE(fs.empty());
  double best = 0.0;
  for (const auto& f : fs) best = std::max(best, std::fabs(f.values[0] - f.values[1]));
  CHECK(best > 5.0);
}

TEST_CASE("plus blocks") {
  const auto two = line_space({0, 5});
  const ProviderSpec gp = make_provider(ProviderKind::generic_plus, 3.0);
  const BlockSpec block{{0, 1}, {0, 1}, 4.0, 8.0};
  const auto fs = block_functions_plus(two, 3.0, block, gp);
  double best = 0.0;
  for (const auto& f : fs) best = std::max(best, std::fabs(f.values[0] - f.values[1]));
  CHECK(best > 5.0);

  const auto s = gen_random_metric(5, 33);
  const PhiFunction phi = phi_net(s, 1.5);
  const ProviderSpec np = make_provider(ProviderKind::net_plus, 1.5);
  const BlockSchedule sched = make_schedule(s, 1.5, CoverMode::pi_plus, &phi);
  for (std::size_t k = 1; k <= sched.blocks(); ++k) {
    const BlockSpec b{sched.prefix(k), sched.prefix(k + 1), sched.eps[k], sched.eps[k - 1]};
    for (const auto& f : block_functions_plus(s, 1.5, b, np, &phi)) {
      for (double v : f.values) CHECK(v >= 0.0);
      for (std::size_t x : b.F) CHECK(f.values[x] <= 1.5 * b.beta * (1 + 1e-9) + 1e-12);
    }
  }
  try {
    block_functions_plus(s, 1.5, {{0}, {0, 1}, 1.0, 2.0}, np);
    FAIL("missing phi accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PhiMissing);
  }
}

TEST_CASE("provider and lambda mismatches") {
  const auto s = line_space({0, 1, 3});
  CHECK_THROWS_AS(embed_c0(s, 2.0, make_provider(ProviderKind::generic_plus, 3.0)), Error);
  CHECK_THROWS_AS(embed_c0(s, 2.5, kGeneric), Error);
  CHECK_THROWS_AS(embed_c0(s, 1.0, make_provider(ProviderKind::net, 1.5)), Error);
  try {
    embed_c0_plus(s, 1.5, make_provider(ProviderKind::net_plus, 1.5));
    FAIL("missing phi accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PhiMissing);
  }
}

TEST_CASE("embeddings across engines") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto s = gen_random_metric(8, 50 + seed);
    check_bounds(s, embed_c0(s, 2.0, kGeneric), 2.0);
    check_bounds(s, embed_c0(s, 1.3, make_provider(ProviderKind::net, 1.3)), 1.3);
    const Embedding p = embed_c0_plus(s, 3.0, make_provider(ProviderKind::generic_plus, 3.0));
    check_bounds(s, p, 3.0);
    CHECK(distortion_report(s, p).nonneg);
    const PhiFunction phi = phi_net(s, 1.2);
    check_bounds(s, embed_c0_plus(s, 1.2, make_provider(ProviderKind::net_plus, 1.2), &phi), 1.2);
  }
}

TEST_CASE("threads do not change the result") {
  const auto s = gen_random_metric(12, 77);
  EmbedOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const Embedding a = embed_c0(s, 2.0, kGeneric, one);
  const Embedding b = embed_c0(s, 2.0, kGeneric, many);
  CHECK(a.columns == b.columns);
  CHECK(a.blocks.size() == b.blocks.size());
}

TEST_CASE("pos_split arithmetic") {
  Embedding e;
  e.points = 2;
  e.lambda = 2.0;
  e.columns = {{1.0, 0.0}, {-1.0, 0.0}};
  const Embedding s = pos_split(e);
  CHECK(s.dimension() == 4);
  CHECK(s.lambda == 4.0);
  CHECK(s.target == Target::c0plus);
  CHECK(e.distance(0, 1) == 1.0);
  CHECK(s.distance(0, 1) == 2.0);
  CHECK(s.distance(0, 0) == 0.0);

  Embedding f;
  f.points = 2;
  f.columns = {{1.0, -1.0}};
  const Embedding g = pos_split(f);
  CHECK(g.columns[0] == std::vector<double>{2.0, 0.0});
  CHECK(g.columns[1] == std::vector<double>{0.0, 2.0});
  CHECK(g.distance(0, 1) == 2.0);
  CHECK_THROWS_AS(pos_split(g), Error);
}

TEST_CASE("prune") {
  const auto two = line_space({0, 1});
  Embedding e;
  e.points = 2;
  e.lambda = 2.0;
  e.columns = {{0.0, 1.5}, {0.0, 1.5}};
  e.blocks = {{1, 0, 2, {0}, 1.0}};
  const Embedding p = prune(two, e);
  CHECK(p.dimension() == 1);
  CHECK(p.blocks[0].col_end == 1);
  CHECK(prune(two, p).columns == p.columns);

  const auto s = gen_random_metric(8, 99);
  const Embedding full = embed_c0(s, 2.0, kGeneric);
  const Embedding pruned = prune(s, full);
  CHECK(pruned.dimension() <= full.dimension());
  check_bounds(s, pruned, 2.0);
}
