#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "c0forge/audit.hpp"
#include "c0forge/error.hpp"
#include "c0forge/exact.hpp"
#include "c0forge/generators.hpp"

using namespace c0forge;

namespace {

double coordinate(const UltrametricEmbedding& um, const std::vector<double>& prefix, std::size_t x) {
  for (std::size_t c = 0; c < um.index.size(); ++c)
    if (um.index[c].prefix == prefix) return um.embedding.columns[c][x];
  return 0.0;
}

}  // namespace

TEST_CASE("ultrametric three point example") {
  const auto s = validate_metric({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}});
  const auto um = embed_ultrametric(s);
  CHECK(coordinate(um, {1}, 1) == 1);
  CHECK(coordinate(um, {1}, 0) == 0);
  CHECK(coordinate(um, {2}, 2) == 2);
  CHECK(coordinate(um, {2}, 0) == 0);
  CHECK(um.embedding.distance(0, 1) == 1);
  CHECK(um.embedding.distance(0, 2) == 2);
  CHECK(um.embedding.distance(1, 2) == 2);
  CHECK(um.embedding.target == Target::c0plus);
}

TEST_CASE("ultrametric edge cases") {
  CHECK(embed_ultrametric(validate_metric({{0}})).embedding.dimension() == 0);
  std::vector<std::vector<double>> eq(5, std::vector<double>(5, 2.5));
  for (int i = 0; i < 5; ++i) eq[i][i] = 0;
  const auto s = validate_metric(eq);
  const auto um = embed_ultrametric(s);
  for (std::size_t x = 0; x < 5; ++x)
    for (std::size_t y = x + 1; y < 5; ++y) CHECK(um.embedding.distance(x, y) == 2.5);
  try {
    embed_ultrametric(validate_metric({{0, 1, 2}, {1, 0, 2.5}, {2, 2.5, 0}}));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUltrametric);
  }
}

TEST_CASE("random ultrametrics embed exactly") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = gen_random_ultrametric(2 + seed * 3, seed);
    const auto um = embed_ultrametric(s);
    const DistortionReport r = distortion_report(s, um.embedding, 0.0);
    CHECK(r.pass);
    CHECK(r.min_ratio == 1.0);
    CHECK(r.max_ratio == 1.0);
    CHECK(r.nonneg);
    for (std::size_t x = 0; x < s.size(); ++x) {
      std::size_t support = 0;
      for (const auto& col : um.embedding.columns) support += col[x] != 0.0;
      CHECK(support <= s.size());
    }
  }
}

TEST_CASE("tree examples") {
  const auto te = embed_tree(TreeNodeSet{{{}, {1}, {2}}});
  REQUIRE(te.index.size() == 2);
  CHECK(te.index[0].node.empty());
  CHECK(te.index[0].n == 1);
  CHECK(te.embedding.columns[0] == std::vector<double>{0, 1, -1});
  CHECK(te.embedding.distance(1, 2) == 2);
  CHECK(te.embedding.distance(1, 1) == 0);

  const auto chain = embed_tree(TreeNodeSet{{{}, {1}, {1, 2}}});
  CHECK(chain.space(0, 2) == 2);
  CHECK(chain.embedding.columns[0][2] == 2);
  CHECK(chain.embedding.distance(0, 2) == 2);
  CHECK_THROWS_AS(embed_tree(TreeNodeSet{{{}, {1, 2}}}), Error);
}

TEST_CASE("random and full trees embed exactly") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto te = embed_tree(gen_random_tree(5 + seed * 15, seed));
    CHECK(distortion_report(te.space, te.embedding, 0.0).pass);
  }
  const auto full = embed_tree(gen_full_tree(3, 3));
  CHECK(distortion_report(full.space, full.embedding, 0.0).pass);
}
