#include <doctest.h>

#include <algorithm>

#include "rwstream/errors.hpp"
#include "rwstream/instances.hpp"
#include "rwstream/oracle.hpp"
#include "rwstream/turnstile.hpp"
#include "support/stats.hpp"

using namespace rwstream;

namespace {

EdgeStream turnstile_of(const DirectedGraph& g) {
  return EdgeStream::from_graph(g, EdgeOrder::AsGiven).as_turnstile();
}

TurnstileConfig config(uint32_t steps, double delta, uint32_t c1, uint64_t seed) {
  TurnstileConfig cfg;
  cfg.base = TwoPassConfig{steps, delta, c1, 8, seed};
  return cfg;
}

}  // namespace

TEST_SUITE("turnstile") {

TEST_CASE("cycle fed as insertions walks deterministically") {
  auto ts = turnstile_of(gen_cycle(3));
  auto res = run_turnstile_pipeline(ts, 0, config(4, 0.25, 2, 3));
  REQUIRE(res.walk.has_value());
  CHECK(*res.walk == Walk{0, 1, 2, 0, 1});
  CHECK(res.report.pass_count == 2);
}

TEST_CASE("deleted edges never appear in any list") {
  // insert (0,1), delete it again, then insert (0,2); plus a back edge so
  // nothing dead-ends.
  std::vector<EdgeUpdate> updates{
      {{0, 1}, true}, {{1, 0}, true}, {{0, 1}, false},
      {{0, 2}, true}, {{2, 0}, true},
  };
  auto ts = EdgeStream::from_updates(3, updates);
  for (uint64_t r = 0; r < 50; ++r) {
    auto pre = turnstile_preprocess(ts, config(4, 0.25, 2, derive_seed(0xde1, r)));
    for (uint32_t v = 0; v < 3; ++v) {
      for (uint32_t entry : pre.table.lists[v]) {
        CHECK(!(v == 0 && entry == 1));
      }
    }
    CHECK(std::find(pre.table.lists[0].begin(), pre.table.lists[0].end(), 1u) ==
          pre.table.lists[0].end());
  }
}

TEST_CASE("sampled entries are uniform over the live out-neighbors") {
  // Vertex 0 keeps out-neighbors {2, 4, 6, 7} after one insert/delete churn.
  // Vertices 1..7 form their own cycle, so no walk ever returns to 0 and it
  // stays light (sampled mode).
  DirectedGraph g(8);
  for (uint32_t v : {2u, 4u, 6u, 7u}) g.add_edge(0, v);
  for (uint32_t v = 1; v < 8; ++v) g.add_edge(v, v % 7 + 1);
  std::vector<EdgeUpdate> updates;
  updates.push_back({{0, 3}, true});  // later removed
  for (const Edge& e : g.edges()) updates.push_back({e, true});
  updates.push_back({{0, 3}, false});
  auto ts = EdgeStream::from_updates(8, updates);

  std::vector<uint64_t> counts(4, 0);
  const uint32_t runs = 1500;
  uint64_t draws = 0;
  for (uint64_t r = 0; r < runs; ++r) {
    auto pre = turnstile_preprocess(ts, config(4, 0.25, 4, derive_seed(0x44, r)));
    REQUIRE_FALSE(pre.estimate.heavy[0]);
    for (uint32_t entry : pre.table.lists[0]) {
      switch (entry) {
        case 2: counts[0] += 1; break;
        case 4: counts[1] += 1; break;
        case 6: counts[2] += 1; break;
        case 7: counts[3] += 1; break;
        default: FAIL("unexpected entry ", entry);
      }
      ++draws;
    }
  }
  CHECK(draws == runs * 16ull);  // gamma*ell = 16 entries per run
  CHECK(test_support::chi_square_stat(counts, std::vector<double>(4, 0.25),
                                      draws) <=
        test_support::chi_square_critical_001(3));
}

TEST_CASE("heavy vertices get exact full neighborhoods back") {
  auto g = gen_star(9);
  auto ts = turnstile_of(g);
  auto pre = turnstile_preprocess(ts, config(16, 0.1, 8, 5));
  REQUIRE(pre.estimate.heavy[0]);
  CHECK(pre.table.full[0]);
  std::vector<uint32_t> want;
  for (uint32_t v = 1; v < 9; ++v) want.push_back(v);
  CHECK(pre.table.lists[0] == want);
}

TEST_CASE("pipeline matches the exact walk law on a small graph") {
  // Two out-edges per vertex; support of the 2-step law has 4 walks.
  DirectedGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 0);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  g.add_edge(2, 1);
  auto ts = turnstile_of(g);
  auto exact = exact_walk_distribution(g, 0, 2);
  WalkSample sample;
  uint64_t sketch_failures = 0;
  const uint64_t trials = 4000;
  for (uint64_t t = 0; t < trials; ++t) {
    try {
      auto res =
          run_turnstile_pipeline(ts, 0, config(2, 0.25, 4, derive_seed(0x7e, t)));
      REQUIRE(res.walk.has_value());
      sample.add(*res.walk);
    } catch (const SketchFailure&) {
      // Within the per-run sketch budget; counts as a failed draw.
      sample.add_failure();
      ++sketch_failures;
    }
  }
  CHECK(static_cast<double>(sketch_failures) / trials <= 0.02);
  auto tv = tv_distance(exact, sample);
  CHECK(tv.estimate <= 0.1);  // noise floor ~0.02 at 4e3 draws
}

TEST_CASE("preprocess needs a turnstile stream and two replays") {
  auto plain = EdgeStream::from_graph(gen_cycle(3), EdgeOrder::AsGiven);
  CHECK_THROWS_AS(turnstile_preprocess(plain, config(4, 0.25, 2, 1)),
                  std::invalid_argument);
  auto ts = plain.as_turnstile();
  CHECK(ts.pass_count() == 0);
  turnstile_preprocess(ts, config(4, 0.25, 2, 1));
  CHECK(ts.pass_count() == 2);
}

TEST_CASE("forced sampler failure surfaces as SketchFailure") {
  // A huge per-sketch failure probability starves the sampler of repeats;
  // a multi-neighbor vertex then fails often across seeds.
  DirectedGraph g(6);
  for (uint32_t v = 1; v < 6; ++v) {
    g.add_edge(0, v);
    g.add_edge(v, 0);
  }
  auto ts = turnstile_of(g);
  uint32_t failures = 0;
  for (uint64_t r = 0; r < 40; ++r) {
    auto cfg = config(4, 0.25, 2, derive_seed(0xbad, r));
    cfg.sampler_fail_prob = 0.49;
    try {
      turnstile_preprocess(ts, cfg);
    } catch (const SketchFailure& e) {
      CHECK(e.vertex < 6);
      ++failures;
    }
  }
  CHECK(failures > 0);
}

TEST_CASE("dead-end vertices come back as empty lists, not failures") {
  DirectedGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 0);  // vertex 2 has no out-edges
  auto ts = turnstile_of(g);
  auto pre = turnstile_preprocess(ts, config(4, 0.25, 2, 9));
  CHECK(pre.table.lists[2].empty());
}

TEST_CASE("space report counts sketch words") {
  auto ts = turnstile_of(gen_cycle(4));
  auto pre = turnstile_preprocess(ts, config(4, 0.25, 2, 9));
  // Far more than the list words alone: counters dominate.
  CHECK(pre.report.pass1_peak_words > 4 * pre.report.ell * pre.report.gamma);
  CHECK(pre.report.pass2_peak_words > pre.table.stored_words);
  CHECK(pre.report.operated_correctly);
}

}  // TEST_SUITE
