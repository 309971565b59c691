#include <doctest.h>

#include <algorithm>
#include <vector>

#include "rwstream/rng.hpp"
#include "rwstream/sketch.hpp"
#include "support/stats.hpp"

using namespace rwstream;
using test_support::chi_square_critical_001;
using test_support::chi_square_stat;

TEST_SUITE("sketch") {

TEST_CASE("insert plus delete cancels to the zero vector") {
  L1SamplerSketch s(16, 0.01, 5);
  s.update(3, +1);
  s.update(3, -1);
  CHECK_FALSE(s.query().has_value());

  HeavyHitterSketch hh(16, 2, 0.01, 5);
  hh.update(3, +1);
  hh.update(3, -1);
  CHECK(hh.query().empty());
}

TEST_CASE("a point mass is always recovered") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    L1SamplerSketch s(64, 0.05, seed);
    s.update(17, +1);
    auto got = s.query();
    REQUIRE(got.has_value());
    CHECK(*got == 17);
  }
  HeavyHitterSketch hh(64, 2, 0.01, 9);
  hh.update(17, +1);
  CHECK(hh.query() == std::vector<uint64_t>{17});
}

TEST_CASE("sampler output is uniform over a 0/1 support") {
  const uint32_t support[] = {2, 11, 23, 40, 57};
  const uint64_t trials = 40000;
  std::vector<uint64_t> counts(5, 0);
  uint64_t fails = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    L1SamplerSketch s(64, 0.01, derive_seed(0x11a, t));
    for (uint32_t i : support) s.update(i, +1);
    // churn on coordinates outside the support
    s.update(5, +1);
    s.update(5, -1);
    auto got = s.query();
    if (!got) {
      ++fails;
      continue;
    }
    auto it = std::find(std::begin(support), std::end(support), *got);
    REQUIRE(it != std::end(support));
    counts[it - std::begin(support)] += 1;
  }
  CHECK(static_cast<double>(fails) / trials <= 0.01);
  CHECK(chi_square_stat(counts, std::vector<double>(5, 0.2), trials - fails) <=
        chi_square_critical_001(4));
}

TEST_CASE("sampler fail rate respects the configured bound") {
  // Wider support exercises the level isolation logic.
  const uint64_t trials = 20000;
  uint64_t fails = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    L1SamplerSketch s(128, 0.02, derive_seed(0xfa, t));
    for (uint32_t i = 0; i < 128; i += 4) s.update(i, +1);  // 32 coordinates
    if (!s.query()) ++fails;
  }
  // 3-sigma slack on top of the nominal bound.
  double bound = 0.02 + 3.0 * std::sqrt(0.02 * 0.98 / trials);
  CHECK(static_cast<double>(fails) / trials <= bound);
}

TEST_CASE("heavy hitter separates heavy from light mass") {
  // 64-dim vector: one coordinate with mass 12, eleven with mass 1.
  // ||f||_1 = 23, k = 2: must report mass >= 11.5, must drop mass <= 5.75.
  HeavyHitterSketch hh(64, 2, 0.001, 31);
  for (int rep = 0; rep < 12; ++rep) hh.update(7, +1);
  for (uint32_t i = 20; i < 31; ++i) hh.update(i, +1);
  auto got = hh.query();
  CHECK(got == std::vector<uint64_t>{7});
  CHECK(hh.estimate(7) >= 12);
}

TEST_CASE("heavy hitter in/out contract over seeded trials") {
  // f in {0,1}^64 with popcount sweeping through both guarantee regimes.
  const uint64_t trials = 2000;
  const uint64_t k = 4;
  const double fail = 0.01;
  uint64_t ok = 0;
  const uint32_t pops[] = {0, 1, 2, 4, 6, 8, 16, 32, 64};
  for (uint64_t t = 0; t < trials; ++t) {
    uint32_t pop = pops[t % (sizeof(pops) / sizeof(pops[0]))];
    SplitMix64 rng(derive_seed(0x131, t));
    std::vector<uint8_t> f(64, 0);
    for (uint32_t placed = 0; placed < pop;) {
      auto i = static_cast<uint32_t>(uniform_below(rng, 64));
      if (!f[i]) {
        f[i] = 1;
        ++placed;
      }
    }
    HeavyHitterSketch hh(64, k, fail, derive_seed(0x132, t));
    for (uint32_t i = 0; i < 64; ++i) {
      if (f[i]) hh.update(i, +1);
    }
    auto got = hh.query();
    bool good = true;
    for (uint32_t i = 0; i < 64; ++i) {
      bool in = std::binary_search(got.begin(), got.end(), i);
      if (f[i] && pop <= k && !in) good = false;        // mass >= ||f||/k
      if (f[i] && pop >= 2 * k && in) good = false;     // mass <= ||f||/2k
      if (!f[i] && in) good = false;                    // zero coordinates
    }
    if (good) ++ok;
  }
  CHECK(static_cast<double>(ok) / trials >= 1.0 - fail);
}

TEST_CASE("sketch state is linear: permutation invariance") {
  std::vector<std::pair<uint32_t, int>> updates{
      {1, +1}, {5, +1}, {1, -1}, {9, +1}, {5, +1}, {9, -1}, {3, +1}};
  auto digest_for = [&](const std::vector<size_t>& order) {
    L1SamplerSketch s(16, 0.01, 77);
    HeavyHitterSketch hh(16, 2, 0.01, 78);
    for (size_t i : order) {
      s.update(updates[i].first, updates[i].second);
      hh.update(updates[i].first, updates[i].second);
    }
    return std::make_pair(s.state_digest(), hh.state_digest());
  };
  std::vector<size_t> order{0, 1, 2, 3, 4, 5, 6};
  auto base = digest_for(order);
  std::reverse(order.begin(), order.end());
  CHECK(digest_for(order) == base);
  std::swap(order[0], order[3]);
  CHECK(digest_for(order) == base);
}

TEST_CASE("equal-seed sketches merge into the single-stream state") {
  L1SamplerSketch whole(32, 0.01, 5);
  L1SamplerSketch part_a(32, 0.01, 5);
  L1SamplerSketch part_b(32, 0.01, 5);
  HeavyHitterSketch hwhole(32, 2, 0.01, 6);
  HeavyHitterSketch ha(32, 2, 0.01, 6);
  HeavyHitterSketch hb(32, 2, 0.01, 6);
  for (uint32_t i = 0; i < 20; ++i) {
    whole.update(i % 7, +1);
    hwhole.update(i % 7, +1);
    if (i % 2 == 0) {
      part_a.update(i % 7, +1);
      ha.update(i % 7, +1);
    } else {
      part_b.update(i % 7, +1);
      hb.update(i % 7, +1);
    }
  }
  part_a.merge(part_b);
  ha.merge(hb);
  CHECK(part_a.state_digest() == whole.state_digest());
  CHECK(ha.state_digest() == hwhole.state_digest());

  L1SamplerSketch other(32, 0.01, 99);
  CHECK_THROWS_AS(whole.merge(other), std::invalid_argument);
}

TEST_CASE("word counts are positive and parameter-driven") {
  L1SamplerSketch small(8, 0.05, 1);
  L1SamplerSketch strict(8, 1e-6, 1);
  CHECK(small.word_count() > 0);
  CHECK(strict.word_count() > small.word_count());
  HeavyHitterSketch hh(1024, 16, 0.01, 1);
  CHECK(hh.word_count() > 0);
}

}  // TEST_SUITE
