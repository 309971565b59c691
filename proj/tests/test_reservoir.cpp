#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "rwstream/reservoir.hpp"
#include "support/stats.hpp"

using namespace rwstream;
using test_support::chi_square_critical_001;
using test_support::chi_square_stat;

TEST_SUITE("reservoir") {

TEST_CASE("single item fills every with-replacement slot") {
  ReservoirWithReplacement<int> r(3, 7);
  r.observe(42);
  CHECK(r.finish() == std::vector<int>{42, 42, 42});
}

TEST_CASE("one slot over a two-item stream is a fair coin") {
  const uint64_t trials = 100000;
  uint64_t first = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    ReservoirWithReplacement<int> r(1, derive_seed(0xbead, t));
    r.observe(0);
    r.observe(1);
    if (r.finish()[0] == 0) ++first;
  }
  std::vector<uint64_t> counts{first, trials - first};
  CHECK(chi_square_stat(counts, {0.5, 0.5}, trials) <= chi_square_critical_001(1));
}

TEST_CASE("two-of-three without replacement hits every subset at 1/3") {
  // Independent oracle: C(3,2) = 3 equally likely subsets.
  const uint64_t trials = 1000000;
  std::map<std::set<int>, uint64_t> freq;
  for (uint64_t t = 0; t < trials; ++t) {
    ReservoirWithoutReplacement<int> r(2, derive_seed(0xab01, t));
    r.observe(0);
    r.observe(1);
    r.observe(2);
    auto buf = r.finish();
    freq[{buf[0], buf[1]}] += 1;
  }
  REQUIRE(freq.size() == 3);
  std::vector<uint64_t> counts;
  for (const auto& [s, c] : freq) counts.push_back(c);
  CHECK(chi_square_stat(counts, {1.0 / 3, 1.0 / 3, 1.0 / 3}, trials) <=
        chi_square_critical_001(2));
}

TEST_CASE("finish semantics") {
  ReservoirWithReplacement<int> empty(4, 1);
  CHECK(empty.finish().empty());

  ReservoirWithReplacement<int> one(4, 1);
  one.observe(9);
  CHECK(one.finish() == std::vector<int>{9, 9, 9, 9});

  ReservoirWithoutReplacement<int> all(5, 3);
  for (int i = 0; i < 5; ++i) all.observe(i);
  auto buf = all.finish();
  CHECK(std::set<int>(buf.begin(), buf.end()) == std::set<int>{0, 1, 2, 3, 4});
}

TEST_CASE("with-replacement slots are mutually independent") {
  // Joint distribution over two slots for the stream (0, 1, 2) must
  // factorize: chi-square independence test on the 3x3 joint counts.
  const uint64_t trials = 1000000;
  uint64_t joint[3][3] = {};
  for (uint64_t t = 0; t < trials; ++t) {
    ReservoirWithReplacement<int> r(2, derive_seed(0x1de9, t));
    r.observe(0);
    r.observe(1);
    r.observe(2);
    auto items = r.finish();
    joint[items[0]][items[1]] += 1;
  }
  double marg0[3] = {};
  double marg1[3] = {};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      marg0[i] += joint[i][j];
      marg1[j] += joint[i][j];
    }
  }
  double stat = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double expect = marg0[i] * marg1[j] / static_cast<double>(trials);
      double diff = joint[i][j] - expect;
      stat += diff * diff / expect;
    }
  }
  CHECK(stat <= chi_square_critical_001(4));  // (3-1)*(3-1) df
}

TEST_CASE("same seed and stream reproduce the sample") {
  auto run = [](uint64_t seed) {
    ReservoirWithReplacement<int> r(5, seed);
    for (int i = 0; i < 50; ++i) r.observe(i);
    return r.finish();
  };
  CHECK(run(123) == run(123));
  CHECK(run(123) != run(124));
}

TEST_CASE("buffer never exceeds capacity") {
  ReservoirWithoutReplacement<int> r(3, 5);
  for (int i = 0; i < 100; ++i) {
    r.observe(i);
    CHECK(r.buffer().size() == std::min<size_t>(3, i + 1));
  }
  ReservoirWithReplacement<int> wr(6, 5);
  for (int i = 0; i < 100; ++i) wr.observe(i);
  CHECK(wr.slot_count() == 6);
  CHECK(wr.finish().size() == 6);
}

}  // TEST_SUITE
