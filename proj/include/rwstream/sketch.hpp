#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace rwstream {

// Linear sketch that samples a coordinate of the net update vector f with
// probability |f_j| / ||f||_1, or FAILs with probability <= fail_prob.
// Construction: geometric level sampling by hashed rank, a 1-sparse recovery
// register per level (count, index-weighted count, random-linear
// fingerprint), and independent repetitions. Any level holding exactly one
// surviving coordinate identifies the minimum-rank support element, which is
// uniform over the support; for the simple-graph vectors used here (final
// entries 0/1) that is exactly l1 sampling.
class L1SamplerSketch {
 public:
  L1SamplerSketch(uint32_t domain, double fail_prob, uint64_t seed);

  void update(uint32_t i, int delta);
  std::optional<uint32_t> query() const;  // nullopt = FAIL
  void merge(const L1SamplerSketch& other);

  uint32_t domain() const { return domain_; }
  uint64_t word_count() const { return cells_.size() * 3 + 1; }
  uint64_t state_digest() const;

 private:
  struct Cell {
    int64_t count = 0;
    int64_t index_weighted = 0;
    uint64_t fingerprint = 0;
  };

  uint32_t level_cap(uint32_t repeat, uint32_t i) const;
  uint64_t fingerprint_weight(uint32_t i) const;

  uint32_t domain_ = 0;
  uint32_t levels_ = 0;
  uint32_t repeats_ = 0;
  uint64_t seed_ = 0;
  std::vector<Cell> cells_;  // repeats x levels
  int64_t total_ = 0;
};

// Count-min based heavy hitter over a turnstile stream whose net vector is
// entrywise non-negative at query time. query() returns every coordinate
// with estimate >= ||f||_1 / k; coordinates with true mass >= ||f||_1 / k are
// always returned, coordinates with mass <= ||f||_1 / 2k escape with
// probability >= 1 - fail_prob (over the whole domain).
class HeavyHitterSketch {
 public:
  HeavyHitterSketch(uint64_t domain, uint64_t k, double fail_prob, uint64_t seed);

  void update(uint64_t i, int delta);
  int64_t estimate(uint64_t i) const;
  std::vector<uint64_t> query() const;
  std::vector<uint64_t> query_range(uint64_t lo, uint64_t hi) const;
  void merge(const HeavyHitterSketch& other);

  int64_t total() const { return total_; }
  uint64_t word_count() const { return counters_.size() + 1; }
  uint64_t state_digest() const;

 private:
  size_t bucket(uint32_t row, uint64_t i) const;

  uint64_t domain_ = 0;
  uint64_t k_ = 0;
  uint32_t rows_ = 0;
  uint64_t width_ = 0;  // power of two
  uint64_t seed_ = 0;
  std::vector<int64_t> counters_;  // rows x width
  int64_t total_ = 0;
};

}  // namespace rwstream
