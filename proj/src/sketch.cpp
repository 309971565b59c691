#include "rwstream/sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "rwstream/rng.hpp"

namespace rwstream {

namespace {
constexpr uint64_t kRankTag = 0x7a11;
constexpr uint64_t kFingerprintTag = 0xf1b5;
constexpr uint64_t kBucketTag = 0xb0c4;

uint64_t next_pow2(uint64_t x) {
  uint64_t p = 1;
  while (p < x) p <<= 1;
  return p;
}
}  // namespace

L1SamplerSketch::L1SamplerSketch(uint32_t domain, double fail_prob, uint64_t seed)
    : domain_(domain), seed_(seed) {
  if (domain == 0) throw std::invalid_argument("sampler domain must be >= 1");
  if (!(fail_prob > 0.0 && fail_prob < 1.0)) {
    throw std::invalid_argument("fail probability must lie in (0, 1)");
  }
  levels_ = static_cast<uint32_t>(std::bit_width(static_cast<uint64_t>(domain))) + 2;
  // One repetition isolates the minimum-rank survivor with constant
  // probability; amplify to the requested failure bound.
  repeats_ = static_cast<uint32_t>(std::ceil(1.5 * std::log2(1.0 / fail_prob))) + 2;
  cells_.assign(static_cast<size_t>(levels_) * repeats_, Cell{});
}

uint32_t L1SamplerSketch::level_cap(uint32_t repeat, uint32_t i) const {
  uint64_t h = mix64(derive_seed(seed_, kRankTag, repeat, i));
  auto lam = static_cast<uint32_t>(std::countl_zero(h));
  return std::min(lam, levels_ - 1);
}

uint64_t L1SamplerSketch::fingerprint_weight(uint32_t i) const {
  return mix64(derive_seed(seed_, kFingerprintTag, i));
}

void L1SamplerSketch::update(uint32_t i, int delta) {
  if (i >= domain_) throw std::invalid_argument("coordinate out of range");
  total_ += delta;
  const uint64_t fw = fingerprint_weight(i);
  for (uint32_t r = 0; r < repeats_; ++r) {
    const uint32_t top = level_cap(r, i);
    Cell* cell = cells_.data() + static_cast<size_t>(r) * levels_;
    for (uint32_t h = 0; h <= top; ++h, ++cell) {
      cell->count += delta;
      cell->index_weighted += static_cast<int64_t>(i) * delta;
      cell->fingerprint += static_cast<uint64_t>(static_cast<int64_t>(delta)) * fw;
    }
  }
}

std::optional<uint32_t> L1SamplerSketch::query() const {
  if (total_ == 0) return std::nullopt;
  for (uint32_t r = 0; r < repeats_; ++r) {
    const Cell* row = cells_.data() + static_cast<size_t>(r) * levels_;
    for (uint32_t h = levels_; h-- > 0;) {
      const Cell& c = row[h];
      if (c.count <= 0) continue;
      if (c.index_weighted % c.count != 0) continue;
      int64_t idx = c.index_weighted / c.count;
      if (idx < 0 || idx >= static_cast<int64_t>(domain_)) continue;
      auto i = static_cast<uint32_t>(idx);
      if (level_cap(r, i) < h) continue;
      if (c.fingerprint !=
          static_cast<uint64_t>(c.count) * fingerprint_weight(i)) {
        continue;
      }
      return i;
    }
  }
  return std::nullopt;
}

void L1SamplerSketch::merge(const L1SamplerSketch& other) {
  if (other.domain_ != domain_ || other.seed_ != seed_ ||
      other.levels_ != levels_ || other.repeats_ != repeats_) {
    throw std::invalid_argument("cannot merge sketches with different parameters");
  }
  for (size_t i = 0; i < cells_.size(); ++i) {
    cells_[i].count += other.cells_[i].count;
    cells_[i].index_weighted += other.cells_[i].index_weighted;
    cells_[i].fingerprint += other.cells_[i].fingerprint;
  }
  total_ += other.total_;
}

uint64_t L1SamplerSketch::state_digest() const {
  uint64_t d = mix64(total_);
  for (const Cell& c : cells_) {
    d = mix64(d ^ static_cast<uint64_t>(c.count));
    d = mix64(d ^ static_cast<uint64_t>(c.index_weighted));
    d = mix64(d ^ c.fingerprint);
  }
  return d;
}

HeavyHitterSketch::HeavyHitterSketch(uint64_t domain, uint64_t k,
                                     double fail_prob, uint64_t seed)
    : domain_(domain), k_(k), seed_(seed) {
  if (domain == 0) throw std::invalid_argument("heavy-hitter domain must be >= 1");
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  if (!(fail_prob > 0.0 && fail_prob < 1.0)) {
    throw std::invalid_argument("fail probability must lie in (0, 1)");
  }
  // Per-row miss probability for a light coordinate is <= 2k/width = 1/4;
  // rows_ rounds drive the whole-domain failure under fail_prob.
  rows_ = std::max<uint32_t>(
      1, static_cast<uint32_t>(std::ceil(
             std::log(static_cast<double>(domain) / fail_prob) / std::log(4.0))));
  width_ = next_pow2(std::min<uint64_t>(std::max<uint64_t>(8 * k, 16), 2 * domain));
  counters_.assign(static_cast<size_t>(rows_) * width_, 0);
}

size_t HeavyHitterSketch::bucket(uint32_t row, uint64_t i) const {
  return static_cast<size_t>(mix64(derive_seed(seed_, kBucketTag, row, i)) &
                             (width_ - 1));
}

void HeavyHitterSketch::update(uint64_t i, int delta) {
  if (i >= domain_) throw std::invalid_argument("coordinate out of range");
  total_ += delta;
  for (uint32_t r = 0; r < rows_; ++r) {
    counters_[static_cast<size_t>(r) * width_ + bucket(r, i)] += delta;
  }
}

int64_t HeavyHitterSketch::estimate(uint64_t i) const {
  int64_t est = INT64_MAX;
  for (uint32_t r = 0; r < rows_; ++r) {
    est = std::min(est, counters_[static_cast<size_t>(r) * width_ + bucket(r, i)]);
  }
  return est;
}

std::vector<uint64_t> HeavyHitterSketch::query() const {
  return query_range(0, domain_);
}

std::vector<uint64_t> HeavyHitterSketch::query_range(uint64_t lo, uint64_t hi) const {
  std::vector<uint64_t> out;
  if (total_ <= 0) return out;  // ||f||_1 = 0: nothing to report
  for (uint64_t i = lo; i < hi && i < domain_; ++i) {
    // estimate >= total/k, kept in exact integer arithmetic
    if (estimate(i) * static_cast<int64_t>(k_) >= total_) out.push_back(i);
  }
  return out;
}

void HeavyHitterSketch::merge(const HeavyHitterSketch& other) {
  if (other.domain_ != domain_ || other.k_ != k_ || other.seed_ != seed_ ||
      other.rows_ != rows_ || other.width_ != width_) {
    throw std::invalid_argument("cannot merge sketches with different parameters");
  }
  for (size_t i = 0; i < counters_.size(); ++i) counters_[i] += other.counters_[i];
  total_ += other.total_;
}

uint64_t HeavyHitterSketch::state_digest() const {
  uint64_t d = mix64(static_cast<uint64_t>(total_));
  for (int64_t c : counters_) d = mix64(d ^ static_cast<uint64_t>(c));
  return d;
}

}  // namespace rwstream
