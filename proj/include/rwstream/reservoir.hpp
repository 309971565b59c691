#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "rwstream/rng.hpp"

namespace rwstream {

// m independent single-slot reservoirs = m uniform samples with replacement
// from a stream of unknown length, in m words. Slot i replaces its item with
// probability 1/t on the t-th observation, driven by its own substream
// derived from (seed, i), so slots are mutually independent and runs are
// reproducible.
template <typename T>
class ReservoirWithReplacement {
 public:
  ReservoirWithReplacement(size_t slot_count, uint64_t seed) {
    slots_.reserve(slot_count);
    for (size_t i = 0; i < slot_count; ++i) {
      slots_.push_back(Slot{T{}, SplitMix64(derive_seed(seed, i))});
    }
  }

  void observe(const T& item) {
    ++seen_;
    if (seen_ == 1) {
      for (Slot& s : slots_) s.item = item;
      return;
    }
    for (Slot& s : slots_) {
      if (uniform_below(s.rng, seen_) == 0) s.item = item;
    }
  }

  uint64_t seen() const { return seen_; }
  size_t slot_count() const { return slots_.size(); }

  // Empty if nothing was observed, otherwise one item per slot.
  std::vector<T> finish() const {
    std::vector<T> out;
    if (seen_ == 0) return out;
    out.reserve(slots_.size());
    for (const Slot& s : slots_) out.push_back(s.item);
    return out;
  }

 private:
  struct Slot {
    T item;
    SplitMix64 rng;
  };
  std::vector<Slot> slots_;
  uint64_t seen_ = 0;
};

// Vitter's algorithm R: a uniform m-subset of the stream in m words.
template <typename T>
class ReservoirWithoutReplacement {
 public:
  ReservoirWithoutReplacement(size_t capacity, uint64_t seed)
      : capacity_(capacity), rng_(derive_seed(seed, 0x5e1ec7)) {
    buffer_.reserve(capacity);
  }

  void observe(const T& item) {
    ++seen_;
    if (buffer_.size() < capacity_) {
      buffer_.push_back(item);
      return;
    }
    uint64_t j = uniform_below(rng_, seen_);
    if (j < capacity_) buffer_[j] = item;
  }

  uint64_t seen() const { return seen_; }
  size_t capacity() const { return capacity_; }
  const std::vector<T>& buffer() const {
    assert(buffer_.size() == std::min<uint64_t>(capacity_, seen_));
    return buffer_;
  }
  std::vector<T> finish() const { return buffer_; }

 private:
  size_t capacity_;
  std::vector<T> buffer_;
  SplitMix64 rng_;
  uint64_t seen_ = 0;
};

}  // namespace rwstream
