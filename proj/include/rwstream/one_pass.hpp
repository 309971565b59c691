#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rwstream/neighbor_table.hpp"
#include "rwstream/rng.hpp"
#include "rwstream/stream.hpp"

namespace rwstream {

struct SamplerConfig {
  uint32_t tau = 1;         // samples per vertex outside v_full
  uint32_t cap_factor = 8;  // c2 in the word budget c2 * tau * n
  uint64_t seed = 0;
};

// Incremental form of the one-pass preprocessing: vertices in v_full record
// every out-neighbor in arrival order, the rest keep tau with-replacement
// reservoir samples. Once the candidate word count would exceed
// cap_factor * tau * n, recording stops and the table is flagged as having
// operated incorrectly; lists stored so far are kept.
class PreprocessState {
 public:
  PreprocessState(uint32_t n, std::vector<uint8_t> v_full, SamplerConfig cfg);

  void feed(uint32_t from, uint32_t to);
  NeighborTable finish() const;
  uint64_t candidate_words() const { return candidate_words_; }
  bool operating_correctly() const { return operating_; }

 private:
  struct Slot {
    uint32_t item;
    SplitMix64 rng;
  };

  uint32_t n_;
  SamplerConfig cfg_;
  uint64_t cap_;
  bool operating_ = true;
  uint64_t candidate_words_ = 0;
  std::vector<uint8_t> full_;
  std::vector<std::vector<uint32_t>> full_lists_;
  std::vector<uint64_t> seen_;                // per-vertex out-edges observed
  std::vector<size_t> slot_offset_;           // into the flat slot arena
  std::vector<Slot> slots_;
};

// Single pass over an insertion-only stream; starting-vertex oblivious by
// construction (the walk start is not a parameter).
NeighborTable preprocess(EdgeStream::Replay replay,
                         const std::vector<uint8_t>& v_full,
                         const SamplerConfig& cfg);

// Walk replay per the sampling phase: full vertices hand out a fresh uniform
// list element per visit, sampled vertices are consumed sequentially.
// Returns nullopt ("failure") when a sampled vertex's list is exhausted;
// throws DeadEndError when the walk reaches a vertex with no recorded
// out-neighbors in a correctly-operated table.
std::optional<Walk> sample_walk(const NeighborTable& table, uint32_t u_start,
                                uint32_t steps, uint64_t seed);

// The folklore one-pass sampler: preprocess with tau = steps and no full
// vertices, then replay. Never fails; throws DeadEndError only.
Walk folklore_sample(const EdgeStream& stream, uint32_t u_start, uint32_t steps,
                     uint64_t seed);

}  // namespace rwstream
