#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "rwstream/neighbor_table.hpp"
#include "rwstream/one_pass.hpp"
#include "rwstream/stream.hpp"

namespace rwstream {

struct TwoPassConfig {
  uint32_t steps = 1;   // L, the walk length
  double delta = 0.05;  // target sampling error
  uint32_t c1 = 48;     // gamma = ceil(c1 * log2(1/delta))
  uint32_t c2 = 8;      // word-budget factor
  uint64_t seed = 0;

  uint32_t ell() const;    // ceil(sqrt(L)), the revisit horizon
  uint32_t gamma() const;  // trial walks per vertex, >= 1
  void validate() const;
};

// First-pass output: per-vertex revisit fractions over gamma trial walks and
// the derived heavy/light split (w_u >= 0.5 goes heavy).
struct HeavyLightEstimate {
  uint32_t gamma = 0;
  uint32_t ell = 0;
  std::vector<uint32_t> revisit_counts;        // out of gamma
  std::vector<uint8_t> heavy;
  std::vector<uint32_t> dead_end_trial_vertices;  // all trials dead-ended

  double w(uint32_t u) const {
    return static_cast<double>(revisit_counts[u]) / gamma;
  }
  uint32_t heavy_count() const;
  nlohmann::json to_json() const;
};

struct FirstPassResult {
  HeavyLightEstimate estimate;
  uint64_t stored_words = 0;  // across all gamma sampler instances
  bool operated_correctly = true;
};

struct SpaceReport {
  uint64_t pass_count = 0;
  uint64_t pass1_peak_words = 0;
  uint64_t pass2_peak_words = 0;
  uint32_t heavy_count = 0;
  uint32_t gamma = 0;
  uint32_t ell = 0;
  bool operated_correctly = true;

  nlohmann::json to_json() const;
};

// Pass 1: gamma interleaved one-pass sampler instances over a single replay,
// then gamma trial walks of length ell from every vertex. Trial walks that
// hit a dead end count as non-revisits.
FirstPassResult first_pass(EdgeStream::Replay replay, const TwoPassConfig& cfg);

// Trial-walk stage of the first pass, shared with the turnstile variant:
// instance j's table answers the walk from u with trial seed (seed, u, j);
// w_u is the fraction of the gamma walks that revisit u within ell steps.
HeavyLightEstimate estimate_heavy_light(uint32_t n, uint32_t gamma, uint32_t ell,
                                        const std::vector<NeighborTable>& tables,
                                        uint64_t seed);

// Pass 2: full recording for estimated-heavy vertices, gamma * ell reservoir
// samples for the rest.
NeighborTable second_pass(EdgeStream::Replay replay,
                          const HeavyLightEstimate& estimate,
                          const TwoPassConfig& cfg);

// Pure delegation to the one-pass walk replay.
std::optional<Walk> sample(const NeighborTable& table, uint32_t u_start,
                           uint32_t steps, uint64_t seed);

struct PipelineResult {
  std::optional<Walk> walk;
  SpaceReport report;
};

// first_pass -> second_pass -> sample; consumes exactly two replays.
PipelineResult run_pipeline(const EdgeStream& stream, uint32_t u_start,
                            const TwoPassConfig& cfg);

}  // namespace rwstream
