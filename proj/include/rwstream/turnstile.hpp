#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rwstream/sketch.hpp"
#include "rwstream/stream.hpp"
#include "rwstream/two_pass.hpp"

namespace rwstream {

struct TurnstileConfig {
  TwoPassConfig base;
  // Per-sketch failure bounds; 0 means "derive from base.delta".
  double sampler_fail_prob = 0.0;
  double hh_fail_prob = 0.0;

  double resolved_sampler_fail_prob(uint32_t n) const;
  double resolved_hh_fail_prob() const;
};

struct TurnstileResult {
  NeighborTable table;
  HeavyLightEstimate estimate;
  SpaceReport report;
};

// Two-pass preprocessing over a turnstile stream. Pass 1 mirrors the
// insertion-only first pass with every reservoir slot replaced by an
// independent l1-sampler sketch over the vertex's out-edge slots. Pass 2
// recovers estimated-heavy vertices' full neighborhoods from one global
// heavy-hitter sketch with k = c2 * gamma * ell * n over edge slots
// (u, v) -> u*n + v, and draws fresh samples for the light vertices. The
// resulting table feeds sample_walk unchanged.
//
// Throws SketchFailure when a sketch FAILs on a vertex whose neighbors are
// needed (nonzero out-degree), or when heavy-hitter recovery disagrees with
// the vertex's exact degree counter.
TurnstileResult turnstile_preprocess(const EdgeStream& stream,
                                     const TurnstileConfig& cfg);

struct TurnstilePipelineResult {
  std::optional<Walk> walk;
  SpaceReport report;
};

TurnstilePipelineResult run_turnstile_pipeline(const EdgeStream& stream,
                                               uint32_t u_start,
                                               const TurnstileConfig& cfg);

}  // namespace rwstream
