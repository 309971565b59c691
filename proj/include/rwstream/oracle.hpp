#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "rwstream/errors.hpp"
#include "rwstream/graph.hpp"
#include "rwstream/rng.hpp"

namespace rwstream {

struct OracleLimits {
  uint32_t max_steps = 10000;   // cap on b in visit probabilities
  double max_walks = 1e7;       // enumeration budget for exact distributions
};

// CSR adjacency with uniform transitions; the reference walk model.
class TransitionModel {
 public:
  explicit TransitionModel(const DirectedGraph& g);

  uint32_t vertex_count() const { return static_cast<uint32_t>(offsets_.size() - 1); }
  uint32_t out_degree(uint32_t u) const { return offsets_[u + 1] - offsets_[u]; }
  bool is_dead_end(uint32_t u) const { return out_degree(u) == 0; }
  std::span<const uint32_t> out(uint32_t u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }

  template <typename Rng>
  uint32_t step(uint32_t u, Rng& rng) const {
    uint32_t d = out_degree(u);
    if (d == 0) throw DeadEndError(u);
    return targets_[offsets_[u] + uniform_below(rng, d)];
  }

  // Throws DeadEndError if the walk reaches a vertex it cannot leave.
  Walk simulate_walk(uint32_t u_start, uint32_t steps, uint64_t seed) const;

 private:
  std::vector<uint32_t> offsets_;
  std::vector<uint32_t> targets_;
};

// Exact probability that a b-step walk from u visits v at some position i
// with a <= i <= b (position 0 is u itself). Dynamic programming with v made
// absorbing from step a onward. Throws DeadEndError if a dead end is
// reachable in < b steps, CapExceeded if b exceeds the step cap.
double visit_probability(const DirectedGraph& g, uint32_t u, uint32_t v,
                         uint32_t a, uint32_t b, const OracleLimits& limits = {});

// visit_[1,ell](u,u): the revisit probability behind the heavy/light split.
double revisit_probability(const DirectedGraph& g, uint32_t u, uint32_t ell,
                           const OracleLimits& limits = {});

enum class VertexClass { Heavy, Light, Both };

// Heavy iff revisit probability >= 1/3, light iff <= 2/3; the overlap
// [1/3, 2/3] is classified Both.
std::vector<VertexClass> classify_exact(const DirectedGraph& g, uint32_t ell,
                                        const OracleLimits& limits = {});

struct WalkDistribution {
  std::map<Walk, double> probs;
  double total_mass = 0.0;
  nlohmann::json to_json() const;
};

// Every length-`steps` walk from u_start with its exact probability.
WalkDistribution exact_walk_distribution(const DirectedGraph& g, uint32_t u_start,
                                         uint32_t steps,
                                         const OracleLimits& limits = {});

// Empirical multiset of walks. `total` counts all draws including ones that
// produced no walk (sampler failures); the missing mass is charged to a
// synthetic outcome outside the exact support.
struct WalkSample {
  std::map<Walk, uint64_t> counts;
  uint64_t total = 0;

  void add(const Walk& w) {
    ++counts[w];
    ++total;
  }
  void add_failure() { ++total; }
  void merge(const WalkSample& other);
  uint64_t drawn() const;
};

struct TvEstimate {
  double estimate = 0.0;
  double radius = 0.0;   // sqrt(|union support| / (2 * samples))
  bool paired = false;   // true when both sides are empirical
};

// Plug-in total variation estimate 1/2 * sum |p(w) - q_hat(w)| over the union
// support, plus the sampling confidence radius.
TvEstimate tv_distance(const WalkDistribution& p, const WalkSample& q);

// Fallback when the exact support is too large to enumerate: compare two
// independent empirical samples and flag the estimate as paired.
TvEstimate tv_distance_paired(const WalkSample& a, const WalkSample& b);

// Monte-Carlo histogram of how often an L-step walk from u_start visits v
// (positions 1..L). Keyed by visit count. Deterministic under seed.
std::map<uint64_t, uint64_t> visit_count_distribution(const DirectedGraph& g,
                                                      uint32_t u_start, uint32_t v,
                                                      uint32_t steps,
                                                      uint64_t trials,
                                                      uint64_t seed);

nlohmann::json histogram_to_json(const std::map<uint64_t, uint64_t>& hist,
                                 uint64_t trials);

}  // namespace rwstream
