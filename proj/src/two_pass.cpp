#include "rwstream/two_pass.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "rwstream/errors.hpp"

namespace rwstream {

namespace {
constexpr uint64_t kPass1Tag = 0x2a551;
constexpr uint64_t kTrialTag = 0x7124a1;
constexpr uint64_t kPass2Tag = 0x2a552;
constexpr uint64_t kSampleTag = 0x5a3b;
}  // namespace

uint32_t TwoPassConfig::ell() const {
  auto e = static_cast<uint32_t>(std::ceil(std::sqrt(static_cast<double>(steps))));
  while (static_cast<uint64_t>(e) * e < steps) ++e;
  while (e > 1 && static_cast<uint64_t>(e - 1) * (e - 1) >= steps) --e;
  return e;
}

uint32_t TwoPassConfig::gamma() const {
  double g = std::ceil(static_cast<double>(c1) * std::log2(1.0 / delta));
  if (g < 1.0) return 1;
  return static_cast<uint32_t>(g);
}

void TwoPassConfig::validate() const {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (c1 < 1 || c2 < 1) throw std::invalid_argument("c1 and c2 must be >= 1");
}

uint32_t HeavyLightEstimate::heavy_count() const {
  uint32_t c = 0;
  for (uint8_t h : heavy) c += h;
  return c;
}

nlohmann::json HeavyLightEstimate::to_json() const {
  nlohmann::json w = nlohmann::json::array();
  nlohmann::json h = nlohmann::json::array();
  for (size_t u = 0; u < revisit_counts.size(); ++u) {
    w.push_back(revisit_counts[u]);
    h.push_back(static_cast<bool>(heavy[u]));
  }
  return nlohmann::json{{"gamma", gamma},
                        {"ell", ell},
                        {"revisit_counts", w},
                        {"heavy", h},
                        {"dead_end_trial_vertices", dead_end_trial_vertices}};
}

nlohmann::json SpaceReport::to_json() const {
  return nlohmann::json{{"pass_count", pass_count},
                        {"pass1_peak_words", pass1_peak_words},
                        {"pass2_peak_words", pass2_peak_words},
                        {"heavy_count", heavy_count},
                        {"gamma", gamma},
                        {"ell", ell},
                        {"operated_correctly", operated_correctly}};
}

HeavyLightEstimate estimate_heavy_light(uint32_t n, uint32_t gamma, uint32_t ell,
                                        const std::vector<NeighborTable>& tables,
                                        uint64_t seed) {
  HeavyLightEstimate est;
  est.gamma = gamma;
  est.ell = ell;
  est.revisit_counts.assign(n, 0);
  est.heavy.assign(n, 0);
  for (uint32_t u = 0; u < n; ++u) {
    uint32_t dead_ends = 0;
    for (uint32_t j = 0; j < gamma; ++j) {
      bool revisit = false;
      try {
        auto walk = sample_walk(tables[j], u, ell,
                                derive_seed(seed, kTrialTag, u, j));
        // A trial walk of length ell consumes at most ell entries per vertex,
        // so with tau = ell it cannot fail.
        assert(walk.has_value());
        if (walk) {
          for (uint32_t i = 1; i < walk->size(); ++i) {
            if ((*walk)[i] == u) {
              revisit = true;
              break;
            }
          }
        }
      } catch (const DeadEndError&) {
        ++dead_ends;  // counted as a non-revisit
      }
      if (revisit) ++est.revisit_counts[u];
    }
    if (dead_ends == gamma) {
      est.dead_end_trial_vertices.push_back(u);
    }
    est.heavy[u] = 2 * est.revisit_counts[u] >= gamma ? 1 : 0;
  }
  return est;
}

FirstPassResult first_pass(EdgeStream::Replay replay, const TwoPassConfig& cfg) {
  cfg.validate();
  if (replay.stream().is_turnstile()) {
    throw std::invalid_argument("first pass needs an insertion-only stream");
  }
  const uint32_t n = replay.stream().vertex_count();
  const uint32_t ell = cfg.ell();
  const uint32_t gamma = cfg.gamma();

  // gamma interleaved sampler instances share the single replay, each edge
  // fanned out to all of them. Flat slot arena: instance j, vertex v, slot i
  // at ((j*n + v)*ell + i). With tau = ell and no full vertices the stored
  // candidates are at most ell*n <= c2*ell*n, so the cap cannot trip.
  struct Slot {
    uint32_t item = 0;
    SplitMix64 rng{0};
  };
  std::vector<Slot> slots(static_cast<size_t>(gamma) * n * ell);
  std::vector<uint32_t> deg(n, 0);

  while (auto u = replay.next()) {
    const uint32_t v = u->edge.from;
    const uint32_t w = u->edge.to;
    const uint32_t d = ++deg[v];
    if (d == 1) {
      for (uint32_t j = 0; j < gamma; ++j) {
        const uint64_t base_seed = derive_seed(cfg.seed, kPass1Tag, j, v);
        Slot* block = slots.data() + (static_cast<size_t>(j) * n + v) * ell;
        for (uint32_t i = 0; i < ell; ++i) {
          block[i].item = w;
          block[i].rng = SplitMix64(mix64(base_seed ^ (i + 1)));
        }
      }
    } else {
      for (uint32_t j = 0; j < gamma; ++j) {
        Slot* block = slots.data() + (static_cast<size_t>(j) * n + v) * ell;
        for (uint32_t i = 0; i < ell; ++i) {
          if (uniform_below(block[i].rng, d) == 0) block[i].item = w;
        }
      }
    }
  }

  FirstPassResult result;
  uint64_t active = 0;
  for (uint32_t v = 0; v < n; ++v) active += deg[v] > 0 ? 1 : 0;
  result.stored_words = static_cast<uint64_t>(gamma) * ell * active;
  result.operated_correctly = true;

  HeavyLightEstimate& est = result.estimate;
  est.gamma = gamma;
  est.ell = ell;
  est.revisit_counts.assign(n, 0);
  est.heavy.assign(n, 0);

  // Trial walks consume list entries sequentially; sampled-only tables need
  // no randomness at walk time, and a walk of ell steps cannot exhaust an
  // ell-entry list. Visit counters are epoch-stamped to avoid re-zeroing.
  std::vector<uint32_t> consumed(n, 0);
  std::vector<uint32_t> stamp(n, UINT32_MAX);
  uint32_t epoch = 0;
  for (uint32_t u = 0; u < n; ++u) {
    uint32_t dead_ends = 0;
    uint32_t revisits = 0;
    for (uint32_t j = 0; j < gamma; ++j) {
      ++epoch;
      uint32_t cur = u;
      for (uint32_t step = 0; step < ell; ++step) {
        if (deg[cur] == 0) {
          ++dead_ends;  // counted as a non-revisit
          break;
        }
        uint32_t k = stamp[cur] == epoch ? consumed[cur] : 0;
        stamp[cur] = epoch;
        consumed[cur] = k + 1;
        cur = slots[(static_cast<size_t>(j) * n + cur) * ell + k].item;
        if (cur == u) {
          ++revisits;
          break;
        }
      }
    }
    est.revisit_counts[u] = revisits;
    est.heavy[u] = 2 * revisits >= gamma ? 1 : 0;
    if (dead_ends == gamma) est.dead_end_trial_vertices.push_back(u);
  }
  return result;
}

NeighborTable second_pass(EdgeStream::Replay replay,
                          const HeavyLightEstimate& estimate,
                          const TwoPassConfig& cfg) {
  cfg.validate();
  SamplerConfig sc;
  sc.tau = estimate.gamma * estimate.ell;
  sc.cap_factor = cfg.c2;
  sc.seed = derive_seed(cfg.seed, kPass2Tag);
  return preprocess(std::move(replay), estimate.heavy, sc);
}

std::optional<Walk> sample(const NeighborTable& table, uint32_t u_start,
                           uint32_t steps, uint64_t seed) {
  return sample_walk(table, u_start, steps, seed);
}

PipelineResult run_pipeline(const EdgeStream& stream, uint32_t u_start,
                            const TwoPassConfig& cfg) {
  cfg.validate();

  // Local replay budget: a third replay request inside the pipeline is a bug.
  uint64_t replays_taken = 0;
  auto take_replay = [&]() {
    if (++replays_taken > 2) {
      throw std::logic_error("two-pass pipeline requested a third replay");
    }
    return stream.replay();
  };

  FirstPassResult fp = first_pass(take_replay(), cfg);
  NeighborTable table = second_pass(take_replay(), fp.estimate, cfg);

  PipelineResult result;
  result.walk = sample(table, u_start, cfg.steps, derive_seed(cfg.seed, kSampleTag));
  result.report.pass_count = replays_taken;
  result.report.pass1_peak_words = fp.stored_words;
  result.report.pass2_peak_words = table.stored_words;
  result.report.heavy_count = fp.estimate.heavy_count();
  result.report.gamma = fp.estimate.gamma;
  result.report.ell = fp.estimate.ell;
  result.report.operated_correctly =
      fp.operated_correctly && table.operated_correctly;
  return result;
}

}  // namespace rwstream
