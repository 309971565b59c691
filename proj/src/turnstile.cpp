#include "rwstream/turnstile.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "rwstream/errors.hpp"

namespace rwstream {

namespace {
constexpr uint64_t kPass1SamplerTag = 0x75a1;
constexpr uint64_t kPass2SamplerTag = 0x75a2;
constexpr uint64_t kHeavyHitterTag = 0x75bb;
}  // namespace

double TurnstileConfig::resolved_sampler_fail_prob(uint32_t n) const {
  if (sampler_fail_prob > 0.0) return sampler_fail_prob;
  // Split half the error budget across every sampler built in both passes.
  double samplers = 2.0 * n * base.gamma() * base.ell();
  double p = base.delta / (4.0 * std::max(1.0, samplers));
  return std::clamp(p, 1e-12, 0.05);
}

double TurnstileConfig::resolved_hh_fail_prob() const {
  if (hh_fail_prob > 0.0) return hh_fail_prob;
  return std::clamp(base.delta / 4.0, 1e-12, 0.05);
}

TurnstileResult turnstile_preprocess(const EdgeStream& stream,
                                     const TurnstileConfig& cfg) {
  cfg.base.validate();
  if (!stream.is_turnstile()) {
    throw std::invalid_argument("turnstile preprocessing needs a turnstile stream");
  }
  const uint32_t n = stream.vertex_count();
  const uint32_t gamma = cfg.base.gamma();
  const uint32_t ell = cfg.base.ell();
  const uint32_t tau2 = gamma * ell;
  const double sampler_fail = cfg.resolved_sampler_fail_prob(n);
  const double hh_fail = cfg.resolved_hh_fail_prob();
  const uint64_t seed = cfg.base.seed;
  uint64_t replays_taken = 0;

  TurnstileResult result;

  // Pass 1: per-vertex l1 samplers stand in for the reservoir slots of the
  // gamma interleaved one-pass instances; exact per-vertex degree counters
  // tell genuine empty lists apart from sketch failures.
  std::vector<int64_t> degree(n, 0);
  uint64_t pass1_words = n;
  {
    std::vector<L1SamplerSketch> samplers;
    samplers.reserve(static_cast<size_t>(n) * gamma * ell);
    for (uint32_t v = 0; v < n; ++v) {
      for (uint32_t j = 0; j < gamma; ++j) {
        for (uint32_t t = 0; t < ell; ++t) {
          samplers.emplace_back(n, sampler_fail,
                                derive_seed(seed, kPass1SamplerTag, v, j, t));
        }
      }
    }
    auto replay = stream.replay();
    ++replays_taken;
    while (auto u = replay.next()) {
      const int delta = u->insert ? 1 : -1;
      degree[u->edge.from] += delta;
      L1SamplerSketch* row =
          samplers.data() + static_cast<size_t>(u->edge.from) * gamma * ell;
      for (uint32_t s = 0; s < gamma * ell; ++s) {
        row[s].update(u->edge.to, delta);
      }
    }
    for (const auto& s : samplers) pass1_words += s.word_count();

    std::vector<NeighborTable> tables(gamma);
    for (uint32_t j = 0; j < gamma; ++j) {
      NeighborTable& t = tables[j];
      t.n = n;
      t.cap = static_cast<uint64_t>(cfg.base.c2) * ell * n;
      t.full.assign(n, 0);
      t.lists.resize(n);
      for (uint32_t v = 0; v < n; ++v) {
        if (degree[v] == 0) continue;
        t.lists[v].reserve(ell);
        for (uint32_t s = 0; s < ell; ++s) {
          const auto& sk =
              samplers[(static_cast<size_t>(v) * gamma + j) * ell + s];
          auto got = sk.query();
          if (!got) throw SketchFailure(v);
          t.lists[v].push_back(*got);
        }
        t.stored_words += ell;
      }
    }
    result.estimate = estimate_heavy_light(n, gamma, ell, tables, seed);
  }

  // Pass 2: one global heavy-hitter sketch over edge slots recovers the full
  // neighborhoods of estimated-heavy vertices (every present edge has net
  // count 1); light vertices get tau2 fresh samplers.
  const uint64_t slot_domain = static_cast<uint64_t>(n) * n;
  const uint64_t k = static_cast<uint64_t>(cfg.base.c2) * tau2 * n;
  HeavyHitterSketch hh(slot_domain, k, hh_fail, derive_seed(seed, kHeavyHitterTag));

  std::vector<uint32_t> light_vertices;
  for (uint32_t v = 0; v < n; ++v) {
    if (!result.estimate.heavy[v]) light_vertices.push_back(v);
  }
  std::vector<size_t> sampler_offset(n, SIZE_MAX);
  std::vector<L1SamplerSketch> light_samplers;
  light_samplers.reserve(light_vertices.size() * tau2);
  for (uint32_t v : light_vertices) {
    sampler_offset[v] = light_samplers.size();
    for (uint32_t t = 0; t < tau2; ++t) {
      light_samplers.emplace_back(n, sampler_fail,
                                  derive_seed(seed, kPass2SamplerTag, v, t));
    }
  }

  {
    auto replay = stream.replay();
    ++replays_taken;
    while (auto u = replay.next()) {
      const int delta = u->insert ? 1 : -1;
      hh.update(static_cast<uint64_t>(u->edge.from) * n + u->edge.to, delta);
      if (sampler_offset[u->edge.from] != SIZE_MAX) {
        L1SamplerSketch* row = light_samplers.data() + sampler_offset[u->edge.from];
        for (uint32_t t = 0; t < tau2; ++t) row[t].update(u->edge.to, delta);
      }
    }
  }

  NeighborTable& table = result.table;
  table.n = n;
  table.cap = static_cast<uint64_t>(cfg.base.c2) * tau2 * n;
  table.full.assign(n, 0);
  table.lists.resize(n);
  for (uint32_t v = 0; v < n; ++v) {
    if (result.estimate.heavy[v]) {
      table.full[v] = 1;
      auto slots = hh.query_range(static_cast<uint64_t>(v) * n,
                                  static_cast<uint64_t>(v) * n + n);
      table.lists[v].reserve(slots.size());
      for (uint64_t s : slots) {
        table.lists[v].push_back(static_cast<uint32_t>(s % n));
      }
      if (static_cast<int64_t>(table.lists[v].size()) != degree[v]) {
        throw SketchFailure(v);
      }
    } else if (degree[v] > 0) {
      table.lists[v].reserve(tau2);
      const L1SamplerSketch* row = light_samplers.data() + sampler_offset[v];
      for (uint32_t t = 0; t < tau2; ++t) {
        auto got = row[t].query();
        if (!got) throw SketchFailure(v);
        table.lists[v].push_back(*got);
      }
    }
    table.stored_words += table.lists[v].size();
  }
  table.operated_correctly = table.stored_words <= table.cap;

  uint64_t pass2_words = hh.word_count() + n + table.stored_words;
  for (const auto& s : light_samplers) pass2_words += s.word_count();

  SpaceReport& report = result.report;
  report.pass_count = replays_taken;
  assert(report.pass_count == 2);
  report.pass1_peak_words = pass1_words;
  report.pass2_peak_words = pass2_words;
  report.heavy_count = result.estimate.heavy_count();
  report.gamma = gamma;
  report.ell = ell;
  report.operated_correctly = table.operated_correctly;
  return result;
}

TurnstilePipelineResult run_turnstile_pipeline(const EdgeStream& stream,
                                               uint32_t u_start,
                                               const TurnstileConfig& cfg) {
  TurnstileResult pre = turnstile_preprocess(stream, cfg);
  TurnstilePipelineResult out;
  out.walk = sample_walk(pre.table, u_start, cfg.base.steps,
                         derive_seed(cfg.base.seed, 0x75a3));
  out.report = pre.report;
  return out;
}

}  // namespace rwstream
