#include "rwstream/one_pass.hpp"

#include <stdexcept>

#include "rwstream/errors.hpp"

namespace rwstream {

namespace {
constexpr uint64_t kSlotTag = 0x510;
constexpr uint64_t kWalkTag = 0x3a1c;
constexpr uint64_t kFolklorePreTag = 0xf01c;
constexpr uint64_t kFolkloreWalkTag = 0xf02c;
}  // namespace

PreprocessState::PreprocessState(uint32_t n, std::vector<uint8_t> v_full,
                                 SamplerConfig cfg)
    : n_(n),
      cfg_(cfg),
      cap_(static_cast<uint64_t>(cfg.cap_factor) * cfg.tau * n),
      full_(std::move(v_full)),
      full_lists_(n),
      seen_(n, 0),
      slot_offset_(n, SIZE_MAX) {
  if (cfg_.tau == 0) throw std::invalid_argument("tau must be >= 1");
  if (cfg_.cap_factor == 0) throw std::invalid_argument("cap factor must be >= 1");
  if (full_.empty()) full_.assign(n, 0);
  if (full_.size() != n) {
    throw std::invalid_argument("v_full size does not match vertex count");
  }
}

void PreprocessState::feed(uint32_t from, uint32_t to) {
  if (!operating_) return;
  if (full_[from]) {
    if (candidate_words_ + 1 > cap_) {
      operating_ = false;
      return;
    }
    ++candidate_words_;
    full_lists_[from].push_back(to);
    return;
  }
  uint64_t& seen = seen_[from];
  if (seen == 0) {
    if (candidate_words_ + cfg_.tau > cap_) {
      operating_ = false;
      return;
    }
    candidate_words_ += cfg_.tau;
    slot_offset_[from] = slots_.size();
    for (uint32_t i = 0; i < cfg_.tau; ++i) {
      slots_.push_back(Slot{to, SplitMix64(derive_seed(cfg_.seed, kSlotTag, from, i))});
    }
    seen = 1;
    return;
  }
  ++seen;
  Slot* slot = slots_.data() + slot_offset_[from];
  for (uint32_t i = 0; i < cfg_.tau; ++i, ++slot) {
    if (uniform_below(slot->rng, seen) == 0) slot->item = to;
  }
}

NeighborTable PreprocessState::finish() const {
  NeighborTable t;
  t.n = n_;
  t.cap = cap_;
  t.operated_correctly = operating_;
  t.full = full_;
  t.lists.resize(n_);
  for (uint32_t v = 0; v < n_; ++v) {
    if (full_[v]) {
      t.lists[v] = full_lists_[v];
    } else if (seen_[v] > 0) {
      t.lists[v].reserve(cfg_.tau);
      const Slot* slot = slots_.data() + slot_offset_[v];
      for (uint32_t i = 0; i < cfg_.tau; ++i, ++slot) {
        t.lists[v].push_back(slot->item);
      }
    }
    t.stored_words += t.lists[v].size();
  }
  return t;
}

NeighborTable preprocess(EdgeStream::Replay replay,
                         const std::vector<uint8_t>& v_full,
                         const SamplerConfig& cfg) {
  if (replay.stream().is_turnstile()) {
    throw std::invalid_argument("one-pass preprocessing needs an insertion-only stream");
  }
  PreprocessState state(replay.stream().vertex_count(), v_full, cfg);
  while (auto u = replay.next()) {
    state.feed(u->edge.from, u->edge.to);
  }
  return state.finish();
}

std::optional<Walk> sample_walk(const NeighborTable& table, uint32_t u_start,
                                uint32_t steps, uint64_t seed) {
  if (u_start >= table.n) throw std::invalid_argument("start vertex out of range");
  SplitMix64 rng(derive_seed(seed, kWalkTag));
  std::vector<uint32_t> consumed(table.n, 0);
  Walk walk;
  walk.reserve(steps + 1);
  walk.push_back(u_start);
  for (uint32_t i = 0; i < steps; ++i) {
    uint32_t v = walk.back();
    const auto& list = table.lists[v];
    uint32_t next;
    if (table.full[v]) {
      if (list.empty()) throw DeadEndError(v);
      next = list[uniform_below(rng, list.size())];
    } else {
      if (list.empty()) {
        // With correct operation an empty sampled list means out-degree 0;
        // after a cap trip it is indistinguishable from exhaustion.
        if (table.operated_correctly) throw DeadEndError(v);
        return std::nullopt;
      }
      if (consumed[v] >= list.size()) return std::nullopt;
      next = list[consumed[v]++];
    }
    walk.push_back(next);
  }
  return walk;
}

Walk folklore_sample(const EdgeStream& stream, uint32_t u_start, uint32_t steps,
                     uint64_t seed) {
  if (steps == 0) return Walk{u_start};
  SamplerConfig cfg;
  cfg.tau = steps;
  cfg.seed = derive_seed(seed, kFolklorePreTag);
  NeighborTable table = preprocess(stream.replay(), {}, cfg);
  auto walk = sample_walk(table, u_start, steps, derive_seed(seed, kFolkloreWalkTag));
  if (!walk) {
    // tau = steps entries per vertex cannot be exhausted by a steps-step walk.
    throw std::logic_error("folklore sampler reported failure");
  }
  return *walk;
}

}  // namespace rwstream
