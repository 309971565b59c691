#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

namespace rwstream {

// Preprocessing output: one list per vertex, either the full out-neighborhood
// (mode full) or sampled-with-replacement entries (mode sampled), plus the
// word accounting the space claims rest on.
struct NeighborTable {
  uint32_t n = 0;
  uint64_t cap = 0;                          // word budget c2 * tau * n
  bool operated_correctly = true;            // false once recording tripped the cap
  std::vector<uint8_t> full;                 // per-vertex mode flag
  std::vector<std::vector<uint32_t>> lists;  // stored neighbor entries
  uint64_t stored_words = 0;                 // sum of list lengths

  nlohmann::json to_json() const;
  static NeighborTable from_json(const nlohmann::json& j);
};

}  // namespace rwstream
