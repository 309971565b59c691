#include "rwstream/neighbor_table.hpp"

#include <stdexcept>

namespace rwstream {

nlohmann::json NeighborTable::to_json() const {
  nlohmann::json modes = nlohmann::json::array();
  nlohmann::json out_lists = nlohmann::json::array();
  for (uint32_t v = 0; v < n; ++v) {
    modes.push_back(full[v] ? "full" : "sampled");
    out_lists.push_back(lists[v]);
  }
  return nlohmann::json{{"n", n},
                        {"cap", cap},
                        {"operated_correctly", operated_correctly},
                        {"stored_words", stored_words},
                        {"mode", modes},
                        {"lists", out_lists}};
}

NeighborTable NeighborTable::from_json(const nlohmann::json& j) {
  NeighborTable t;
  t.n = j.at("n").get<uint32_t>();
  t.cap = j.at("cap").get<uint64_t>();
  t.operated_correctly = j.at("operated_correctly").get<bool>();
  t.stored_words = j.at("stored_words").get<uint64_t>();
  const auto& modes = j.at("mode");
  const auto& in_lists = j.at("lists");
  if (modes.size() != t.n || in_lists.size() != t.n) {
    throw std::invalid_argument("neighbor table fields have inconsistent sizes");
  }
  t.full.resize(t.n, 0);
  t.lists.resize(t.n);
  uint64_t words = 0;
  for (uint32_t v = 0; v < t.n; ++v) {
    t.full[v] = modes[v].get<std::string>() == "full" ? 1 : 0;
    t.lists[v] = in_lists[v].get<std::vector<uint32_t>>();
    words += t.lists[v].size();
  }
  if (words != t.stored_words) {
    throw std::invalid_argument("stored_words does not match list contents");
  }
  return t;
}

}  // namespace rwstream
