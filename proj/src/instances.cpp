#include "rwstream/instances.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwstream/rng.hpp"

namespace rwstream {

namespace {
constexpr uint64_t kSubsetTag = 0x5b5e7;
constexpr uint64_t kEntryEdgeTag = 0xe1;
constexpr uint64_t kBitsTag = 0xb175;

// Uniform k-subset of [0, range) via partial Fisher-Yates, returned sorted.
std::vector<uint32_t> sample_subset(uint32_t range, uint32_t k, SplitMix64& rng) {
  std::vector<uint32_t> pool(range);
  for (uint32_t i = 0; i < range; ++i) pool[i] = i;
  for (uint32_t i = 0; i < k; ++i) {
    uint32_t j = i + static_cast<uint32_t>(uniform_below(rng, range - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}
}  // namespace

DirectedGraph gen_star(uint32_t n) {
  if (n < 2) throw std::invalid_argument("star needs n >= 2");
  DirectedGraph g(n);
  for (uint32_t i = 1; i < n; ++i) {
    g.add_edge(0, i);
    g.add_edge(i, 0);
  }
  return g;
}

DirectedGraph gen_cycle(uint32_t n) {
  if (n < 1) throw std::invalid_argument("cycle needs n >= 1");
  DirectedGraph g(n);
  for (uint32_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

DirectedGraph gen_complete(uint32_t n) {
  if (n < 2) throw std::invalid_argument("complete graph needs n >= 2");
  DirectedGraph g(n);
  for (uint32_t u = 0; u < n; ++u) {
    for (uint32_t v = 0; v < n; ++v) {
      if (u != v) g.add_edge(u, v);
    }
  }
  return g;
}

DirectedGraph gen_random_graph(uint32_t n, uint32_t out_degree, uint64_t seed) {
  if (n == 0) throw std::invalid_argument("graph needs n >= 1");
  if (out_degree > n) throw std::invalid_argument("out-degree exceeds n");
  DirectedGraph g(n);
  for (uint32_t u = 0; u < n; ++u) {
    SplitMix64 rng(derive_seed(seed, kSubsetTag, u));
    for (uint32_t v : sample_subset(n, out_degree, rng)) g.add_edge(u, v);
  }
  return g;
}

nlohmann::json HardInstance::sidecar() const {
  nlohmann::json layer_rows = nlohmann::json::array();
  for (const auto& [lo, hi] : layers) layer_rows.push_back({lo, hi});
  return nlohmann::json{{"type", "hard_instance"},
                        {"start", start},
                        {"layers", layer_rows}};
}

HardInstance gen_hard_instance(const HardInstanceParams& params) {
  const uint32_t n = params.layer_size;
  const uint32_t p = params.passes;
  if (n < 1) throw std::invalid_argument("layer size must be >= 1");
  if (p < 1) throw std::invalid_argument("pass parameter must be >= 1");
  if (params.degree < 1 || params.degree > n) {
    throw std::invalid_argument("degree must lie in [1, layer_size]");
  }

  HardInstance inst;
  const uint32_t total = 1 + (p + 1) * n;
  inst.start = 0;
  inst.graph = DirectedGraph(total);
  inst.layers.push_back({0, 1});
  for (uint32_t i = 2; i <= p + 2; ++i) {
    uint32_t lo = 1 + (i - 2) * n;
    inst.layers.push_back({lo, lo + n});
  }
  auto layer_base = [&](uint32_t i) { return inst.layers[i - 1].first; };

  // Edges are inserted in stream order: E_{p+2} first, then E_{p+1} ... E_2,
  // and E_1 (the single entry edge) last.
  for (uint32_t v = 0; v < n; ++v) {
    inst.graph.add_edge(layer_base(p + 2) + v, inst.start);
  }
  for (uint32_t i = p + 1; i >= 2; --i) {
    for (uint32_t v = 0; v < n; ++v) {
      SplitMix64 rng(derive_seed(params.seed, kSubsetTag, i, v));
      for (uint32_t t : sample_subset(n, params.degree, rng)) {
        inst.graph.add_edge(layer_base(i) + v, layer_base(i + 1) + t);
      }
    }
  }
  {
    SplitMix64 rng(derive_seed(params.seed, kEntryEdgeTag));
    uint32_t target = layer_base(2) + static_cast<uint32_t>(uniform_below(rng, n));
    inst.graph.add_edge(inst.start, target);
  }
  inst.stream = EdgeStream::from_graph(inst.graph, EdgeOrder::AsGiven);
  return inst;
}

nlohmann::json IndexGadget::sidecar() const {
  return nlohmann::json{{"type", "index_gadget"},
                        {"start", start},
                        {"tau", params.tau},
                        {"bits", params.bits}};
}

IndexGadget gen_index_gadget(const GadgetParams& params) {
  const uint32_t tau = params.tau;
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (params.bits.size() != static_cast<size_t>(tau) * tau) {
    throw std::invalid_argument("bit string must have length tau^2");
  }
  for (char c : params.bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bits must be 0/1");
  }

  IndexGadget gadget;
  gadget.params = params;
  gadget.graph = DirectedGraph(2 * tau + 1);
  gadget.start = 2 * tau;  // the hub V_{2,tau+1}
  auto lower = [&](uint32_t i) { return i - 1; };        // V_{1,i}, i in [1,tau]
  auto upper = [&](uint32_t j) { return tau + j - 1; };  // V_{2,j}, j in [1,tau+1]

  for (uint32_t i = 1; i <= tau; ++i) {
    for (uint32_t j = 1; j <= tau; ++j) {
      gadget.graph.add_edge(upper(j), lower(i));
      if (params.bits[(i - 1) * tau + (j - 1)] == '1') {
        gadget.graph.add_edge(lower(i), upper(j));
      }
    }
  }
  for (uint32_t i = 1; i <= tau; ++i) {
    gadget.graph.add_edge(lower(i), gadget.start);
    gadget.graph.add_edge(gadget.start, lower(i));
  }
  return gadget;
}

std::string recover_string(const Walk& walk, const GadgetParams& params) {
  const uint32_t tau = params.tau;
  std::string rec(static_cast<size_t>(tau) * tau, '0');
  for (uint32_t v : walk) {
    if (v >= 2 * tau + 1) {
      throw std::invalid_argument("walk leaves the gadget's vertex range");
    }
  }
  for (size_t s = 1; s < walk.size(); ++s) {
    uint32_t from = walk[s - 1];
    uint32_t to = walk[s];
    if (from < tau && to >= tau && to < 2 * tau) {
      uint32_t i = from + 1;
      uint32_t j = to - tau + 1;
      rec[(i - 1) * tau + (j - 1)] = '1';
    }
  }
  return rec;
}

uint32_t recovery_walk_length(uint32_t tau, double eps) {
  double m = static_cast<double>(tau) * tau;
  return static_cast<uint32_t>(std::ceil(8.0 * m * std::log(m / eps)));
}

std::string random_bits(uint32_t count, uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, kBitsTag));
  std::string s(count, '0');
  for (uint32_t i = 0; i < count; ++i) {
    if (rng() & 1) s[i] = '1';
  }
  return s;
}

}  // namespace rwstream
