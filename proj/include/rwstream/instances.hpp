#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rwstream/graph.hpp"
#include "rwstream/stream.hpp"

namespace rwstream {

// Star: vertex 0 is the center, two-way edges to every other vertex.
DirectedGraph gen_star(uint32_t n);

// Plain generators for test corpora and the CLI.
DirectedGraph gen_cycle(uint32_t n);
DirectedGraph gen_complete(uint32_t n);  // all n*(n-1) directed edges

// Every vertex gets a uniform out_degree-subset of V as out-neighbors
// (self-loops possible); no dead ends when out_degree >= 1.
DirectedGraph gen_random_graph(uint32_t n, uint32_t out_degree, uint64_t seed);

// Layered pointer-chasing instance: p+2 layers, |V_1| = 1 (the start s),
// n vertices per other layer. s has a single random edge into V_2, middle
// layers have uniform degree-`degree` subsets into the next layer, and the
// last layer feeds back into s. The stream reveals E_{p+2} first and E_1
// last.
struct HardInstanceParams {
  uint32_t layer_size = 2;  // n
  uint32_t passes = 1;      // p
  uint32_t degree = 1;      // out-degree of middle layers, <= layer_size
  uint64_t seed = 0;
};

struct HardInstance {
  DirectedGraph graph;
  EdgeStream stream;  // ordering E_{p+2}, ..., E_1
  uint32_t start = 0;
  std::vector<std::pair<uint32_t, uint32_t>> layers;  // [lo, hi) per layer
  nlohmann::json sidecar() const;
};

HardInstance gen_hard_instance(const HardInstanceParams& params);

// Two-layer index gadget over a tau^2-bit string X. Layer 1 has tau
// vertices (ids 0..tau-1), layer 2 has tau+1 (ids tau..2*tau); the last
// layer-2 vertex is the start hub. Every layer-2 vertex points down to all
// of layer 1; V_{1,i} points up to V_{2,j} iff bit (i,j) of X is set; the
// hub is connected both ways to all of layer 1.
struct GadgetParams {
  uint32_t tau = 1;
  std::string bits;  // length tau^2, characters '0'/'1'; bit (i,j) at (i-1)*tau + (j-1)
};

struct IndexGadget {
  DirectedGraph graph;
  uint32_t start = 0;
  GadgetParams params;
  nlohmann::json sidecar() const;
};

IndexGadget gen_index_gadget(const GadgetParams& params);

// Reads the bits back off a walk: bit (i,j) is set iff the walk traverses
// the edge V_{1,i} -> V_{2,j}.
std::string recover_string(const Walk& walk, const GadgetParams& params);

// Walk length that makes per-bit recovery failure <= eps/tau^2 in the
// recovery experiment.
uint32_t recovery_walk_length(uint32_t tau, double eps = 0.01);

// Uniform random bit string of the gadget's expected length.
std::string random_bits(uint32_t count, uint64_t seed);

}  // namespace rwstream
