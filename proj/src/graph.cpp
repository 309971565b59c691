#include "rwstream/graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rwstream/errors.hpp"

namespace rwstream {

DirectedGraph::DirectedGraph(uint32_t n) : n_(n), out_(n) {}

bool DirectedGraph::has_edge(uint32_t u, uint32_t v) const {
  if (u >= n_ || v >= n_) return false;
  return present_.count(key(u, v)) != 0;
}

bool DirectedGraph::has_dead_end() const {
  for (uint32_t u = 0; u < n_; ++u) {
    if (out_[u].empty()) return true;
  }
  return false;
}

void DirectedGraph::add_edge(uint32_t u, uint32_t v) {
  if (u >= n_ || v >= n_) {
    throw std::invalid_argument("edge endpoint out of range");
  }
  if (!present_.insert(key(u, v)).second) {
    throw DuplicateEdge("duplicate edge " + std::to_string(u) + " -> " +
                        std::to_string(v));
  }
  edges_.push_back({u, v});
  out_[u].push_back(v);
}

namespace {

// Reads a non-negative integer token; rejects signs and garbage.
bool read_id(std::istream& in, long long& value) {
  std::string tok;
  if (!(in >> tok)) return false;
  if (tok.empty()) return false;
  for (char c : tok) {
    if (c < '0' || c > '9') throw ParseError("invalid token '" + tok + "'");
  }
  try {
    value = std::stoll(tok);
  } catch (const std::exception&) {
    throw ParseError("invalid token '" + tok + "'");
  }
  return true;
}

}  // namespace

DirectedGraph DirectedGraph::read_edge_list(std::istream& in) {
  long long n = 0;
  if (!read_id(in, n)) throw ParseError("missing vertex count");
  if (n < 0 || n > UINT32_MAX) throw ParseError("vertex count out of range");
  DirectedGraph g(static_cast<uint32_t>(n));
  long long u = 0;
  while (read_id(in, u)) {
    long long v = 0;
    if (!read_id(in, v)) throw ParseError("edge line missing target id");
    if (u >= n || v >= n) {
      throw ParseError("edge endpoint out of range: " + std::to_string(u) +
                       " " + std::to_string(v));
    }
    g.add_edge(static_cast<uint32_t>(u), static_cast<uint32_t>(v));
  }
  return g;
}

void DirectedGraph::write_edge_list(std::ostream& out) const {
  out << n_ << "\n";
  for (const Edge& e : edges_) {
    out << e.from << " " << e.to << "\n";
  }
}

}  // namespace rwstream
