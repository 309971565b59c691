#include "rwstream/stream.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "rwstream/errors.hpp"
#include "rwstream/rng.hpp"

namespace rwstream {

namespace {
constexpr uint64_t kShuffleTag = 0x5f5e11;
}

std::optional<EdgeUpdate> EdgeStream::Replay::next() {
  if (finished_) return std::nullopt;
  if (pos_ >= owner_->update_count()) {
    finished_ = true;
    owner_->note_pass_completed();
    return std::nullopt;
  }
  return owner_->updates()[pos_++];
}

EdgeStream::EdgeStream(const EdgeStream& other)
    : n_(other.n_),
      turnstile_(other.turnstile_),
      updates_(other.updates_),
      passes_(other.pass_count()) {}

EdgeStream& EdgeStream::operator=(const EdgeStream& other) {
  if (this != &other) {
    n_ = other.n_;
    turnstile_ = other.turnstile_;
    updates_ = other.updates_;
    passes_.store(other.pass_count(), std::memory_order_relaxed);
  }
  return *this;
}

EdgeStream EdgeStream::from_graph(const DirectedGraph& g, EdgeOrder order,
                                  uint64_t seed) {
  EdgeStream s;
  s.n_ = g.vertex_count();
  s.updates_.reserve(g.edge_count());
  for (const Edge& e : g.edges()) s.updates_.push_back({e, true});
  switch (order) {
    case EdgeOrder::AsGiven:
      break;
    case EdgeOrder::Lexicographic:
      std::sort(s.updates_.begin(), s.updates_.end(),
                [](const EdgeUpdate& a, const EdgeUpdate& b) {
                  return a.edge < b.edge;
                });
      break;
    case EdgeOrder::Shuffle: {
      SplitMix64 rng(derive_seed(seed, kShuffleTag));
      for (size_t i = s.updates_.size(); i > 1; --i) {
        size_t j = uniform_below(rng, i);
        std::swap(s.updates_[i - 1], s.updates_[j]);
      }
      break;
    }
  }
  return s;
}

EdgeStream EdgeStream::from_graph(const DirectedGraph& g,
                                  const std::vector<Edge>& order) {
  std::vector<Edge> want(g.edges());
  std::vector<Edge> got(order);
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  if (want != got) {
    throw OrderingMismatch("custom order is not a permutation of the edge set");
  }
  EdgeStream s;
  s.n_ = g.vertex_count();
  s.updates_.reserve(order.size());
  for (const Edge& e : order) s.updates_.push_back({e, true});
  return s;
}

namespace {

void validate_turnstile(uint32_t n, const std::vector<EdgeUpdate>& updates) {
  std::map<Edge, int64_t> net;
  for (const EdgeUpdate& u : updates) {
    if (u.edge.from >= n || u.edge.to >= n) {
      throw InvalidTurnstile("update endpoint out of range");
    }
    net[u.edge] += u.insert ? 1 : -1;
  }
  for (const auto& [e, c] : net) {
    if (c != 0 && c != 1) {
      throw InvalidTurnstile("edge " + std::to_string(e.from) + " -> " +
                             std::to_string(e.to) + " has net count " +
                             std::to_string(c));
    }
  }
}

}  // namespace

EdgeStream EdgeStream::read_turnstile(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) throw ParseError("missing vertex count");
  long long n = 0;
  try {
    for (char c : tok)
      if (c < '0' || c > '9') throw std::invalid_argument(tok);
    n = std::stoll(tok);
  } catch (const std::exception&) {
    throw ParseError("invalid vertex count '" + tok + "'");
  }
  if (n < 0 || n > UINT32_MAX) throw ParseError("vertex count out of range");

  std::vector<EdgeUpdate> updates;
  std::string sign;
  while (in >> sign) {
    if (sign != "+" && sign != "-") {
      throw ParseError("expected '+' or '-', got '" + sign + "'");
    }
    long long u = 0;
    long long v = 0;
    if (!(in >> u >> v)) throw ParseError("update line missing vertex ids");
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParseError("update endpoint out of range");
    }
    updates.push_back({{static_cast<uint32_t>(u), static_cast<uint32_t>(v)},
                       sign == "+"});
  }
  return from_updates(static_cast<uint32_t>(n), std::move(updates));
}

EdgeStream EdgeStream::from_updates(uint32_t n, std::vector<EdgeUpdate> updates) {
  validate_turnstile(n, updates);
  EdgeStream s;
  s.n_ = n;
  s.turnstile_ = true;
  s.updates_ = std::move(updates);
  return s;
}

EdgeStream EdgeStream::as_turnstile() const {
  EdgeStream s(*this);
  s.turnstile_ = true;
  s.passes_.store(0, std::memory_order_relaxed);  // fresh stream, fresh count
  return s;
}

DirectedGraph EdgeStream::final_graph() const {
  std::map<Edge, int64_t> net;
  for (const EdgeUpdate& u : updates_) net[u.edge] += u.insert ? 1 : -1;
  DirectedGraph g(n_);
  if (!turnstile_) {
    // Insertion order is meaningful for insertion-only streams.
    for (const EdgeUpdate& u : updates_) g.add_edge(u.edge.from, u.edge.to);
    return g;
  }
  for (const auto& [e, c] : net) {
    if (c == 1) g.add_edge(e.from, e.to);
  }
  return g;
}

void EdgeStream::write(std::ostream& out) const {
  out << n_ << "\n";
  for (const EdgeUpdate& u : updates_) {
    if (turnstile_) out << (u.insert ? "+ " : "- ");
    out << u.edge.from << " " << u.edge.to << "\n";
  }
}

}  // namespace rwstream
