#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rwstream/graph.hpp"

namespace rwstream {

struct EdgeUpdate {
  Edge edge;
  bool insert = true;  // false = deletion (turnstile only)
  friend bool operator==(const EdgeUpdate&, const EdgeUpdate&) = default;
};

enum class EdgeOrder { AsGiven, Lexicographic, Shuffle };

// Replayable edge stream. Insertion-only streams hold each edge once;
// turnstile streams hold signed updates whose net count per edge is 0 or 1
// at the end. Replays always yield the identical sequence; the stream counts
// completed replays so samplers can prove their pass budget.
class EdgeStream {
 public:
  // Single-consumer cursor over the update sequence. Reaching the end once
  // counts one completed pass on the owning stream.
  class Replay {
   public:
    std::optional<EdgeUpdate> next();
    const EdgeStream& stream() const { return *owner_; }

   private:
    friend class EdgeStream;
    explicit Replay(const EdgeStream* owner) : owner_(owner) {}
    const EdgeStream* owner_;
    size_t pos_ = 0;
    bool finished_ = false;
  };

  EdgeStream() = default;
  EdgeStream(const EdgeStream& other);
  EdgeStream& operator=(const EdgeStream& other);

  static EdgeStream from_graph(const DirectedGraph& g, EdgeOrder order,
                               uint64_t seed = 0);
  // Custom order; throws OrderingMismatch unless `order` is a permutation of
  // the graph's edge set.
  static EdgeStream from_graph(const DirectedGraph& g,
                               const std::vector<Edge>& order);

  // Turnstile text format: first line "n", then "+ u v" / "- u v" lines.
  // Validates the net-count invariant at end of parse.
  static EdgeStream read_turnstile(std::istream& in);
  static EdgeStream from_updates(uint32_t n, std::vector<EdgeUpdate> updates);

  // View of an insertion-only stream as a turnstile stream (all inserts).
  EdgeStream as_turnstile() const;

  Replay replay() const { return Replay(this); }
  uint32_t vertex_count() const { return n_; }
  size_t update_count() const { return updates_.size(); }
  bool is_turnstile() const { return turnstile_; }
  const std::vector<EdgeUpdate>& updates() const { return updates_; }

  // Completed replays so far.
  uint64_t pass_count() const { return passes_.load(std::memory_order_relaxed); }

  // Net result of the update sequence.
  DirectedGraph final_graph() const;

  // Lossless text form (edge-list for insertion-only, turnstile otherwise).
  void write(std::ostream& out) const;

 private:
  void note_pass_completed() const {
    passes_.fetch_add(1, std::memory_order_relaxed);
  }

  uint32_t n_ = 0;
  bool turnstile_ = false;
  std::vector<EdgeUpdate> updates_;
  mutable std::atomic<uint64_t> passes_{0};
};

}  // namespace rwstream
