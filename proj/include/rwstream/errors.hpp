#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rwstream {

// Input-format errors (edge-list / turnstile text files).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicateEdge : ParseError {
  using ParseError::ParseError;
};

struct InvalidTurnstile : ParseError {
  using ParseError::ParseError;
};

// Custom stream ordering is not a permutation of the graph's edge set.
struct OrderingMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A walk had to step out of a vertex with no out-edges; the walk
// distribution is undefined there.
struct DeadEndError : std::runtime_error {
  explicit DeadEndError(uint32_t v)
      : std::runtime_error("walk reached dead-end vertex " + std::to_string(v)),
        vertex(v) {}
  uint32_t vertex;
};

// Oracle step cap (visit probabilities) exceeded.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Oracle enumeration budget (exact walk distributions) exceeded.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A turnstile sketch failed on a vertex whose neighbors were needed.
struct SketchFailure : std::runtime_error {
  explicit SketchFailure(uint32_t v)
      : std::runtime_error("sketch failure on vertex " + std::to_string(v)),
        vertex(v) {}
  uint32_t vertex;
};

}  // namespace rwstream
