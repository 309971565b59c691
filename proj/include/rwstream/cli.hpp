#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rwstream/oracle.hpp"
#include "rwstream/stream.hpp"

namespace rwstream {

namespace exit_code {
constexpr int ok = 0;
constexpr int usage = 2;
constexpr int walk_failure = 10;
constexpr int dead_end = 11;
constexpr int sketch_failure = 12;
constexpr int parse = 13;
constexpr int budget = 14;
}  // namespace exit_code

// Repeated independent sampler runs with per-trial derived seeds. Trials are
// spread across a worker pool; the merged outcome is identical for any
// partition. algo is one of "folklore", "two-pass", "turnstile".
struct TrialOutcome {
  WalkSample sample;
  uint64_t failures = 0;         // walk failures (exhausted sampled list)
  uint64_t sketch_failures = 0;  // turnstile sketch failures
};

TrialOutcome run_sampler_trials(const EdgeStream& stream, const std::string& algo,
                                uint32_t start, uint32_t steps, double delta,
                                uint32_t c1, uint32_t c2, uint64_t seed,
                                uint64_t trials);

struct BenchRow {
  std::string algorithm;
  uint32_t n = 0;
  uint32_t steps = 0;
  double delta = 0.0;
  uint32_t c1 = 0;
  uint32_t c2 = 0;
  uint32_t gamma = 0;  // 0 for folklore
  uint32_t ell = 0;    // 0 for folklore
  uint64_t trials = 0;
  uint64_t seed = 0;
  uint64_t peak_words = 0;
  uint64_t pass_count = 0;
  std::optional<double> empirical_tv;
  std::optional<double> failure_rate;
  double wall_time_ms = 0.0;
};

struct BenchSpec {
  const EdgeStream* stream = nullptr;  // insertion-only source
  std::vector<std::string> algorithms{"folklore", "two-pass"};
  std::vector<uint32_t> steps_list;
  double delta = 0.25;
  uint32_t c1 = 1;
  uint32_t c2 = 8;
  uint32_t start = 0;
  uint64_t trials = 0;  // 0 = space measurement only
  uint64_t seed = 0;
  bool timings = false;
};

std::vector<BenchRow> run_bench(const BenchSpec& spec);

std::string bench_to_csv(const std::vector<BenchRow>& rows);
nlohmann::json bench_to_json(const std::vector<BenchRow>& rows);

// Entry point behind the rwstream binary; returns a process exit code.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace rwstream
