#include "rwstream/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <string>

namespace rwstream {

namespace {
constexpr uint64_t kWalkSimTag = 0x77a1c;
constexpr uint64_t kHistTag = 0x415773;

std::string walk_key(const Walk& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << w[i];
  }
  return os.str();
}

void check_vertex(const DirectedGraph& g, uint32_t u, const char* what) {
  if (u >= g.vertex_count()) {
    throw std::invalid_argument(std::string(what) + " out of range");
  }
}

// Throws if a walk of `steps` steps from u can get stuck, i.e. some vertex
// with out-degree 0 is reachable within steps-1 steps.
void check_dead_ends(const DirectedGraph& g, uint32_t u, uint32_t steps) {
  if (steps == 0) return;
  if (!g.has_dead_end()) return;
  std::vector<uint32_t> dist(g.vertex_count(), UINT32_MAX);
  std::deque<uint32_t> queue;
  dist[u] = 0;
  queue.push_back(u);
  while (!queue.empty()) {
    uint32_t x = queue.front();
    queue.pop_front();
    if (g.out_degree(x) == 0) throw DeadEndError(x);
    if (dist[x] + 1 > steps - 1) continue;
    for (uint32_t y : g.out_neighbors(x)) {
      if (dist[y] == UINT32_MAX) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
}

}  // namespace

TransitionModel::TransitionModel(const DirectedGraph& g) {
  uint32_t n = g.vertex_count();
  offsets_.assign(n + 1, 0);
  for (uint32_t u = 0; u < n; ++u) {
    offsets_[u + 1] = offsets_[u] + g.out_degree(u);
  }
  targets_.reserve(offsets_[n]);
  for (uint32_t u = 0; u < n; ++u) {
    for (uint32_t v : g.out_neighbors(u)) targets_.push_back(v);
  }
}

Walk TransitionModel::simulate_walk(uint32_t u_start, uint32_t steps,
                                    uint64_t seed) const {
  SplitMix64 rng(derive_seed(seed, kWalkSimTag));
  Walk w;
  w.reserve(steps + 1);
  w.push_back(u_start);
  uint32_t cur = u_start;
  for (uint32_t i = 0; i < steps; ++i) {
    cur = step(cur, rng);
    w.push_back(cur);
  }
  return w;
}

double visit_probability(const DirectedGraph& g, uint32_t u, uint32_t v,
                         uint32_t a, uint32_t b, const OracleLimits& limits) {
  check_vertex(g, u, "source vertex");
  check_vertex(g, v, "target vertex");
  if (a > b) throw std::invalid_argument("window start exceeds window end");
  if (b > limits.max_steps) {
    throw CapExceeded("step count " + std::to_string(b) + " over cap " +
                      std::to_string(limits.max_steps));
  }
  check_dead_ends(g, u, b);

  uint32_t n = g.vertex_count();
  std::vector<double> cur(n, 0.0);
  std::vector<double> nxt(n, 0.0);
  std::vector<uint32_t> cur_active;
  std::vector<uint32_t> nxt_active;
  cur[u] = 1.0;
  cur_active.push_back(u);
  double acc = 0.0;

  for (uint32_t t = 0;; ++t) {
    if (t >= a && cur[v] > 0.0) {
      acc += cur[v];
      cur[v] = 0.0;
    }
    if (t == b) break;
    for (uint32_t x : cur_active) {
      double p = cur[x];
      cur[x] = 0.0;
      if (p == 0.0) continue;
      const auto& nb = g.out_neighbors(x);
      double share = p / static_cast<double>(nb.size());
      for (uint32_t y : nb) {
        if (nxt[y] == 0.0) nxt_active.push_back(y);
        nxt[y] += share;
      }
    }
    cur.swap(nxt);
    cur_active.swap(nxt_active);
    nxt_active.clear();
  }
  return acc;
}

double revisit_probability(const DirectedGraph& g, uint32_t u, uint32_t ell,
                           const OracleLimits& limits) {
  return visit_probability(g, u, u, 1, ell, limits);
}

std::vector<VertexClass> classify_exact(const DirectedGraph& g, uint32_t ell,
                                        const OracleLimits& limits) {
  if (ell == 0) throw std::invalid_argument("ell must be >= 1");
  constexpr double kEps = 1e-9;
  std::vector<VertexClass> out(g.vertex_count());
  for (uint32_t u = 0; u < g.vertex_count(); ++u) {
    double p = revisit_probability(g, u, ell, limits);
    bool heavy = p >= 1.0 / 3.0 - kEps;
    bool light = p <= 2.0 / 3.0 + kEps;
    out[u] = heavy ? (light ? VertexClass::Both : VertexClass::Heavy)
                   : VertexClass::Light;
  }
  return out;
}

nlohmann::json WalkDistribution::to_json() const {
  nlohmann::json walks = nlohmann::json::object();
  for (const auto& [w, p] : probs) walks[walk_key(w)] = p;
  return nlohmann::json{{"mass", total_mass}, {"walks", walks}};
}

WalkDistribution exact_walk_distribution(const DirectedGraph& g, uint32_t u_start,
                                         uint32_t steps,
                                         const OracleLimits& limits) {
  check_vertex(g, u_start, "start vertex");
  check_dead_ends(g, u_start, steps);

  // Count walks first; bail before enumerating an infeasible support.
  {
    uint32_t n = g.vertex_count();
    std::vector<double> ways(n, 0.0);
    std::vector<double> nxt(n, 0.0);
    ways[u_start] = 1.0;
    for (uint32_t t = 0; t < steps; ++t) {
      double total = 0.0;
      std::fill(nxt.begin(), nxt.end(), 0.0);
      for (uint32_t x = 0; x < n; ++x) {
        if (ways[x] == 0.0) continue;
        for (uint32_t y : g.out_neighbors(x)) nxt[y] += ways[x];
      }
      for (double c : nxt) total += c;
      if (total > limits.max_walks) {
        throw BudgetExceeded("walk enumeration needs " + std::to_string(total) +
                             " walks, budget " + std::to_string(limits.max_walks));
      }
      ways.swap(nxt);
    }
  }

  TransitionModel m(g);
  WalkDistribution dist;
  Walk walk;
  walk.reserve(steps + 1);
  walk.push_back(u_start);
  std::vector<uint32_t> choice(steps, 0);
  std::vector<double> prefix(steps + 1, 0.0);
  prefix[0] = 1.0;
  size_t t = 0;
  while (true) {
    if (t == steps) {
      dist.probs.emplace(walk, prefix[t]);
      dist.total_mass += prefix[t];
      bool more = false;
      while (t > 0) {
        --t;
        walk.pop_back();
        if (++choice[t] < m.out_degree(walk[t])) {
          more = true;
          break;
        }
      }
      if (!more) break;
    }
    auto nb = m.out(walk[t]);
    uint32_t y = nb[choice[t]];
    prefix[t + 1] = prefix[t] / static_cast<double>(nb.size());
    walk.push_back(y);
    ++t;
    if (t < steps) choice[t] = 0;
  }
  return dist;
}

void WalkSample::merge(const WalkSample& other) {
  for (const auto& [w, c] : other.counts) counts[w] += c;
  total += other.total;
}

uint64_t WalkSample::drawn() const {
  uint64_t d = 0;
  for (const auto& [w, c] : counts) d += c;
  return d;
}

TvEstimate tv_distance(const WalkDistribution& p, const WalkSample& q) {
  if (q.total == 0) throw std::invalid_argument("empirical sample is empty");
  const double nq = static_cast<double>(q.total);
  double sum = 0.0;
  uint64_t union_size = 0;
  auto it_p = p.probs.begin();
  auto it_q = q.counts.begin();
  while (it_p != p.probs.end() || it_q != q.counts.end()) {
    ++union_size;
    if (it_q == q.counts.end() ||
        (it_p != p.probs.end() && it_p->first < it_q->first)) {
      sum += it_p->second;
      ++it_p;
    } else if (it_p == p.probs.end() || it_q->first < it_p->first) {
      sum += static_cast<double>(it_q->second) / nq;
      ++it_q;
    } else {
      sum += std::abs(it_p->second - static_cast<double>(it_q->second) / nq);
      ++it_p;
      ++it_q;
    }
  }
  // Draws that produced no walk sit outside the exact support.
  double missing = 1.0 - static_cast<double>(q.drawn()) / nq;
  TvEstimate est;
  est.estimate = 0.5 * (sum + missing);
  est.radius = std::sqrt(static_cast<double>(union_size) / (2.0 * nq));
  est.paired = false;
  return est;
}

TvEstimate tv_distance_paired(const WalkSample& a, const WalkSample& b) {
  if (a.total == 0 || b.total == 0) {
    throw std::invalid_argument("empirical sample is empty");
  }
  const double na = static_cast<double>(a.total);
  const double nb = static_cast<double>(b.total);
  double sum = 0.0;
  uint64_t union_size = 0;
  auto it_a = a.counts.begin();
  auto it_b = b.counts.begin();
  while (it_a != a.counts.end() || it_b != b.counts.end()) {
    ++union_size;
    if (it_b == b.counts.end() ||
        (it_a != a.counts.end() && it_a->first < it_b->first)) {
      sum += static_cast<double>(it_a->second) / na;
      ++it_a;
    } else if (it_a == a.counts.end() || it_b->first < it_a->first) {
      sum += static_cast<double>(it_b->second) / nb;
      ++it_b;
    } else {
      sum += std::abs(static_cast<double>(it_a->second) / na -
                      static_cast<double>(it_b->second) / nb);
      ++it_a;
      ++it_b;
    }
  }
  double missing = std::abs((1.0 - static_cast<double>(a.drawn()) / na) -
                            (1.0 - static_cast<double>(b.drawn()) / nb));
  TvEstimate est;
  est.estimate = 0.5 * (sum + missing);
  est.radius = std::sqrt(static_cast<double>(union_size) / (2.0 * na)) +
               std::sqrt(static_cast<double>(union_size) / (2.0 * nb));
  est.paired = true;
  return est;
}

std::map<uint64_t, uint64_t> visit_count_distribution(const DirectedGraph& g,
                                                      uint32_t u_start, uint32_t v,
                                                      uint32_t steps,
                                                      uint64_t trials,
                                                      uint64_t seed) {
  check_vertex(g, u_start, "start vertex");
  check_vertex(g, v, "target vertex");
  check_dead_ends(g, u_start, steps);
  TransitionModel m(g);
  std::map<uint64_t, uint64_t> hist;
  for (uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_seed(seed, kHistTag, t));
    uint32_t cur = u_start;
    uint64_t visits = 0;
    for (uint32_t i = 0; i < steps; ++i) {
      cur = m.step(cur, rng);
      if (cur == v) ++visits;
    }
    ++hist[visits];
  }
  return hist;
}

nlohmann::json histogram_to_json(const std::map<uint64_t, uint64_t>& hist,
                                 uint64_t trials) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [k, c] : hist) rows.push_back({k, c});
  return nlohmann::json{{"trials", trials}, {"histogram", rows}};
}

}  // namespace rwstream
