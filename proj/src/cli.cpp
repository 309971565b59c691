#include "rwstream/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>

#include "rwstream/errors.hpp"
#include "rwstream/instances.hpp"
#include "rwstream/one_pass.hpp"
#include "rwstream/parallel.hpp"
#include "rwstream/turnstile.hpp"
#include "rwstream/two_pass.hpp"

namespace rwstream {

namespace {

constexpr uint64_t kTrialTag = 0x7121;

std::string format_walk(const Walk& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << w[i];
  }
  return os.str();
}

// "name:key=value,key=value" generator specs
std::map<std::string, std::string> parse_kv(const std::string& body) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("generator parameter '" + item +
                                  "' is not key=value");
    }
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

uint64_t kv_num(const std::map<std::string, std::string>& kv,
                const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    throw std::invalid_argument("generator spec missing parameter '" + key + "'");
  }
  return std::stoull(it->second);
}

struct GraphSource {
  DirectedGraph graph;
  EdgeStream stream;
  nlohmann::json sidecar;
};

GraphSource resolve_generator(const std::string& spec, uint64_t seed) {
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  auto kv = colon == std::string::npos
                ? std::map<std::string, std::string>{}
                : parse_kv(spec.substr(colon + 1));
  GraphSource src;
  if (name == "star") {
    src.graph = gen_star(static_cast<uint32_t>(kv_num(kv, "n")));
    src.sidecar = {{"type", "star"}, {"n", src.graph.vertex_count()}};
  } else if (name == "cycle") {
    src.graph = gen_cycle(static_cast<uint32_t>(kv_num(kv, "n")));
    src.sidecar = {{"type", "cycle"}, {"n", src.graph.vertex_count()}};
  } else if (name == "complete") {
    src.graph = gen_complete(static_cast<uint32_t>(kv_num(kv, "n")));
    src.sidecar = {{"type", "complete"}, {"n", src.graph.vertex_count()}};
  } else if (name == "random") {
    auto n = static_cast<uint32_t>(kv_num(kv, "n"));
    auto dout = static_cast<uint32_t>(kv_num(kv, "dout"));
    src.graph = gen_random_graph(n, dout, seed);
    src.sidecar = {{"type", "random"}, {"n", n}, {"dout", dout}, {"seed", seed}};
  } else if (name == "hard") {
    HardInstanceParams params;
    params.layer_size = static_cast<uint32_t>(kv_num(kv, "n"));
    params.passes = static_cast<uint32_t>(kv_num(kv, "p"));
    params.degree = static_cast<uint32_t>(kv_num(kv, "degree"));
    params.seed = seed;
    HardInstance inst = gen_hard_instance(params);
    src.graph = inst.graph;
    src.stream = inst.stream;
    src.sidecar = inst.sidecar();
    src.sidecar["n"] = params.layer_size;
    src.sidecar["p"] = params.passes;
    src.sidecar["degree"] = params.degree;
    src.sidecar["seed"] = seed;
    return src;
  } else if (name == "gadget") {
    GadgetParams params;
    params.tau = static_cast<uint32_t>(kv_num(kv, "tau"));
    params.bits = kv.count("bits") ? kv.at("bits")
                                   : random_bits(params.tau * params.tau, seed);
    IndexGadget gadget = gen_index_gadget(params);
    src.graph = gadget.graph;
    src.stream = EdgeStream::from_graph(src.graph, EdgeOrder::Lexicographic);
    src.sidecar = gadget.sidecar();
    return src;
  } else {
    throw std::invalid_argument("unknown generator '" + name + "'");
  }
  src.stream = EdgeStream::from_graph(src.graph, EdgeOrder::AsGiven);
  return src;
}

GraphSource load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  // Sniff the format: turnstile lines start with '+' or '-'.
  std::string first_line;
  std::string second_line;
  std::getline(in, first_line);
  std::getline(in, second_line);
  in.clear();
  in.seekg(0);
  GraphSource src;
  if (!second_line.empty() && (second_line[0] == '+' || second_line[0] == '-')) {
    src.stream = EdgeStream::read_turnstile(in);
    src.graph = src.stream.final_graph();
  } else {
    src.graph = DirectedGraph::read_edge_list(in);
    src.stream = EdgeStream::from_graph(src.graph, EdgeOrder::AsGiven);
  }
  src.sidecar = {{"type", "file"}, {"path", path}};
  return src;
}

GraphSource resolve_source(const std::string& gen_spec,
                           const std::string& graph_path, uint64_t seed) {
  if (!gen_spec.empty() && !graph_path.empty()) {
    throw std::invalid_argument("--gen and --graph are mutually exclusive");
  }
  if (gen_spec.empty() && graph_path.empty()) {
    throw std::invalid_argument("one of --gen or --graph is required");
  }
  return gen_spec.empty() ? load_graph_file(graph_path)
                          : resolve_generator(gen_spec, seed);
}

void write_text(const std::string& path, const std::string& text,
                std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
  f << text;
}

struct CommonOptions {
  std::string gen_spec;
  std::string graph_path;
  std::string algo = "folklore";
  std::string out;
  std::string format = "json";
  uint32_t start = 0;
  uint32_t steps = 1;
  double delta = 0.05;
  uint32_t c1 = 48;
  uint32_t c2 = 8;
  uint64_t trials = 0;
  uint64_t seed = 0;
  bool timings = false;
  bool paired = false;
};

void add_source_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--gen", opt.gen_spec,
                  "generator spec, e.g. star:n=101 | cycle:n=5 | complete:n=4 | "
                  "random:n=50,dout=3 | hard:n=8,p=2,degree=3 | gadget:tau=3");
  cmd->add_option("--graph", opt.graph_path, "edge-list or turnstile file");
  cmd->add_option("--seed", opt.seed, "master seed");
}

nlohmann::json resolved_config_json(const CommonOptions& opt, uint32_t n) {
  nlohmann::json j{{"algorithm", opt.algo}, {"n", n},       {"steps", opt.steps},
                   {"seed", opt.seed},      {"start", opt.start}};
  if (opt.algo != "folklore") {
    TwoPassConfig cfg;
    cfg.steps = opt.steps;
    cfg.delta = opt.delta;
    cfg.c1 = opt.c1;
    cfg.c2 = opt.c2;
    cfg.validate();
    j["delta"] = opt.delta;
    j["c1"] = opt.c1;
    j["c2"] = opt.c2;
    j["gamma"] = cfg.gamma();
    j["ell"] = cfg.ell();
  }
  return j;
}

void warn_delta_range(const CommonOptions& opt, uint32_t n, std::ostream& err) {
  if (opt.algo != "folklore" && n > 0 && opt.delta >= 1.0 / n) {
    err << "warning: delta " << opt.delta << " >= 1/n; the error guarantee is "
        << "only established for delta < 1/n\n";
  }
}

int cmd_gen(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  (void)err;
  GraphSource src = resolve_source(opt.gen_spec, opt.graph_path, opt.seed);
  std::ostringstream graph_text;
  src.stream.write(graph_text);
  write_text(opt.out, graph_text.str(), out);
  if (!opt.out.empty()) {
    std::ofstream sidecar(opt.out + ".json");
    sidecar << src.sidecar.dump() << "\n";
  } else {
    out << src.sidecar.dump() << "\n";
  }
  return exit_code::ok;
}

// Builds the preprocessing table for the oblivious split: the table knows
// nothing about the walk start.
int cmd_preprocess(const CommonOptions& opt, std::ostream& out,
                   std::ostream& err) {
  GraphSource src = resolve_source(opt.gen_spec, opt.graph_path, opt.seed);
  warn_delta_range(opt, src.stream.vertex_count(), err);
  NeighborTable table;
  SpaceReport report;
  if (opt.algo == "folklore") {
    SamplerConfig cfg;
    cfg.tau = std::max<uint32_t>(1, opt.steps);
    cfg.cap_factor = opt.c2;
    cfg.seed = derive_seed(opt.seed, 0xf01c);
    table = preprocess(src.stream.replay(), {}, cfg);
    report.pass_count = 1;
    report.pass1_peak_words = table.stored_words;
    report.operated_correctly = table.operated_correctly;
  } else if (opt.algo == "two-pass") {
    TwoPassConfig cfg{opt.steps, opt.delta, opt.c1, opt.c2, opt.seed};
    auto fp = first_pass(src.stream.replay(), cfg);
    table = second_pass(src.stream.replay(), fp.estimate, cfg);
    report.pass_count = 2;
    report.pass1_peak_words = fp.stored_words;
    report.pass2_peak_words = table.stored_words;
    report.heavy_count = fp.estimate.heavy_count();
    report.gamma = fp.estimate.gamma;
    report.ell = fp.estimate.ell;
    report.operated_correctly = fp.operated_correctly && table.operated_correctly;
  } else if (opt.algo == "turnstile") {
    TurnstileConfig cfg;
    cfg.base = TwoPassConfig{opt.steps, opt.delta, opt.c1, opt.c2, opt.seed};
    EdgeStream ts = src.stream.is_turnstile() ? src.stream : src.stream.as_turnstile();
    auto res = turnstile_preprocess(ts, cfg);
    table = std::move(res.table);
    report = res.report;
  } else {
    throw std::invalid_argument("unknown algorithm '" + opt.algo + "'");
  }
  nlohmann::json doc{{"table", table.to_json()}, {"report", report.to_json()}};
  doc["config"] = resolved_config_json(opt, src.stream.vertex_count());
  write_text(opt.out, doc.dump() + "\n", out);
  return exit_code::ok;
}

// Walks off a stored table instead of a graph source.
int cmd_sample_from_table(const CommonOptions& opt, const std::string& table_path,
                          std::ostream& out, std::ostream& err) {
  std::ifstream in(table_path);
  if (!in) throw ParseError("cannot open table file '" + table_path + "'");
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ParseError("table file is not valid json");
  NeighborTable table = NeighborTable::from_json(
      doc.contains("table") ? doc.at("table") : doc);
  if (opt.start >= table.n) {
    throw std::invalid_argument("start vertex out of range");
  }
  auto walk = sample_walk(table, opt.start, opt.steps, derive_seed(opt.seed, 0x7ab1e));
  if (!walk) {
    err << "sampler reported failure (a sampled vertex's list was exhausted)\n";
    return exit_code::walk_failure;
  }
  write_text(opt.out, format_walk(*walk) + "\n", out);
  return exit_code::ok;
}

int cmd_sample(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  GraphSource src = resolve_source(opt.gen_spec, opt.graph_path, opt.seed);
  const uint32_t n = src.stream.vertex_count();
  if (opt.start >= n) throw std::invalid_argument("start vertex out of range");
  warn_delta_range(opt, n, err);

  std::optional<Walk> walk;
  SpaceReport report;
  if (opt.algo == "folklore") {
    SamplerConfig cfg;
    cfg.tau = std::max<uint32_t>(1, opt.steps);
    cfg.cap_factor = opt.c2;
    cfg.seed = derive_seed(opt.seed, 0xf01c);
    NeighborTable table = preprocess(src.stream.replay(), {}, cfg);
    walk = sample_walk(table, opt.start, opt.steps, derive_seed(opt.seed, 0xf02c));
    report.pass_count = 1;
    report.pass1_peak_words = table.stored_words;
    report.operated_correctly = table.operated_correctly;
  } else if (opt.algo == "two-pass") {
    TwoPassConfig cfg{opt.steps, opt.delta, opt.c1, opt.c2, opt.seed};
    PipelineResult res = run_pipeline(src.stream, opt.start, cfg);
    walk = res.walk;
    report = res.report;
  } else if (opt.algo == "turnstile") {
    TurnstileConfig cfg;
    cfg.base = TwoPassConfig{opt.steps, opt.delta, opt.c1, opt.c2, opt.seed};
    EdgeStream ts = src.stream.is_turnstile() ? src.stream : src.stream.as_turnstile();
    auto res = run_turnstile_pipeline(ts, opt.start, cfg);
    walk = res.walk;
    report = res.report;
  } else {
    throw std::invalid_argument("unknown algorithm '" + opt.algo + "'");
  }

  nlohmann::json report_json = report.to_json();
  report_json["config"] = resolved_config_json(opt, n);
  if (!walk) {
    err << "sampler reported failure (a sampled vertex's list was exhausted)\n";
    err << report_json.dump() << "\n";
    return exit_code::walk_failure;
  }
  if (opt.out.empty()) {
    out << format_walk(*walk) << "\n" << report_json.dump() << "\n";
  } else {
    write_text(opt.out, format_walk(*walk) + "\n", out);
    std::ofstream rf(opt.out + ".report.json");
    rf << report_json.dump() << "\n";
  }
  return exit_code::ok;
}

int cmd_verify(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.trials == 0) throw std::invalid_argument("--trials must be >= 1");
  GraphSource src = resolve_source(opt.gen_spec, opt.graph_path, opt.seed);
  const uint32_t n = src.stream.vertex_count();
  if (opt.start >= n) throw std::invalid_argument("start vertex out of range");
  warn_delta_range(opt, n, err);

  std::optional<WalkDistribution> exact;
  try {
    exact = exact_walk_distribution(src.stream.final_graph(), opt.start, opt.steps);
  } catch (const BudgetExceeded&) {
    if (!opt.paired) throw;
  }

  nlohmann::json report{{"config", resolved_config_json(opt, n)},
                        {"trials", opt.trials}};
  TvEstimate tv;
  uint64_t failures = 0;
  uint64_t sketch_failures = 0;
  if (exact) {
    TrialOutcome outcome =
        run_sampler_trials(src.stream, opt.algo, opt.start, opt.steps, opt.delta,
                           opt.c1, opt.c2, opt.seed, opt.trials);
    failures = outcome.failures;
    sketch_failures = outcome.sketch_failures;
    tv = tv_distance(*exact, outcome.sample);
  } else {
    // Exact support over budget: compare two independent sampler runs.
    uint64_t half_a = (opt.trials + 1) / 2;
    uint64_t half_b = opt.trials / 2;
    if (half_b == 0) throw std::invalid_argument("--paired needs >= 2 trials");
    TrialOutcome a =
        run_sampler_trials(src.stream, opt.algo, opt.start, opt.steps, opt.delta,
                           opt.c1, opt.c2, derive_seed(opt.seed, 0xa), half_a);
    TrialOutcome b =
        run_sampler_trials(src.stream, opt.algo, opt.start, opt.steps, opt.delta,
                           opt.c1, opt.c2, derive_seed(opt.seed, 0xb), half_b);
    failures = a.failures + b.failures;
    sketch_failures = a.sketch_failures + b.sketch_failures;
    tv = tv_distance_paired(a.sample, b.sample);
  }
  report["failure_rate"] =
      static_cast<double>(failures) / static_cast<double>(opt.trials);
  report["sketch_failures"] = sketch_failures;
  report["tv_estimate"] = tv.estimate;
  report["confidence_radius"] = tv.radius;
  report["paired"] = tv.paired;

  if (opt.algo != "folklore") {
    TwoPassConfig cfg{opt.steps, opt.delta, opt.c1, opt.c2,
                      derive_seed(opt.seed, 0xc1a55)};
    HeavyLightEstimate est;
    if (opt.algo == "turnstile") {
      TurnstileConfig tcfg;
      tcfg.base = cfg;
      EdgeStream ts =
          src.stream.is_turnstile() ? src.stream : src.stream.as_turnstile();
      est = turnstile_preprocess(ts, tcfg).estimate;
    } else {
      est = first_pass(src.stream.replay(), cfg).estimate;
    }
    report["heavy_light_estimate"] = est.to_json();
    auto classes = classify_exact(src.stream.final_graph(), cfg.ell());
    bool sound = true;
    nlohmann::json rows = nlohmann::json::array();
    for (uint32_t u = 0; u < n; ++u) {
      bool est_heavy = est.heavy[u];
      bool ok = est_heavy ? classes[u] != VertexClass::Light
                          : classes[u] != VertexClass::Heavy;
      sound = sound && ok;
      rows.push_back({{"vertex", u},
                      {"estimated", est_heavy ? "heavy" : "light"},
                      {"exact", classes[u] == VertexClass::Heavy   ? "heavy"
                                : classes[u] == VertexClass::Light ? "light"
                                                                   : "both"},
                      {"consistent", ok}});
    }
    report["classification"] = {{"sound", sound}, {"vertices", rows}};
  }

  write_text(opt.out, report.dump() + "\n", out);
  return exit_code::ok;
}

int cmd_bench(const CommonOptions& opt, const std::vector<uint32_t>& steps_list,
              const std::vector<std::string>& algos, std::ostream& out,
              std::ostream& err) {
  if (steps_list.empty()) throw std::invalid_argument("--steps list is empty");
  GraphSource src = resolve_source(opt.gen_spec, opt.graph_path, opt.seed);
  warn_delta_range(opt, src.stream.vertex_count(), err);

  BenchSpec spec;
  spec.stream = &src.stream;
  spec.algorithms = algos;
  spec.steps_list = steps_list;
  spec.delta = opt.delta;
  spec.c1 = opt.c1;
  spec.c2 = opt.c2;
  spec.start = opt.start;
  spec.trials = opt.trials;
  spec.seed = opt.seed;
  spec.timings = opt.timings;
  auto rows = run_bench(spec);

  std::string text = opt.format == "csv" ? bench_to_csv(rows)
                                         : bench_to_json(rows).dump() + "\n";
  write_text(opt.out, text, out);
  return exit_code::ok;
}

struct OracleOptions {
  std::string op = "dist";
  uint32_t u = 0;
  uint32_t v = 0;
  uint32_t a = 0;
  uint32_t b = 0;
  uint32_t ell = 1;
};

int cmd_oracle(const CommonOptions& opt, const OracleOptions& oracle,
               std::ostream& out, std::ostream& err) {
  (void)err;
  GraphSource src = resolve_source(opt.gen_spec, opt.graph_path, opt.seed);
  DirectedGraph g = src.stream.final_graph();
  nlohmann::json report;
  if (oracle.op == "dist") {
    report = exact_walk_distribution(g, opt.start, opt.steps).to_json();
  } else if (oracle.op == "classify") {
    auto classes = classify_exact(g, oracle.ell);
    nlohmann::json labels = nlohmann::json::array();
    nlohmann::json revisit = nlohmann::json::array();
    for (uint32_t u = 0; u < g.vertex_count(); ++u) {
      labels.push_back(classes[u] == VertexClass::Heavy   ? "heavy"
                       : classes[u] == VertexClass::Light ? "light"
                                                          : "both");
      revisit.push_back(revisit_probability(g, u, oracle.ell));
    }
    report = {{"ell", oracle.ell}, {"classes", labels}, {"revisit", revisit}};
  } else if (oracle.op == "visit") {
    report = {{"probability",
               visit_probability(g, oracle.u, oracle.v, oracle.a, oracle.b)}};
  } else if (oracle.op == "histogram") {
    auto hist = visit_count_distribution(g, opt.start, oracle.v, opt.steps,
                                         opt.trials, opt.seed);
    report = histogram_to_json(hist, opt.trials);
  } else {
    throw std::invalid_argument("unknown oracle op '" + oracle.op + "'");
  }
  write_text(opt.out, report.dump() + "\n", out);
  return exit_code::ok;
}

}  // namespace

TrialOutcome run_sampler_trials(const EdgeStream& stream, const std::string& algo,
                                uint32_t start, uint32_t steps, double delta,
                                uint32_t c1, uint32_t c2, uint64_t seed,
                                uint64_t trials) {
  if (algo != "folklore" && algo != "two-pass" && algo != "turnstile") {
    throw std::invalid_argument("unknown algorithm '" + algo + "'");
  }
  EdgeStream turnstile_stream;
  const EdgeStream* ts = &stream;
  if (algo == "turnstile" && !stream.is_turnstile()) {
    turnstile_stream = stream.as_turnstile();
    ts = &turnstile_stream;
  }

  const unsigned workers = worker_count();
  std::vector<TrialOutcome> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  parallel_chunks(trials, [&](unsigned w, uint64_t begin, uint64_t end) {
    TrialOutcome local;
    try {
      for (uint64_t t = begin; t < end; ++t) {
        uint64_t trial_seed = derive_seed(seed, kTrialTag, t);
        try {
          std::optional<Walk> walk;
          if (algo == "folklore") {
            walk = folklore_sample(stream, start, steps, trial_seed);
          } else if (algo == "two-pass") {
            TwoPassConfig cfg{steps, delta, c1, c2, trial_seed};
            walk = run_pipeline(stream, start, cfg).walk;
          } else {
            TurnstileConfig cfg;
            cfg.base = TwoPassConfig{steps, delta, c1, c2, trial_seed};
            walk = run_turnstile_pipeline(*ts, start, cfg).walk;
          }
          if (walk) {
            local.sample.add(*walk);
          } else {
            local.sample.add_failure();
            ++local.failures;
          }
        } catch (const SketchFailure&) {
          local.sample.add_failure();
          ++local.sketch_failures;
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
    partial[w] = std::move(local);
  });
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  TrialOutcome merged;
  for (auto& p : partial) {
    merged.sample.merge(p.sample);
    merged.failures += p.failures;
    merged.sketch_failures += p.sketch_failures;
  }
  return merged;
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  if (spec.stream == nullptr) throw std::invalid_argument("bench needs a stream");
  std::vector<BenchRow> rows;
  EdgeStream turnstile_stream;
  for (const auto& algo : spec.algorithms) {
    for (uint32_t steps : spec.steps_list) {
      BenchRow row;
      row.algorithm = algo;
      row.n = spec.stream->vertex_count();
      row.steps = steps;
      row.delta = spec.delta;
      row.c1 = spec.c1;
      row.c2 = spec.c2;
      row.trials = spec.trials;
      row.seed = spec.seed;

      auto t0 = std::chrono::steady_clock::now();
      if (algo == "folklore") {
        SamplerConfig cfg;
        cfg.tau = std::max<uint32_t>(1, steps);
        cfg.cap_factor = spec.c2;
        cfg.seed = derive_seed(spec.seed, 0xbe7c, steps);
        NeighborTable table = preprocess(spec.stream->replay(), {}, cfg);
        row.peak_words = table.stored_words;
        row.pass_count = 1;
      } else if (algo == "two-pass") {
        TwoPassConfig cfg{steps, spec.delta, spec.c1, spec.c2,
                          derive_seed(spec.seed, 0xbe7c, steps)};
        PipelineResult res = run_pipeline(*spec.stream, spec.start, cfg);
        row.gamma = res.report.gamma;
        row.ell = res.report.ell;
        row.peak_words =
            std::max(res.report.pass1_peak_words, res.report.pass2_peak_words);
        row.pass_count = res.report.pass_count;
      } else if (algo == "turnstile") {
        TurnstileConfig cfg;
        cfg.base = TwoPassConfig{steps, spec.delta, spec.c1, spec.c2,
                                 derive_seed(spec.seed, 0xbe7c, steps)};
        const EdgeStream* ts = spec.stream;
        if (!ts->is_turnstile()) {
          turnstile_stream = ts->as_turnstile();
          ts = &turnstile_stream;
        }
        auto res = run_turnstile_pipeline(*ts, spec.start, cfg);
        row.gamma = res.report.gamma;
        row.ell = res.report.ell;
        row.peak_words =
            std::max(res.report.pass1_peak_words, res.report.pass2_peak_words);
        row.pass_count = res.report.pass_count;
      } else {
        throw std::invalid_argument("unknown algorithm '" + algo + "'");
      }

      if (spec.trials > 0) {
        TrialOutcome outcome =
            run_sampler_trials(*spec.stream, algo, spec.start, steps, spec.delta,
                               spec.c1, spec.c2, spec.seed, spec.trials);
        row.failure_rate = static_cast<double>(outcome.failures) /
                           static_cast<double>(spec.trials);
        try {
          WalkDistribution exact =
              exact_walk_distribution(spec.stream->final_graph(), spec.start, steps);
          row.empirical_tv = tv_distance(exact, outcome.sample).estimate;
        } catch (const BudgetExceeded&) {
          row.empirical_tv = std::nullopt;
        }
      }
      auto t1 = std::chrono::steady_clock::now();
      if (spec.timings) {
        row.wall_time_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "algorithm,n,L,delta,c1,c2,gamma,ell,trials,seed,peak_words,pass_count,"
        "empirical_tv,failure_rate,wall_time_ms\n";
  for (const auto& r : rows) {
    os << r.algorithm << ',' << r.n << ',' << r.steps << ',' << r.delta << ','
       << r.c1 << ',' << r.c2 << ',' << r.gamma << ',' << r.ell << ','
       << r.trials << ',' << r.seed << ',' << r.peak_words << ','
       << r.pass_count << ',';
    if (r.empirical_tv) os << *r.empirical_tv;
    os << ',';
    if (r.failure_rate) os << *r.failure_rate;
    os << ',' << r.wall_time_ms << "\n";
  }
  return os.str();
}

nlohmann::json bench_to_json(const std::vector<BenchRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j{{"algorithm", r.algorithm},
                     {"n", r.n},
                     {"L", r.steps},
                     {"delta", r.delta},
                     {"c1", r.c1},
                     {"c2", r.c2},
                     {"gamma", r.gamma},
                     {"ell", r.ell},
                     {"trials", r.trials},
                     {"seed", r.seed},
                     {"peak_words", r.peak_words},
                     {"pass_count", r.pass_count},
                     {"wall_time_ms", r.wall_time_ms}};
    j["empirical_tv"] = r.empirical_tv ? nlohmann::json(*r.empirical_tv)
                                       : nlohmann::json(nullptr);
    j["failure_rate"] = r.failure_rate ? nlohmann::json(*r.failure_rate)
                                       : nlohmann::json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"streaming random-walk sampling toolkit"};
  app.require_subcommand(1);

  CommonOptions opt;
  OracleOptions oracle;
  std::vector<uint32_t> steps_list;
  std::vector<std::string> algos{"folklore", "two-pass"};

  auto* gen = app.add_subcommand("gen", "generate a graph and write it out");
  add_source_flags(gen, opt);
  gen->add_option("--out", opt.out, "output path (sidecar goes to <out>.json)");

  auto* sample = app.add_subcommand("sample", "run a sampler end to end");
  add_source_flags(sample, opt);
  sample->add_option("--algo", opt.algo, "folklore | two-pass | turnstile");
  sample->add_option("--start", opt.start, "walk start vertex");
  sample->add_option("--steps", opt.steps, "walk length L");
  sample->add_option("--delta", opt.delta, "error parameter");
  sample->add_option("--c1", opt.c1, "gamma constant");
  sample->add_option("--c2", opt.c2, "cap constant");
  sample->add_option("--out", opt.out, "walk output path");

  auto* verify = app.add_subcommand("verify", "compare a sampler to the oracle");
  add_source_flags(verify, opt);
  verify->add_option("--algo", opt.algo, "folklore | two-pass | turnstile");
  verify->add_option("--start", opt.start, "walk start vertex");
  verify->add_option("--steps", opt.steps, "walk length L");
  verify->add_option("--delta", opt.delta, "error parameter");
  verify->add_option("--c1", opt.c1, "gamma constant");
  verify->add_option("--c2", opt.c2, "cap constant");
  verify->add_option("--trials", opt.trials, "sampler invocations");
  verify->add_flag("--paired", opt.paired,
                   "fall back to a paired empirical estimate when the exact "
                   "support is over budget");
  verify->add_option("--out", opt.out, "report path");

  auto* bench = app.add_subcommand("bench", "space/accuracy sweep over L");
  add_source_flags(bench, opt);
  bench->add_option("--algo", algos, "algorithms to benchmark")
      ->delimiter(',');
  bench->add_option("--steps", steps_list, "walk lengths to sweep")
      ->delimiter(',');
  bench->add_option("--delta", opt.delta, "error parameter");
  bench->add_option("--c1", opt.c1, "gamma constant");
  bench->add_option("--c2", opt.c2, "cap constant");
  bench->add_option("--start", opt.start, "walk start vertex");
  bench->add_option("--trials", opt.trials, "trials per row (0 = space only)");
  bench->add_option("--format", opt.format, "csv | json");
  bench->add_flag("--timings", opt.timings, "include wall-clock times");
  bench->add_option("--out", opt.out, "report path");

  auto* oracle_cmd = app.add_subcommand("oracle", "exact reference computations");
  add_source_flags(oracle_cmd, opt);
  oracle_cmd->add_option("--op", oracle.op, "dist | classify | visit | histogram");
  oracle_cmd->add_option("--start", opt.start, "walk start vertex");
  oracle_cmd->add_option("--steps", opt.steps, "walk length L");
  oracle_cmd->add_option("--ell", oracle.ell, "revisit horizon");
  oracle_cmd->add_option("-u", oracle.u, "visit source vertex");
  oracle_cmd->add_option("-v", oracle.v, "visit target vertex");
  oracle_cmd->add_option("-a", oracle.a, "visit window start");
  oracle_cmd->add_option("-b", oracle.b, "visit window end");
  oracle_cmd->add_option("--trials", opt.trials, "histogram trials");
  oracle_cmd->add_option("--out", opt.out, "report path");

  std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 wants reversed
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (gen->parsed()) return cmd_gen(opt, out, err);
    if (sample->parsed()) return cmd_sample(opt, out, err);
    if (verify->parsed()) return cmd_verify(opt, out, err);
    if (bench->parsed()) return cmd_bench(opt, steps_list, algos, out, err);
    if (oracle_cmd->parsed()) return cmd_oracle(opt, oracle, out, err);
  } catch (const DeadEndError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::dead_end;
  } catch (const SketchFailure& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::sketch_failure;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::parse;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::budget;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::budget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  }
  return exit_code::usage;
}

}  // namespace rwstream
