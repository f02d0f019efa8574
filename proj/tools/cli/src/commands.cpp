#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gossip/engine.hpp"
#include "gossip/metrics.hpp"
#include "gossip/sweep.hpp"
#include "gossip/theory.hpp"
#include "gossip/topology.hpp"
#include "gossip/trace_io.hpp"
#include "gossipsim_cli/cli.hpp"
#include "gossipsim_cli/recipes.hpp"
#include "output.hpp"

#ifndef GOSSIPSIM_VERSION
#define GOSSIPSIM_VERSION "0.0.0"
#endif

namespace gossip::cli {

std::string version() { return GOSSIPSIM_VERSION; }

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphFlags {
  std::string type;
  std::size_t nodes = 500;
  std::optional<std::size_t> edges;
  std::optional<std::size_t> m;
  std::optional<std::size_t> k;
  double rewire = 0.1;
};

void add_graph_flags(CLI::App* app, GraphFlags& f) {
  app->add_option("--type", f.type, "Generator: er, ba, ws, kregular");
  app->add_option("--nodes", f.nodes, "Node count")->capture_default_str();
  app->add_option("--edges", f.edges, "Edge count (er)");
  app->add_option("--m", f.m, "Edges per arriving node (ba)");
  app->add_option("--k", f.k, "Degree (kregular) or neighbors per side (ws)");
  app->add_option("--rewire", f.rewire, "Rewiring probability (ws)")->capture_default_str();
}

topology::GeneratorSpec graph_spec(const GraphFlags& f) {
  topology::GeneratorSpec spec;
  spec.kind = topology::parse_graph_kind(f.type);
  spec.node_count = f.nodes;
  auto need = [&](const std::optional<std::size_t>& v, const char* flag) {
    if (!v) throw UsageError(std::string("--type ") + f.type + " needs " + flag);
    return *v;
  };
  switch (spec.kind) {
    case topology::GraphKind::kErdosRenyi: spec.size_param = need(f.edges, "--edges"); break;
    case topology::GraphKind::kBarabasiAlbert: spec.size_param = need(f.m, "--m"); break;
    case topology::GraphKind::kWattsStrogatz:
      spec.size_param = need(f.k, "--k");
      spec.rewire_prob = f.rewire;
      break;
    case topology::GraphKind::kRegular: spec.size_param = need(f.k, "--k"); break;
  }
  spec.validate();
  return spec;
}

struct SimFlags {
  std::string protocol = "fp";
  double param = 1.0;
  int ttl = 16;
  std::size_t cache = 256;
  Step steps = 1000;
  double interval = 10.0;
  bool include_sender = false;
  bool refresh_on_duplicate = false;
  bool prime_degrees = false;
  bool single = false;
  double ceiling = 0.0;
};

void add_sim_flags(CLI::App* app, SimFlags& f, bool with_param) {
  app->add_option("--protocol", f.protocol, "fp, pb, ddf1 or ddf2")->capture_default_str();
  if (with_param) app->add_option("--param", f.param, "gamma, beta or alpha")->capture_default_str();
  app->add_option("--ttl", f.ttl, "Initial TTL")->capture_default_str();
  app->add_option("--cache", f.cache, "Cache capacity per node")->capture_default_str();
  app->add_option("--steps", f.steps, "Simulated timesteps")->capture_default_str();
  app->add_option("--interval", f.interval, "Mean generation interval")->capture_default_str();
  app->add_flag("--include-sender", f.include_sender, "Also forward back to the sender");
  app->add_flag("--refresh-on-duplicate", f.refresh_on_duplicate, "Duplicates refresh cache recency");
  app->add_flag("--prime-degrees", f.prime_degrees, "Nodes start knowing their neighbors' degrees");
  app->add_flag("--single", f.single, "Inject one message at step 0 instead of the generation schedule");
  app->add_option("--ceiling", f.ceiling, "Stop runs above this overhead ratio (0 = never)")
      ->capture_default_str();
}

engine::SimulationConfig sim_config(const SimFlags& f, std::uint64_t seed) {
  engine::SimulationConfig cfg;
  cfg.protocol.variant = protocol::parse_variant(f.protocol);
  cfg.protocol.parameter = f.param;
  cfg.protocol.initial_ttl = f.ttl;
  cfg.protocol.exclude_sender = !f.include_sender;
  cfg.protocol.refresh_on_duplicate = f.refresh_on_duplicate;
  cfg.cache_capacity = f.cache;
  cfg.total_steps = f.steps;
  cfg.mean_generation_interval = f.interval;
  cfg.prime_neighbor_degrees = f.prime_degrees;
  cfg.injection = f.single ? engine::Injection::kSingleMessage : engine::Injection::kScheduled;
  cfg.overhead_ceiling = f.ceiling;
  cfg.seed = seed;
  return cfg;
}

fs::path corpus_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kCorpusRootEnv); env && *env) return env;
  return kDefaultCorpusRoot;
}

fs::path corpus_dir(const std::string& name, const fs::path& root) {
  if (name.find('/') != std::string::npos) return name;
  return root / name;
}

std::vector<double> parse_grid(const std::string& text, bool log_scale) {
  if (text.empty()) throw UsageError("empty grid");
  if (text.find(':') != std::string::npos) {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%zu%c", &lo, &hi, &n, &tail) != 3 || n == 0) {
      throw UsageError("grid must be lo:hi:count, got '" + text + "'");
    }
    return log_scale ? metrics::log_grid(lo, hi, n) : metrics::linear_grid(lo, hi, n);
  }
  std::vector<double> out;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw UsageError("bad grid value '" + cell + "'");
    }
  }
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

std::string fraction_suffix(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "-fr%g", f);
  return buf;
}

fs::path with_suffix(const fs::path& path, const std::string& suffix) {
  fs::path out = path;
  out.replace_filename(path.stem().string() + suffix + path.extension().string());
  return out;
}

// ---- gen-corpus ----------------------------------------------------------

struct GenCorpusArgs {
  GraphFlags graph;
  std::size_t count = 10;
  std::uint64_t seed = 1;
  std::string name;
  std::string root;
  bool overwrite = false;
  unsigned threads = 0;
  bool json = false;
};

int cmd_gen_corpus(const GenCorpusArgs& a, std::ostream& out) {
  const auto spec = graph_spec(a.graph);
  if (a.count < 1) throw UsageError("--count must be >= 1");
  const fs::path dir = corpus_dir(a.name, corpus_root(a.root));
  if (fs::exists(dir) && !a.overwrite) {
    throw UsageError("corpus " + dir.string() + " already exists (use --overwrite to replace it)");
  }
  const auto corpus = topology::build_corpus(spec, a.count, a.seed, a.name, a.threads);
  topology::save_corpus(corpus, dir, a.overwrite);
  std::string csv = "graph,seed,used_seed,rejections,edges,diameter\n";
  char buf[256];
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& m = corpus.members[i];
    std::snprintf(buf, sizeof buf, "%zu,%llu,%llu,%zu,%zu,%d\n", i, static_cast<unsigned long long>(m.seed),
                  static_cast<unsigned long long>(m.used_seed), m.rejections, m.graph.edge_count(), m.diameter);
    csv += buf;
  }
  emit_csv(csv, std::nullopt, a.json, out);
  return 0;
}

// ---- run -----------------------------------------------------------------

struct RunArgs {
  SimFlags sim;
  GraphFlags graph;
  std::string corpus;
  std::size_t graph_index = 0;
  std::string root;
  std::uint64_t seed = 1;
  double free_riders = 0.0;
  std::string trace;
  bool gzip = false;
  std::string out;
  bool json = false;
};

int cmd_run(const RunArgs& a, std::ostream& out) {
  engine::SimulationConfig cfg = sim_config(a.sim, a.seed);
  cfg.free_rider_fraction = a.free_riders;
  cfg.record_deliveries = !a.trace.empty();
  Json source;
  OverlayGraph graph;
  if (!a.corpus.empty()) {
    const auto dir = corpus_dir(a.corpus, corpus_root(a.root));
    auto corpus = topology::load_corpus(dir);
    if (a.graph_index >= corpus.size()) throw UsageError("--graph out of range for " + dir.string());
    graph = corpus.graph(a.graph_index);
    source = {{"corpus", corpus_json(corpus)}, {"graph", a.graph_index}};
  } else if (!a.graph.type.empty()) {
    const auto spec = graph_spec(a.graph);
    graph = topology::generate_connected(spec, a.seed).graph;
    source = {{"generator", spec_json(spec)}, {"graph_seed", a.seed}};
  } else {
    throw UsageError("run needs --corpus or an inline --type");
  }
  const auto trace = engine::run(graph, cfg);
  if (!a.trace.empty()) {
    const fs::path trace_path = a.trace;
    if (trace_path.has_parent_path()) fs::create_directories(trace_path.parent_path());
    engine::write_trace(trace_path, trace, a.gzip);
  }
  const auto report = metrics::summarize(trace);
  const std::string csv = metrics::report_csv_header() + metrics::report_csv_row(report);
  const std::optional<fs::path> path = a.out.empty() ? std::nullopt : std::optional<fs::path>(a.out);
  emit_csv(csv, path, a.json, out);
  if (path) write_sidecar(*path, {{"command", "run"}, {"source", source}, {"config", config_json(cfg)}});
  return 0;
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
  SimFlags sim;
  std::string corpus;
  std::string root;
  std::string grid;
  bool log_scale = false;
  std::size_t reps = 1;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::vector<double> free_riders;
  std::string out;
  bool json = false;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const auto grid = parse_grid(a.grid, a.log_scale);
  const std::vector<double> fractions = a.free_riders.empty() ? std::vector<double>{0.0} : a.free_riders;
  if (fractions.size() > 1 && a.out.empty()) throw UsageError("several --free-riders values need --out");
  const auto dir = corpus_dir(a.corpus, corpus_root(a.root));
  const auto corpus = topology::load_corpus(dir);
  metrics::SweepOptions options;
  options.repetitions = a.reps;
  options.threads = a.threads;
  for (double f : fractions) {
    engine::SimulationConfig cfg = sim_config(a.sim, a.seed);
    cfg.free_rider_fraction = f;
    const auto points = metrics::sweep(corpus, cfg, grid, options);
    std::optional<fs::path> path;
    if (!a.out.empty()) path = a.free_riders.empty() ? fs::path(a.out) : with_suffix(a.out, fraction_suffix(f));
    emit_csv(metrics::sweep_csv(points), path, a.json, out);
    if (path) {
      Json seeds = Json::array();
      for (std::size_t g = 0; g < corpus.size(); ++g) {
        for (std::size_t r = 0; r < a.reps; ++r) {
          seeds.push_back({{"graph", g}, {"rep", r}, {"seed", metrics::run_seed(cfg.seed, g, r)}});
        }
      }
      auto sorted = grid;
      std::sort(sorted.begin(), sorted.end());
      write_sidecar(*path, {{"command", "sweep"},
                            {"corpus", corpus_json(corpus)},
                            {"config", config_json(cfg)},
                            {"grid", sorted},
                            {"repetitions", a.reps},
                            {"run_seeds", seeds}});
    }
  }
  return 0;
}

// ---- threshold -----------------------------------------------------------

struct ThresholdArgs {
  std::string dist;
  std::string protocol = "fp";
  std::optional<double> param;
  bool solve_alpha = false;
  std::string curve;
  std::string root;
  bool json = false;
};

DegreeDistribution parse_distribution(const std::string& text, const std::string& root) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--dist must be poisson:<mean>, kregular:<k> or corpus:<name>");
  const std::string family = text.substr(0, colon);
  const std::string value = text.substr(colon + 1);
  try {
    if (family == "poisson") return DegreeDistribution::poisson(std::stod(value));
    if (family == "kregular") return DegreeDistribution::regular(std::stoul(value));
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ParameterError*>(&e)) throw;
    throw UsageError("bad --dist value '" + text + "'");
  }
  if (family == "corpus") {
    const auto corpus = topology::load_corpus(corpus_dir(value, corpus_root(root)));
    std::vector<double> counts;
    double nodes = 0.0;
    for (const auto& m : corpus.members) {
      for (NodeId u = 0; u < m.graph.node_count(); ++u) {
        const std::size_t d = m.graph.degree(u);
        if (counts.size() <= d) counts.resize(d + 1, 0.0);
        counts[d] += 1.0;
      }
      nodes += static_cast<double>(m.graph.node_count());
    }
    for (double& c : counts) c /= nodes;
    return DegreeDistribution(std::move(counts));
  }
  throw UsageError("unknown distribution family '" + family + "'");
}

int cmd_threshold(const ThresholdArgs& a, std::ostream& out) {
  const auto variant = protocol::parse_variant(a.protocol);
  if (!a.curve.empty()) {
    const std::string family = a.dist.substr(0, a.dist.find(':'));
    theory::DistributionFamily dist_family;
    if (family == "poisson") {
      dist_family = theory::DistributionFamily::kPoisson;
    } else if (family == "kregular") {
      dist_family = theory::DistributionFamily::kRegular;
    } else {
      throw UsageError("--curve needs --dist poisson or kregular");
    }
    theory::CurveFamily curve_family = theory::CurveFamily::kFixed;
    if (variant == protocol::Variant::kDdf1) curve_family = theory::CurveFamily::kDdf1;
    if (variant == protocol::Variant::kDdf2) curve_family = theory::CurveFamily::kDdf2;
    emit_csv(theory::curve_csv(theory::threshold_curve(curve_family, dist_family, parse_grid(a.curve, false))),
             std::nullopt, a.json, out);
    return 0;
  }

  const auto d = parse_distribution(a.dist, a.root);
  const bool ddf = variant == protocol::Variant::kDdf1 || variant == protocol::Variant::kDdf2;
  std::string csv = "dist,protocol,quantity,value,note\n";
  char buf[512];
  auto row = [&](const char* quantity, double value, const std::string& note) {
    std::snprintf(buf, sizeof buf, "%s,%s,%s,%.9g,%s\n", a.dist.c_str(), a.protocol.c_str(), quantity, value,
                  note.c_str());
    csv += buf;
  };
  const double nan = std::nan("");
  if (!a.param) {
    if (ddf && !a.solve_alpha) throw UsageError("ddf protocols need --param or --solve-alpha");
    try {
      if (ddf) {
        const auto family = variant == protocol::Variant::kDdf1 ? GossipFunction::Family::kDdf1
                                                                 : GossipFunction::Family::kDdf2;
        row("alpha", theory::solve_alpha(d, family), "");
      } else {
        row("threshold", theory::fp_threshold(d), "");
      }
    } catch (const theory::NoPercolation& e) {
      row(ddf ? "alpha" : "threshold", nan, std::string("no percolation: ") + e.what());
    } catch (const theory::NoCrossing& e) {
      row("alpha", nan, std::string("no crossing: ") + e.what());
    } catch (const theory::DegenerateDistribution& e) {
      row(ddf ? "alpha" : "threshold", nan, std::string("degenerate distribution: ") + e.what());
    }
    emit_csv(csv, std::nullopt, a.json, out);
    return 0;
  }

  theory::Scheme scheme;
  switch (variant) {
    case protocol::Variant::kFixedProbability: scheme = theory::FixedScheme{*a.param}; break;
    case protocol::Variant::kProbabilisticBroadcast: scheme = theory::BroadcastScheme{*a.param}; break;
    case protocol::Variant::kDdf1: scheme = theory::DegreeScheme{GossipFunction::ddf1(*a.param)}; break;
    case protocol::Variant::kDdf2: scheme = theory::DegreeScheme{GossipFunction::ddf2(*a.param)}; break;
  }
  try {
    const auto summary = theory::branching_summary(d, scheme);
    if (summary.theta) row("theta", *summary.theta, "");
    row("margin", summary.f_arrow_prime_at_1, summary.f_arrow_prime_at_1 >= 1.0 ? "supercritical" : "subcritical");
    const auto r = theory::expected_receivers(d, scheme);
    row("expected_receivers", r.divergent ? std::numeric_limits<double>::infinity() : r.value,
        r.divergent ? "divergent" : "");
  } catch (const theory::DegenerateDistribution& e) {
    row("margin", nan, std::string("degenerate distribution: ") + e.what());
  }
  emit_csv(csv, std::nullopt, a.json, out);
  return 0;
}

// ---- reproduce -----------------------------------------------------------

struct ReproduceArgs {
  std::string recipe;
  bool list = false;
  RecipeOptions options;
  std::string root;
  std::string out;
  bool json = false;
};

int cmd_reproduce(const ReproduceArgs& a, std::ostream& out) {
  if (a.list) {
    std::string csv = "recipe,corpus,ttl,cache\n";
    for (const auto& r : recipes()) {
      csv += r.name + "," + r.corpus + "," + std::to_string(r.ttl) + "," + std::to_string(r.cache) + "\n";
    }
    emit_csv(csv, std::nullopt, a.json, out);
    return 0;
  }
  if (a.recipe.empty()) throw UsageError("reproduce needs a recipe name (see --list)");
  const Recipe& recipe = find_recipe(a.recipe);
  const auto corpus = recipe_corpus(recipe, a.options, corpus_root(a.root));
  const auto sweeps = run_recipe(recipe, corpus, a.options);
  const std::string table =
      recipe.kind == RecipeKind::kFreeRiding ? free_riding_csv(sweeps) : coverage_table_csv(sweeps);
  if (a.out.empty()) {
    emit_csv(table, std::nullopt, a.json, out);
    return 0;
  }
  const fs::path dir = a.out;
  Json opts = {{"seed", a.options.seed},           {"graphs", a.options.graphs},
               {"repetitions", a.options.repetitions}, {"steps", a.options.steps},
               {"grid_points", a.options.grid_points}, {"overhead_ceiling", a.options.overhead_ceiling}};
  Json labels = Json::array();
  for (const auto& s : sweeps) {
    const fs::path path = dir / (s.label + ".csv");
    emit_csv(metrics::sweep_csv(s.points), path, a.json, out);
    write_sidecar(path, {{"command", "reproduce"},
                         {"recipe", recipe.name},
                         {"options", opts},
                         {"corpus", corpus_json(corpus)},
                         {"config", config_json(s.config)},
                         {"grid", s.grid}});
    labels.push_back(s.label);
  }
  const fs::path table_path = dir / "table.csv";
  emit_csv(table, table_path, a.json, out);
  write_sidecar(table_path, {{"command", "reproduce"},
                             {"recipe", recipe.name},
                             {"options", opts},
                             {"corpus", corpus_json(corpus)},
                             {"sweeps", labels}});
  out << table;
  return 0;
}

// ---- analyze -------------------------------------------------------------

struct AnalyzeArgs {
  std::string trace;
  std::optional<std::size_t> nodes;
  std::string corpus;
  std::size_t graph_index = 0;
  std::string root;
  std::string basis = "exclude";
  bool json = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  std::size_t nodes = 0;
  if (a.nodes) {
    nodes = *a.nodes;
  } else if (!a.corpus.empty()) {
    const auto corpus = topology::load_corpus(corpus_dir(a.corpus, corpus_root(a.root)));
    if (a.graph_index >= corpus.size()) throw UsageError("--graph out of range");
    nodes = corpus.graph(a.graph_index).node_count();
  } else {
    throw UsageError("analyze needs --nodes or --corpus");
  }
  metrics::CoverageBasis basis = metrics::CoverageBasis::kExcludeOrigin;
  if (a.basis == "all") {
    basis = metrics::CoverageBasis::kAllNodes;
  } else if (a.basis != "exclude") {
    throw UsageError("--basis must be exclude or all");
  }
  const auto trace = engine::read_trace(a.trace, nodes);
  emit_csv(metrics::report_csv_header() + metrics::report_csv_row(metrics::summarize(trace, basis)), std::nullopt,
           a.json, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gossip dissemination simulator for unstructured overlays", "gossipsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  GenCorpusArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-corpus", "Generate a corpus of connected graphs");
  add_graph_flags(gen_cmd, gen.graph);
  gen_cmd->add_option("--count", gen.count, "Graphs in the corpus")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Base seed")->capture_default_str();
  gen_cmd->add_option("--name", gen.name, "Corpus name (or path)")->required();
  gen_cmd->add_option("--root", gen.root, "Corpus root directory");
  gen_cmd->add_flag("--overwrite", gen.overwrite, "Replace an existing corpus");
  gen_cmd->add_option("--threads", gen.threads, "Worker threads (0 = all cores)");
  gen_cmd->add_flag("--json", gen.json, "Print JSON instead of CSV");

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Simulate one run and print its metrics");
  add_sim_flags(run_cmd, run_args.sim, true);
  add_graph_flags(run_cmd, run_args.graph);
  run_cmd->add_option("--corpus", run_args.corpus, "Corpus name (or path)");
  run_cmd->add_option("--graph", run_args.graph_index, "Graph index within the corpus");
  run_cmd->add_option("--root", run_args.root, "Corpus root directory");
  run_cmd->add_option("--seed", run_args.seed, "Run seed (also the graph seed for inline generators)")
      ->capture_default_str();
  run_cmd->add_option("--free-riders", run_args.free_riders, "Fraction of free riders");
  run_cmd->add_option("--trace", run_args.trace, "Write the event trace to this file");
  run_cmd->add_flag("--gzip", run_args.gzip, "Gzip the trace");
  run_cmd->add_option("--out", run_args.out, "Write the CSV here (with a .meta.json sidecar)");
  run_cmd->add_flag("--json", run_args.json, "Mirror CSV output as JSON");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep a protocol parameter over a corpus");
  add_sim_flags(sweep_cmd, sweep_args.sim, false);
  sweep_cmd->add_option("--corpus", sweep_args.corpus, "Corpus name (or path)")->required();
  sweep_cmd->add_option("--root", sweep_args.root, "Corpus root directory");
  sweep_cmd->add_option("--grid", sweep_args.grid, "lo:hi:count or a comma separated list")->required();
  sweep_cmd->add_flag("--log", sweep_args.log_scale, "Log-spaced lo:hi:count grid");
  sweep_cmd->add_option("--reps", sweep_args.reps, "Repetitions per graph")->capture_default_str();
  sweep_cmd->add_option("--threads", sweep_args.threads, "Worker threads (0 = all cores)");
  sweep_cmd->add_option("--seed", sweep_args.seed, "Base run seed")->capture_default_str();
  sweep_cmd->add_option("--free-riders", sweep_args.free_riders, "Free-rider fractions, one CSV each")
      ->delimiter(',');
  sweep_cmd->add_option("--out", sweep_args.out, "Write the CSV here (with a .meta.json sidecar)");
  sweep_cmd->add_flag("--json", sweep_args.json, "Mirror CSV output as JSON");

  ThresholdArgs th;
  auto* th_cmd = app.add_subcommand("threshold", "Phase-transition thresholds from the branching model");
  th_cmd->add_option("--dist", th.dist, "poisson:<mean>, kregular:<k> or corpus:<name>")->required();
  th_cmd->add_option("--protocol", th.protocol, "fp, pb, ddf1 or ddf2")->capture_default_str();
  th_cmd->add_option("--param", th.param, "Evaluate margin and expected receivers at this parameter");
  th_cmd->add_flag("--solve-alpha", th.solve_alpha, "Solve for the DDF critical alpha");
  th_cmd->add_option("--curve", th.curve, "Threshold over mean degrees lo:hi:count");
  th_cmd->add_option("--root", th.root, "Corpus root directory");
  th_cmd->add_flag("--json", th.json, "Print JSON instead of CSV");

  ReproduceArgs rep;
  auto* rep_cmd = app.add_subcommand("reproduce", "Run a table, cache, TTL or free-riding recipe");
  rep_cmd->add_option("recipe", rep.recipe, "Recipe name");
  rep_cmd->add_flag("--list", rep.list, "List recipes");
  rep_cmd->add_option("--seed", rep.options.seed, "Corpus and run seed")->capture_default_str();
  rep_cmd->add_option("--graphs", rep.options.graphs, "Graphs in the corpus")->capture_default_str();
  rep_cmd->add_option("--reps", rep.options.repetitions, "Repetitions per graph")->capture_default_str();
  rep_cmd->add_option("--steps", rep.options.steps, "Simulated timesteps")->capture_default_str();
  rep_cmd->add_option("--grid-points", rep.options.grid_points, "Points per protocol sweep")->capture_default_str();
  rep_cmd->add_option("--ceiling", rep.options.overhead_ceiling, "Stop runs above this overhead (0 = never)")
      ->capture_default_str();
  rep_cmd->add_option("--threads", rep.options.threads, "Worker threads (0 = all cores)");
  rep_cmd->add_option("--root", rep.root, "Corpus root directory");
  rep_cmd->add_option("--out", rep.out, "Directory for the table, sweeps and sidecars");
  rep_cmd->add_flag("--json", rep.json, "Mirror CSV output as JSON");

  AnalyzeArgs an;
  auto* an_cmd = app.add_subcommand("analyze", "Recompute metrics from a dumped trace");
  an_cmd->add_option("trace", an.trace, "Trace file (plain or gzip)")->required();
  an_cmd->add_option("--nodes", an.nodes, "Node count of the simulated graph");
  an_cmd->add_option("--corpus", an.corpus, "Take the node count from this corpus");
  an_cmd->add_option("--graph", an.graph_index, "Graph index within the corpus");
  an_cmd->add_option("--root", an.root, "Corpus root directory");
  an_cmd->add_option("--basis", an.basis, "Coverage basis: exclude (origin) or all")->capture_default_str();
  an_cmd->add_flag("--json", an.json, "Print JSON instead of CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen_cmd) return cmd_gen_corpus(gen, out);
    if (*run_cmd) return cmd_run(run_args, out);
    if (*sweep_cmd) return cmd_sweep(sweep_args, out);
    if (*th_cmd) return cmd_threshold(th, out);
    if (*rep_cmd) return cmd_reproduce(rep, out);
    if (*an_cmd) return cmd_analyze(an, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace gossip::cli
