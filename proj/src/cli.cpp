#include "kronlab/cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "kronlab/bitlabel.hpp"
#include "kronlab/bounds.hpp"
#include "kronlab/edgelist.hpp"
#include "kronlab/errors.hpp"
#include "kronlab/generators.hpp"
#include "kronlab/graphcore.hpp"
#include "kronlab/harness.hpp"
#include "kronlab/initiator.hpp"
#include "kronlab/region_map.hpp"

namespace kronlab {

using nlohmann::json;

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path));
  out << text;
}

json optional_number(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

int cmd_table2(const std::string& out) {
  json rows = json::array();
  for (const Preset& p : table2_presets()) {
    rows.push_back({{"name", p.name},
                    {"n", p.n},
                    {"k", p.k},
                    {"mu", p.mu},
                    {"initiator", p.init.entries()},
                    {"directed", p.directed}});
  }
  write_text(out, rows.dump(2) + "\n");
  return 0;
}

struct GenerateArgs {
  std::string model = "rmat-erasure";
  std::string initiator;
  int k = 10;
  double mu = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t trial = 0;
  bool undirected = false;
  bool skg_raw = false;
  bool naive = false;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  const auto e = parse_entries(a.initiator);
  const Variant variant = parse_variant(a.model);
  const DensityParams dens(a.mu, a.k);
  Initiator init = variant == Variant::Skg && a.skg_raw
                       ? Initiator::skg(e[0], e[1], e[2], e[3])
                       : Initiator::rmat(e[0], e[1], e[2], e[3]);
  if (variant == Variant::Skg && !a.skg_raw) init = rmat_to_skg(init, dens);
  GenSpec spec{init, dens, variant, a.seed, a.trial};
  GenOptions opts;
  opts.fast_path = !a.naive;
  const GenResult r = generate(spec, opts);

  std::vector<std::pair<std::string, std::string>> header = {
      {"k", std::to_string(a.k)},
      {"model", std::string(to_string(variant))},
      {"seed", std::to_string(a.seed)},
      {"trial", std::to_string(a.trial)},
      {"mu", fmt::format("{}", a.mu)},
      {"initiator", init.to_string()}};
  std::ostringstream os;
  if (a.undirected) {
    const UndirectedResult u = to_undirected(r.graph);
    header.emplace_back("undirected", "1");
    header.emplace_back("loops_dropped", std::to_string(u.loops_dropped));
    write_edge_list(os, header, u.graph.edges());
  } else {
    header.emplace_back("throws", std::to_string(r.trace.throws_total));
    header.emplace_back("collisions", std::to_string(r.trace.collisions));
    write_edge_list(os, header, r.graph.arcs());
  }
  write_text(a.out, os.str());
  return 0;
}

int cmd_analyze(const std::string& in, std::optional<int> k_opt, bool cores, bool slices,
                const std::string& out) {
  const EdgeList el = read_edge_list_file(in);
  std::optional<int> k = k_opt ? k_opt : el.header.k();
  std::uint64_t n = el.pairs.empty() ? 0 : el.max_label + 1;
  if (k) {
    if (*k < 0 || *k > 32) throw ConfigError("k must lie in [0, 32]");
    if (n > (std::uint64_t{1} << *k)) throw DimensionMismatch("labels exceed 2^k");
    n = std::uint64_t{1} << *k;
  }
  const UGraph g = k ? UGraph::from_k(*k, el.pairs) : UGraph(n, el.pairs);
  json rep = {{"vertices", g.num_vertices()},
              {"edges", g.num_edges()},
              {"loops_dropped", g.loops_dropped()},
              {"isolated", isolated_count(g)}};
  if (k) rep["k"] = *k;
  const bool all = !cores && !slices;
  if (cores || all) {
    const CoreDecomposition cd = core_decomposition(g);
    rep["degeneracy"] = cd.degeneracy;
    rep["core_histogram"] = cd.histogram();
  }
  if (slices || (all && k)) {
    if (!k) throw DimensionMismatch("slice analytics need --k or a k= header");
    json tab = json::array();
    for (const auto& r : slice_report(g, *k).rows) {
      tab.push_back({{"ell", r.ell},
                     {"slice_vertices", r.slice_vertices},
                     {"cumulative_vertices", r.cumulative_vertices},
                     {"edges_within", r.edges_within},
                     {"density", r.density},
                     {"lower_degree_mean", r.lower_degree_mean},
                     {"lower_degree_max", r.lower_degree_max}});
    }
    rep["slices"] = tab;
  }
  write_text(out, rep.dump(2) + "\n");
  return 0;
}

struct BoundsArgs {
  double alpha = 0, beta = 0, delta = 0, mu = 1, tau = 0.5;
  int k = 10;
  std::optional<double> epsilon;
  std::string out;
};

int cmd_bounds(const BoundsArgs& a) {
  const SymmetricParams p = SymmetricParams::make(a.alpha, a.beta, a.delta, a.mu, a.k);
  json sheet = {{"alpha", a.alpha}, {"beta", a.beta}, {"delta", a.delta}, {"mu", a.mu},
                {"k", a.k},         {"tau", a.tau},   {"t", slice_index(a.tau, a.k)}};
  sheet["log_exact_expected_degree"] = log_expected_lower_degree(p, a.tau);
  sheet["exact_expected_degree"] = expected_lower_degree(p, a.tau);
  sheet["log_lambda_exact"] = log_lambda_exact(p, a.tau);
  sheet["max_edge_probability"] = max_edge_probability(p);
  auto branch_json = [](const BranchValue& b) {
    return json{{"log_value", b.log_value}, {"branch", b.branch}, {"log_other", b.log_other},
                {"precondition", b.precondition}, {"swapped", b.swapped}};
  };
  if (a.tau > 0 && a.tau < 1) {
    sheet["lambda_lower"] = branch_json(lambda_lower(p, a.tau));
    if (slice_index(a.tau, a.k) > 0) sheet["lambda_upper"] = branch_json(lambda_upper(p, a.tau));
    const GrowthBase lo = deg_lower_base(p.e, a.tau);
    const GrowthBase up = deg_upper_base(p.e, a.tau);
    sheet["deg_lower_base"] = {{"base", lo.base}, {"branch", lo.branch}, {"precondition", lo.precondition}};
    sheet["deg_upper_base"] = {{"base", up.base}, {"branch", up.branch}, {"precondition", up.precondition}};
  }
  if (a.epsilon) {
    sheet["epsilon"] = *a.epsilon;
    sheet["deg_lower_simple_base"] =
        simple_base_domain(a.tau, *a.epsilon)
            ? json(simple_deg_lower_base(p.e, a.tau, *a.epsilon))
            : json(nullptr);
  }
  const RegionCell dc = density_cell(p.e);
  const RegionCell gc = degeneracy_cell(p.e);
  sheet["density_map_tau"] = optional_number(dc.value);
  sheet["tau_bar"] = gc.value ? json(gc.tau) : json(nullptr);
  write_text(a.out, sheet.dump(2) + "\n");
  return 0;
}

int cmd_map(const std::string& which, const GridSpec& g, int eps_count, const std::string& out) {
  if (which != "density" && which != "degeneracy") {
    throw ConfigError("map kind must be density or degeneracy");
  }
  const RegionMap m = which == "density" ? density_region_map(g, eps_count) : degeneracy_region_map(g);
  write_text(out, region_map_csv(m));
  return 0;
}

int cmd_experiment(const std::string& name, const std::string& config, const std::string& out,
                   std::optional<unsigned> threads) {
  json user = json::object();
  if (!config.empty()) {
    std::ifstream in(config);
    if (!in) throw ConfigError(fmt::format("cannot open config '{}'", config));
    try {
      user = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError(fmt::format("config '{}' is not valid JSON: {}", config, e.what()));
    }
  }
  ExperimentConfig cfg = make_config(name, user);
  if (threads) cfg.limits.threads = *threads;
  const ExperimentOutput res = run_experiment(cfg);
  write_outputs(res, out);
  std::cerr << fmt::format("{}: wrote {}/{}.csv in {:.2f}s\n", name, out, name,
                           res.meta["wall_time_s"].get<double>());
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Kronecker and R-MAT graph generators, bounds and experiments", "kronlab"};
  app.require_subcommand(1);

  std::string t2_out;
  auto* t2 = app.add_subcommand("table2", "Export the embedded network presets as JSON");
  t2->add_option("--out", t2_out, "Output file (default stdout)");

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "Sample one graph as an edge list");
  gen->add_option("--model", ga.model, "skg|rmat-erasure|rmat-rethrow|rmat-flip|skg-edge")->required();
  gen->add_option("--initiator", ga.initiator, "a,b,c,d")->required();
  gen->add_option("--k", ga.k, "Kronecker power")->required();
  gen->add_option("--mu", ga.mu, "Arcs per vertex")->required();
  gen->add_option("--seed", ga.seed, "Master seed");
  gen->add_option("--trial", ga.trial, "Trial index");
  gen->add_flag("--undirected", ga.undirected, "Write the undirected simple graph");
  gen->add_flag("--skg-raw", ga.skg_raw, "For skg: take --initiator as SKG entries, no theta-scaling");
  gen->add_flag("--naive", ga.naive, "Use the 4^k cell sweep instead of weight classes");
  gen->add_option("--out", ga.out, "Output file (default stdout)");

  std::string an_in, an_out;
  std::optional<int> an_k;
  bool an_cores = false, an_slices = false;
  auto* an = app.add_subcommand("analyze", "Core and Hamming-slice analysis of an edge list");
  an->add_option("--in", an_in, "Edge-list file")->required();
  an->add_option("--k", an_k, "Label width (default: k= header)");
  an->add_flag("--cores", an_cores, "Core decomposition");
  an->add_flag("--slices", an_slices, "Hamming-slice table");
  an->add_option("--out", an_out, "Report file (default stdout)");

  BoundsArgs ba;
  auto* bd = app.add_subcommand("bounds", "Evaluate the analytic bounds at one parameter point");
  bd->add_option("--alpha", ba.alpha)->required();
  bd->add_option("--beta", ba.beta)->required();
  bd->add_option("--delta", ba.delta)->required();
  bd->add_option("--mu", ba.mu)->required();
  bd->add_option("--k", ba.k)->required();
  bd->add_option("--tau", ba.tau)->required();
  bd->add_option("--epsilon", ba.epsilon);
  bd->add_option("--out", ba.out, "Sheet file (default stdout)");

  std::string map_kind, map_out;
  GridSpec grid;
  int eps_count = kEpsilonCount;
  auto* mp = app.add_subcommand("map", "Region map over the symmetric simplex as CSV");
  mp->add_option("kind", map_kind, "density|degeneracy")->required();
  mp->add_option("--alpha-min", grid.alpha_min);
  mp->add_option("--alpha-max", grid.alpha_max);
  mp->add_option("--alpha-step", grid.alpha_step);
  mp->add_option("--beta-step", grid.beta_step);
  mp->add_option("--epsilon-count", eps_count);
  mp->add_option("--out", map_out, "CSV file (default stdout)");

  std::string ex_name, ex_cfg, ex_out = ".";
  std::optional<unsigned> ex_threads;
  auto* ex = app.add_subcommand("experiment", "Run an experiment and write CSV + meta JSON");
  ex->add_option("name", ex_name, "collisions|edgediff|equivalence|degeneracy-scaling|density-map|degeneracy-map|table2")
      ->required();
  ex->add_option("--config", ex_cfg, "JSON config (fields grids, options, trials, master_seed, limits)");
  ex->add_option("--out", ex_out, "Output directory");
  ex->add_option("--threads", ex_threads, "Worker threads (default: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*t2) return cmd_table2(t2_out);
    if (*gen) return cmd_generate(ga);
    if (*an) return cmd_analyze(an_in, an_k, an_cores, an_slices, an_out);
    if (*bd) return cmd_bounds(ba);
    if (*mp) return cmd_map(map_kind, grid, eps_count, map_out);
    if (*ex) return cmd_experiment(ex_name, ex_cfg, ex_out, ex_threads);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const GeneratorError& e) {
    std::cerr << "generator error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace kronlab
