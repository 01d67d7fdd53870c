#include "kronlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "kronlab/bitlabel.hpp"
#include "kronlab/bounds.hpp"
#include "kronlab/errors.hpp"
#include "kronlab/graphcore.hpp"
#include "kronlab/initiator.hpp"
#include "kronlab/logmath.hpp"

namespace kronlab {

using nlohmann::json;

GenOptions Limits::gen_options() const {
  GenOptions o;
  o.naive_max_k = naive_max_k;
  o.rethrow_density_cap = rethrow_density_cap;
  o.per_arc_rethrow_limit = per_arc_rethrow_limit;
  return o;
}

json ExperimentConfig::to_json() const {
  return json{{"experiment", experiment},
              {"grids", grids},
              {"options", options},
              {"trials", trials},
              {"master_seed", master_seed},
              {"limits",
               {{"naive_max_k", limits.naive_max_k},
                {"rethrow_density_cap", limits.rethrow_density_cap},
                {"per_arc_rethrow_limit", limits.per_arc_rethrow_limit},
                {"threads", limits.threads}}}};
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"collisions",     "edgediff",
                                                 "equivalence",    "degeneracy-scaling",
                                                 "density-map",    "degeneracy-map",
                                                 "table2"};
  return names;
}

ExperimentConfig default_config(std::string_view experiment) {
  ExperimentConfig c;
  c.experiment = std::string(experiment);
  if (experiment == "collisions") {
    c.grids = {{"alpha", {0.25, 0.30, 0.35, 0.40, 0.45, 0.50, 0.55}},
               {"beta", {0.10, 0.15, 0.20, 0.25}},
               {"k", {8, 9, 10, 11, 12, 13, 14, 15, 16}},
               {"mu", 4.0}};
    c.trials = 10;
  } else if (experiment == "edgediff") {
    c.grids = {{"k", {10, 11, 12, 13}}, {"mu", 6.0}, {"initiator", {0.45, 0.275, 0.275, 0.0}}};
    c.options = {{"skg_clamp", "entries"}, {"top_slice", 6}};
    c.trials = 10;
  } else if (experiment == "equivalence") {
    c.grids = {{"k", {3, 4, 5}}, {"mu", 2.0}, {"initiator", {0.45, 0.275, 0.2, 0.075}}};
    c.trials = 100000;
  } else if (experiment == "degeneracy-scaling") {
    c.grids = {{"params", {{0.55, 0.2, 0.05}, {0.40, 0.15, 0.30}}},
               {"k", {8, 10, 12, 14, 16}},
               {"mu", 4.0}};
    c.options = {{"model", "skg-edge"}};
    c.trials = 10;
  } else if (experiment == "density-map" || experiment == "degeneracy-map") {
    c.grids = {{"alpha_min", 0.20}, {"alpha_max", 0.60}, {"alpha_step", 0.005}, {"beta_step", 0.005}};
    if (experiment == "density-map") c.options = {{"epsilon_count", kEpsilonCount}};
    c.trials = 1;
  } else if (experiment == "table2") {
    c.trials = 1;
  } else {
    throw ConfigError(fmt::format("unknown experiment '{}'", experiment));
  }
  return c;
}

ExperimentConfig make_config(std::string_view experiment, const json& user) {
  ExperimentConfig c = default_config(experiment);
  if (user.is_null()) return c;
  if (!user.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, val] : user.items()) {
      if (key == "grids") {
        for (const auto& [gk, gv] : val.items()) c.grids[gk] = gv;
      } else if (key == "options") {
        for (const auto& [ok, ov] : val.items()) c.options[ok] = ov;
      } else if (key == "trials") {
        c.trials = val.get<int>();
      } else if (key == "master_seed") {
        c.master_seed = val.get<std::uint64_t>();
      } else if (key == "limits") {
        if (val.contains("naive_max_k")) c.limits.naive_max_k = val["naive_max_k"].get<int>();
        if (val.contains("rethrow_density_cap"))
          c.limits.rethrow_density_cap = val["rethrow_density_cap"].get<double>();
        if (val.contains("per_arc_rethrow_limit"))
          c.limits.per_arc_rethrow_limit = val["per_arc_rethrow_limit"].get<std::uint64_t>();
        if (val.contains("threads")) c.limits.threads = val["threads"].get<unsigned>();
      } else if (key != "experiment") {
        throw ConfigError(fmt::format("unknown config field '{}'", key));
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("bad config: {}", e.what()));
  }
  if (c.trials < 1) throw ConfigError("trials must be >= 1");
  return c;
}

std::vector<std::vector<ResultRow>> parallel_tasks(
    std::size_t n, unsigned threads, const std::function<std::vector<ResultRow>(std::size_t)>& fn) {
  std::vector<std::vector<ResultRow>> out(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::size_t error_index = n;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        // Keep the lowest failing index so the reported error does not depend on scheduling.
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

double t_critical_95(int df) {
  boost::math::students_t dist(df);
  return boost::math::quantile(dist, 0.95);
}

Summary summarize(std::vector<double> xs) {
  Summary s;
  if (xs.empty()) return s;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) s.mean += x;
  s.mean /= n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / (n - 1));
    s.sem = s.sd / std::sqrt(n);
  }
  std::sort(xs.begin(), xs.end());
  const std::size_t h = xs.size() / 2;
  s.median = xs.size() % 2 ? xs[h] : 0.5 * (xs[h - 1] + xs[h]);
  return s;
}

namespace {

template <class T>
std::vector<T> grid_list(const ExperimentConfig& cfg, const char* key) {
  if (!cfg.grids.contains(key)) throw ConfigError(fmt::format("grid '{}' missing", key));
  try {
    const json& v = cfg.grids.at(key);
    if (v.is_array()) return v.get<std::vector<T>>();
    return {v.get<T>()};
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("grid '{}': {}", key, e.what()));
  }
}

template <class T>
T grid_scalar(const ExperimentConfig& cfg, const char* key) {
  if (!cfg.grids.contains(key)) throw ConfigError(fmt::format("grid '{}' missing", key));
  try {
    return cfg.grids.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("grid '{}': {}", key, e.what()));
  }
}

template <class T>
T option(const ExperimentConfig& cfg, const char* key, T fallback) {
  if (!cfg.options.contains(key)) return fallback;
  try {
    return cfg.options.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("option '{}': {}", key, e.what()));
  }
}

Initiator grid_initiator(const ExperimentConfig& cfg) {
  const auto e = grid_list<double>(cfg, "initiator");
  if (e.size() != 4) throw ConfigError("grid 'initiator' needs 4 entries");
  return Initiator::rmat(e[0], e[1], e[2], e[3]);
}

void check_ks(const std::vector<int>& ks, int lo, int hi) {
  for (int k : ks) {
    if (k < lo || k > hi) throw ConfigError(fmt::format("k={} outside [{}, {}]", k, lo, hi));
  }
}

std::uint64_t compose_trial(std::uint64_t point, std::uint64_t trial) {
  return (point << 32) | (trial & 0xffffffffULL);
}

json seed_entry(std::string point, std::uint64_t trial, Variant v, std::uint64_t master,
                std::uint64_t trial_index) {
  return json{{"point", std::move(point)},
              {"trial", trial},
              {"model", std::string(to_string(v))},
              {"trial_index", trial_index},
              {"key", fmt::format("{:#018x}", stream_key(master, trial_index, variant_tag(v)))}};
}

}  // namespace

ResultTable exp_collisions(const ExperimentConfig& cfg) {
  const auto alphas = grid_list<double>(cfg, "alpha");
  const auto betas = grid_list<double>(cfg, "beta");
  const auto ks = grid_list<int>(cfg, "k");
  const double mu = grid_scalar<double>(cfg, "mu");
  check_ks(ks, 1, 31);

  struct Point {
    double a, b, d;
    int k;
  };
  std::vector<Point> pts;
  for (double a : alphas) {
    for (double b : betas) {
      double d = 1.0 - a - 2.0 * b;
      if (d < -1e-12) continue;
      if (d < 1e-12) d = 0.0;
      // alpha is the largest entry (w.l.o.g. orientation of the initiator).
      if (a + 1e-12 < std::max(b, d)) continue;
      for (int k : ks) pts.push_back({a, b, d, k});
    }
  }
  if (pts.empty()) throw ConfigError("collisions grid has no valid points");

  const auto opts = cfg.limits.gen_options();
  const auto trials = static_cast<std::size_t>(cfg.trials);
  auto rows = parallel_tasks(pts.size() * trials, cfg.limits.threads, [&](std::size_t task) {
    const Point& p = pts[task / trials];
    const std::uint64_t trial = task % trials;
    GenSpec spec{Initiator::rmat(p.a, p.b, p.b, p.d), DensityParams(mu, p.k), Variant::RmatRethrow,
                 cfg.master_seed, compose_trial(task / trials, trial)};
    const GenResult r = generate(spec, opts);
    const double prop = r.trace.throws_total
                            ? static_cast<double>(r.trace.rethrows_total) / r.trace.throws_total
                            : 0.0;
    std::vector<ParamValue> par{p.a, p.b, p.d, mu, static_cast<double>(p.k)};
    const auto t = static_cast<std::int64_t>(trial);
    return std::vector<ResultRow>{
        {par, t, "proportion", prop},
        {par, t, "rethrows", static_cast<double>(r.trace.rethrows_total)},
        {par, t, "throws", static_cast<double>(r.trace.throws_total)},
    };
  });

  ResultTable table("collisions", {"alpha", "beta", "delta", "mu", "k"});
  json seeds = json::array();
  for (std::size_t pi = 0; pi < pts.size(); ++pi) {
    std::vector<double> props;
    for (std::size_t t = 0; t < trials; ++t) {
      auto& rr = rows[pi * trials + t];
      props.push_back(rr[0].value);
      seeds.push_back(seed_entry(fmt::format("{}", pi), t, Variant::RmatRethrow, cfg.master_seed,
                                 compose_trial(pi, t)));
      table.append(std::move(rr));
    }
    const Summary s = summarize(props);
    const auto& p = pts[pi];
    std::vector<ParamValue> par{p.a, p.b, p.d, mu, static_cast<double>(p.k)};
    table.add(par, -1, "mean_proportion", s.mean);
    table.add(par, -1, "sd_proportion", s.sd);
    table.add(par, -1, "sem_proportion", s.sem);
  }
  table.sort();
  table.meta["trial_seeds"] = seeds;
  table.meta["grid_filter"] = "delta = 1 - alpha - 2 beta >= 0 and alpha >= max(beta, delta)";
  return table;
}

ResultTable exp_edgediff(const ExperimentConfig& cfg) {
  const auto ks = grid_list<int>(cfg, "k");
  const double mu = grid_scalar<double>(cfg, "mu");
  const Initiator init = grid_initiator(cfg);
  const auto clamp = option<std::string>(cfg, "skg_clamp", "entries");
  const int top_slice = option<int>(cfg, "top_slice", 6);
  if (clamp != "entries" && clamp != "cells" && clamp != "none") {
    throw ConfigError(fmt::format("skg_clamp must be entries, cells or none; got '{}'", clamp));
  }
  check_ks(ks, std::max(1, top_slice), 20);

  // Validate scaling up front so an infeasible config fails before any work.
  for (int k : ks) {
    const DensityParams dens(mu, k);
    if (clamp == "none") rmat_to_skg(init, dens);
  }

  const auto opts = cfg.limits.gen_options();
  const auto trials = static_cast<std::size_t>(cfg.trials);
  auto rows = parallel_tasks(ks.size() * trials, cfg.limits.threads, [&](std::size_t task) {
    const int k = ks[task / trials];
    const std::uint64_t trial = task % trials;
    const DensityParams dens(mu, k);
    const std::uint64_t tidx = compose_trial(static_cast<std::uint64_t>(k), trial);
    const std::uint64_t n_top = cumulative_slice_size(k, top_slice);

    GenSpec flip{init, dens, Variant::RmatFlip, cfg.master_seed, tidx};
    const UGraph gf = to_undirected(generate(flip, opts).graph).graph;

    DirectedGraph skg_graph;
    if (clamp == "cells") {
      const double mreal = mu * std::ldexp(1.0, k);
      Stream rng(stream_key(cfg.master_seed, tidx, variant_tag(Variant::Skg)));
      skg_graph = sample_by_class(
          init.entries(), k, [&](double w) { return std::min(1.0, mreal * w); }, rng, false);
    } else {
      const Initiator s = clamp == "entries" ? rmat_to_skg_clamped(init, dens) : rmat_to_skg(init, dens);
      GenSpec skg{s, dens, Variant::Skg, cfg.master_seed, tidx};
      skg_graph = generate(skg, opts).graph;
    }
    const UGraph gs = to_undirected(skg_graph).graph;

    const double ef = static_cast<double>(top_degree_subgraph_edges(gf, n_top));
    const double es = static_cast<double>(top_degree_subgraph_edges(gs, n_top));
    std::vector<ParamValue> par{static_cast<double>(k), mu};
    const auto t = static_cast<std::int64_t>(trial);
    return std::vector<ResultRow>{{par, t, "diff", ef - es},
                                  {par, t, "flip_edges", ef},
                                  {par, t, "skg_edges", es},
                                  {par, t, "n_top", static_cast<double>(n_top)}};
  });

  ResultTable table("edgediff", {"k", "mu"});
  json seeds = json::array();
  const double tcrit = t_critical_95(static_cast<int>(trials) - 1);
  for (std::size_t ki = 0; ki < ks.size(); ++ki) {
    std::vector<double> diffs;
    for (std::size_t t = 0; t < trials; ++t) {
      auto& rr = rows[ki * trials + t];
      diffs.push_back(rr[0].value);
      const auto tidx = compose_trial(static_cast<std::uint64_t>(ks[ki]), t);
      seeds.push_back(seed_entry(fmt::format("k={}", ks[ki]), t, Variant::RmatFlip, cfg.master_seed, tidx));
      seeds.push_back(seed_entry(fmt::format("k={}", ks[ki]), t, Variant::Skg, cfg.master_seed, tidx));
      table.append(std::move(rr));
    }
    const Summary s = summarize(diffs);
    const double tstat = s.sem > 0 ? s.mean / s.sem : (s.mean > 0 ? INFINITY : 0.0);
    std::vector<ParamValue> par{static_cast<double>(ks[ki]), mu};
    table.add(par, -1, "mean_diff", s.mean);
    table.add(par, -1, "sd_diff", s.sd);
    table.add(par, -1, "t_stat", tstat);
    table.add(par, -1, "t_crit", tcrit);
    table.add(par, -1, "significant", trials > 1 && tstat > tcrit ? 1.0 : 0.0);
  }
  table.sort();
  table.meta["trial_seeds"] = seeds;
  table.meta["tie_break"] = "equal degrees ordered by ascending vertex label";
  table.meta["skg_clamp"] = clamp;
  return table;
}

ResultTable exp_equivalence(const ExperimentConfig& cfg) {
  const auto ks = grid_list<int>(cfg, "k");
  const double mu = grid_scalar<double>(cfg, "mu");
  const Initiator init = grid_initiator(cfg);
  check_ks(ks, 1, 8);
  const auto opts = cfg.limits.gen_options();
  const auto trials = static_cast<std::uint64_t>(cfg.trials);

  auto rows = parallel_tasks(ks.size(), cfg.limits.threads, [&](std::size_t ki) {
    const int k = ks[ki];
    const DensityParams dens(mu, k);
    const std::uint64_t n = dens.n();
    const std::uint64_t cells = n * n;
    std::vector<std::uint64_t> c_er(cells, 0), c_re(cells, 0), c_fl(cells, 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
      const std::uint64_t tidx = compose_trial(static_cast<std::uint64_t>(k), t);
      for (auto [variant, counts] : {std::pair{Variant::RmatErasure, &c_er},
                                     std::pair{Variant::RmatRethrow, &c_re},
                                     std::pair{Variant::RmatFlip, &c_fl}}) {
        GenSpec spec{init, dens, variant, cfg.master_seed, tidx};
        const GenResult r = generate(spec, opts);
        for (const auto& [u, v] : r.graph.arcs()) ++(*counts)[u * n + v];
      }
    }
    const double T = static_cast<double>(trials);
    const double m = static_cast<double>(dens.m());
    double max_dev = 0.0, tv_sum = 0.0, tv_max = 0.0, flip_dev_max = 0.0;
    std::uint64_t outside = 0, flip_outside = 0;
    for (std::uint64_t u = 0; u < n; ++u) {
      for (std::uint64_t v = 0; v < n; ++v) {
        const std::uint64_t c = u * n + v;
        const double w = weight_of(pair_counts_raw(u, v, k), init.entries());
        const double p = one_minus_pow_complement(w, m);
        const double sigma = std::sqrt(p * (1.0 - p) / T);
        const double fe = c_er[c] / T;
        const double ff = c_fl[c] / T;
        max_dev = std::max(max_dev, std::abs(fe - p));
        flip_dev_max = std::max(flip_dev_max, std::abs(ff - p));
        if (std::abs(fe - p) > 4.0 * sigma) ++outside;
        if (std::abs(ff - p) > 4.0 * sigma) ++flip_outside;
        const double tv = std::abs(c_re[c] / T - ff);
        tv_sum += tv;
        tv_max = std::max(tv_max, tv);
      }
    }
    std::vector<ParamValue> par{static_cast<double>(k), mu};
    const double nc = static_cast<double>(cells);
    return std::vector<ResultRow>{
        {par, -1, "cells", nc},
        {par, -1, "erasure_max_abs_dev", max_dev},
        {par, -1, "erasure_outside_4sigma", static_cast<double>(outside)},
        {par, -1, "erasure_outside_fraction", outside / nc},
        {par, -1, "flip_max_abs_dev", flip_dev_max},
        {par, -1, "flip_outside_4sigma", static_cast<double>(flip_outside)},
        {par, -1, "rethrow_flip_tv_mean", tv_sum / nc},
        {par, -1, "rethrow_flip_tv_max", tv_max},
        {par, -1, "rethrow_flip_tv_sum", tv_sum},
    };
  });
  ResultTable table("equivalence", {"k", "mu"});
  for (auto& r : rows) table.append(std::move(r));
  table.sort();
  table.meta["trial_seeds"] =
      "trial_index = (k << 32) | trial; key = stream_key(master_seed, trial_index, model tag)";
  return table;
}

ResultTable exp_degeneracy_scaling(const ExperimentConfig& cfg) {
  const auto params = grid_list<std::vector<double>>(cfg, "params");
  const auto ks = grid_list<int>(cfg, "k");
  const double mu = grid_scalar<double>(cfg, "mu");
  const auto model = parse_variant(option<std::string>(cfg, "model", "skg-edge"));
  if (model != Variant::SkgSymmetricEdge && model != Variant::RmatFlip) {
    throw ConfigError("degeneracy-scaling model must be skg-edge or rmat-flip");
  }
  check_ks(ks, 1, 20);
  std::vector<SymmetricParams> sets;
  for (const auto& p : params) {
    if (p.size() != 3) throw ConfigError("each params entry is [alpha, beta, delta]");
    sets.push_back(SymmetricParams::make(p[0], p[1], p[2], mu, 1));
  }
  struct Point {
    std::size_t set;
    int k;
  };
  std::vector<Point> pts;
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (int k : ks) pts.push_back({s, k});

  const auto opts = cfg.limits.gen_options();
  const auto trials = static_cast<std::size_t>(cfg.trials);
  auto rows = parallel_tasks(pts.size() * trials, cfg.limits.threads, [&](std::size_t task) {
    const Point& p = pts[task / trials];
    const std::uint64_t trial = task % trials;
    const auto& e = sets[p.set].e;
    GenSpec spec{Initiator::rmat(e.alpha, e.beta, e.beta, e.delta), DensityParams(mu, p.k), model,
                 cfg.master_seed, compose_trial(task / trials, trial)};
    const UGraph g = to_undirected(generate(spec, opts).graph).graph;
    const CoreDecomposition cd = core_decomposition(g);
    const SliceReport rep = slice_report(g, p.k);
    std::vector<ParamValue> par{e.alpha, e.beta, e.delta, mu, static_cast<double>(p.k)};
    const auto t = static_cast<std::int64_t>(trial);
    std::vector<ResultRow> out{{par, t, "degeneracy", static_cast<double>(cd.degeneracy)},
                               {par, t, "isolated", static_cast<double>(isolated_count(g))},
                               {par, t, "edges", static_cast<double>(g.num_edges())}};
    for (const auto& row : rep.rows) {
      out.push_back({par, t, fmt::format("density_le_{:02}", row.ell), row.density});
    }
    return out;
  });

  ResultTable table("degeneracy-scaling", {"alpha", "beta", "delta", "mu", "k"});
  json seeds = json::array();
  for (std::size_t pi = 0; pi < pts.size(); ++pi) {
    std::vector<double> degs, isos;
    for (std::size_t t = 0; t < trials; ++t) {
      auto& rr = rows[pi * trials + t];
      degs.push_back(rr[0].value);
      isos.push_back(rr[1].value);
      seeds.push_back(seed_entry(fmt::format("{}", pi), t, model, cfg.master_seed, compose_trial(pi, t)));
      table.append(std::move(rr));
    }
    const auto& e = sets[pts[pi].set].e;
    std::vector<ParamValue> par{e.alpha, e.beta, e.delta, mu, static_cast<double>(pts[pi].k)};
    table.add(par, -1, "median_degeneracy", summarize(degs).median);
    table.add(par, -1, "mean_isolated", summarize(isos).mean);
  }
  table.sort();
  table.meta["trial_seeds"] = seeds;
  table.meta["model"] = std::string(to_string(model));
  return table;
}

ResultTable exp_table2(const ExperimentConfig& /*cfg*/) {
  ResultTable table("table2", {"preset"});
  for (const Preset& p : table2_presets()) {
    const DensityParams dens(p.mu, p.k);
    const double theta = scaling_theta(dens);
    const OrderedEntries r = ordered_entries(p.init);
    const bool in_range = p.mu >= 1.0 && p.mu <= p.k / 2.0;
    // Directed rows are symmetrized on the off-diagonal for the region maps.
    const SymmetricEntries se{p.init.a(), 0.5 * (p.init.b() + p.init.c()), p.init.d()};
    const RegionCell dense = density_cell(se);
    const RegionCell degen = degeneracy_cell(se);
    std::vector<ParamValue> par{p.name};
    auto add = [&](const char* metric, double v) { table.add(par, 0, metric, v); };
    add("n", static_cast<double>(p.n));
    add("k", p.k);
    add("mu", p.mu);
    add("directed", p.directed ? 1.0 : 0.0);
    add("entry_sum", p.init.sum());
    add("theta", theta);
    add("theta_max_entry", theta * p.init.max_entry());
    add("feasible", scaling_feasible(p.init, dens) ? 1.0 : 0.0);
    add("erasure_bound", erasure_weight_bound_unchecked(r, p.k, p.mu));
    add("erasure_bound_in_range", in_range ? 1.0 : 0.0);
    add("erasure_bound_tight", erasure_weight_bound_tight(r, p.k, p.mu));
    add("dense", dense.value ? 1.0 : 0.0);
    add("dense_tau", dense.value.value_or(NAN));
    add("tau_bar", degen.value ? degen.tau : NAN);
    add("degeneracy_fraction", degen.value.value_or(NAN));
  }
  table.sort();
  table.meta["k_rule"] = "k = ceil(log2 n)";
  table.meta["erasure_bound_c"] = "c = mu";
  return table;
}

RegionMap exp_region_map(const ExperimentConfig& cfg, bool density) {
  GridSpec g;
  g.alpha_min = grid_scalar<double>(cfg, "alpha_min");
  g.alpha_max = grid_scalar<double>(cfg, "alpha_max");
  g.alpha_step = grid_scalar<double>(cfg, "alpha_step");
  g.beta_step = grid_scalar<double>(cfg, "beta_step");
  if (!(g.alpha_step > 0 && g.beta_step > 0) || g.alpha_min > g.alpha_max || g.alpha_min <= 0) {
    throw ConfigError("region map grid needs positive steps and 0 < alpha_min <= alpha_max");
  }
  const auto pts = grid_points(g);
  const int eps_count = option<int>(cfg, "epsilon_count", kEpsilonCount);
  if (eps_count < 1) throw ConfigError("epsilon_count must be >= 1");
  RegionMap map;
  map.density = density;
  map.cells.resize(pts.size());
  parallel_tasks(pts.size(), cfg.limits.threads, [&](std::size_t i) {
    map.cells[i] = density ? density_cell(pts[i], eps_count) : degeneracy_cell(pts[i]);
    return std::vector<ResultRow>{};
  });
  return map;
}

std::string region_map_csv(const RegionMap& map) {
  std::string out = "alpha,beta,delta,value,case-flags\n";
  for (const auto& c : map.cells) {
    std::string flags;
    if (map.density) {
      if (c.value) flags = fmt::format("eps={}", format_double(c.epsilon));
    } else {
      if (c.value) flags = fmt::format("branch={}", c.branch);
      if (!c.precondition) flags += flags.empty() ? "swap" : ";swap";
    }
    if (c.alpha_largest) flags += flags.empty() ? "alpha_largest" : ";alpha_largest";
    out += fmt::format("{},{},{},{},{}\n", format_double(c.alpha), format_double(c.beta),
                       format_double(c.delta), c.value ? format_double(*c.value) : "none", flags);
  }
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentOutput out;
  out.experiment = cfg.experiment;
  const std::string& e = cfg.experiment;
  json extra = json::object();
  if (e == "density-map" || e == "degeneracy-map") {
    out.map = exp_region_map(cfg, e == "density-map");
    out.csv = region_map_csv(out.map);
  } else {
    if (e == "collisions") out.table = exp_collisions(cfg);
    else if (e == "edgediff") out.table = exp_edgediff(cfg);
    else if (e == "equivalence") out.table = exp_equivalence(cfg);
    else if (e == "degeneracy-scaling") out.table = exp_degeneracy_scaling(cfg);
    else if (e == "table2") out.table = exp_table2(cfg);
    else throw ConfigError(fmt::format("unknown experiment '{}'", e));
    out.csv = out.table.to_csv();
    extra = out.table.meta;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.meta = {{"experiment", e},
              {"code_version", kCodeVersion},
              {"config", cfg.to_json()},
              {"seed_scheme", kSeedScheme},
              {"wall_time_s", wall},
              {"tau_discretization", "t = floor(tau * k)"},
              {"m_rule", "generators m = floor(mu * 2^k); bounds m = mu * 2^k"}};
  for (const auto& [k, v] : extra.items()) out.meta[k] = v;
  return out;
}

void write_outputs(const ExperimentOutput& out, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto base = std::filesystem::path(dir) / out.experiment;
  std::ofstream csv(base.string() + ".csv");
  if (!csv) throw ConfigError(fmt::format("cannot write into '{}'", dir));
  csv << out.csv;
  std::ofstream meta(base.string() + ".meta.json");
  meta << out.meta.dump(2) << '\n';
}

}  // namespace kronlab
