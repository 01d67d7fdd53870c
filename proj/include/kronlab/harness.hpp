#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kronlab/generators.hpp"
#include "kronlab/region_map.hpp"
#include "kronlab/result_table.hpp"

namespace kronlab {

inline constexpr const char* kCodeVersion = "kronlab 1.0.0";

struct Limits {
  int naive_max_k = 15;
  double rethrow_density_cap = 0.25;
  std::uint64_t per_arc_rethrow_limit = 1'000'000;
  unsigned threads = 0;  // 0 = hardware concurrency

  GenOptions gen_options() const;
};

// Resolved configuration: experiment defaults overlaid with user JSON.
struct ExperimentConfig {
  std::string experiment;
  nlohmann::json grids = nlohmann::json::object();
  nlohmann::json options = nlohmann::json::object();
  int trials = 1;
  std::uint64_t master_seed = 1;
  Limits limits;

  nlohmann::json to_json() const;
};

const std::vector<std::string>& experiment_names();

ExperimentConfig default_config(std::string_view experiment);
// Overlay `user` (fields grids, options, trials, master_seed, limits) on the defaults.
ExperimentConfig make_config(std::string_view experiment, const nlohmann::json& user);

struct ExperimentOutput {
  std::string experiment;
  std::string csv;
  nlohmann::json meta;
  ResultTable table{"", {}};  // empty for the map experiments
  RegionMap map;              // filled by the map experiments
};

ResultTable exp_collisions(const ExperimentConfig& cfg);
ResultTable exp_edgediff(const ExperimentConfig& cfg);
ResultTable exp_equivalence(const ExperimentConfig& cfg);
ResultTable exp_degeneracy_scaling(const ExperimentConfig& cfg);
ResultTable exp_table2(const ExperimentConfig& cfg);
RegionMap exp_region_map(const ExperimentConfig& cfg, bool density);

// Dispatches on cfg.experiment, times the run and fills meta.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

// Writes <dir>/<experiment>.csv and <dir>/<experiment>.meta.json.
void write_outputs(const ExperimentOutput& out, const std::string& dir);

// CSV columns: alpha,beta,delta,value,case-flags ("none" for empty values).
std::string region_map_csv(const RegionMap& map);

// Runs fn(i) for i in [0, n) on a worker pool; results kept in index order.
std::vector<std::vector<ResultRow>> parallel_tasks(
    std::size_t n, unsigned threads, const std::function<std::vector<ResultRow>(std::size_t)>& fn);

// One-sided 95% critical value of Student's t with df degrees of freedom.
double t_critical_95(int df);

struct Summary {
  double mean = 0.0;
  double sd = 0.0;   // sample standard deviation
  double sem = 0.0;  // sd / sqrt(n)
  double median = 0.0;
};
Summary summarize(std::vector<double> xs);

}  // namespace kronlab
