#pragma once

#include <optional>
#include <vector>

#include "kronlab/bounds.hpp"

namespace kronlab {

// Integer-indexed grid over alpha + 2 beta + delta = 1.
struct GridSpec {
  double alpha_min = 0.20;
  double alpha_max = 0.60;
  double alpha_step = 0.005;
  double beta_step = 0.005;
};

struct RegionCell {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  std::optional<double> value;  // empty = "none"
  double tau = 0.0;             // tau found (density) or tau-bar (degeneracy); 0 when none
  double epsilon = 0.0;         // density map: epsilon that achieved base > 1
  int branch = 0;               // degeneracy map: upper-bound branch at tau-bar
  bool precondition = true;     // degeneracy map: beta/alpha - delta/beta <= 1
  bool alpha_largest = false;
};

struct RegionMap {
  bool density = true;  // false = degeneracy map
  std::vector<RegionCell> cells;
};

std::vector<SymmetricEntries> grid_points(const GridSpec& g);

inline constexpr int kEpsilonCount = 20;
inline constexpr double kTauStep = 0.01;

// Smallest tau on the 0.01 grid for which some epsilon_j = j/(count+1) gives
// simple_deg_lower_base > 1.
RegionCell density_cell(const SymmetricEntries& e, int epsilon_count = kEpsilonCount);

// tau-bar: smallest tau with deg_upper_base < 1 for every grid tau' >= tau.
// value = 1 - tau-bar.
RegionCell degeneracy_cell(const SymmetricEntries& e);

RegionMap density_region_map(const GridSpec& g, int epsilon_count = kEpsilonCount);
RegionMap degeneracy_region_map(const GridSpec& g);

}  // namespace kronlab
