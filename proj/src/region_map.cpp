#include "kronlab/region_map.hpp"

#include <algorithm>
#include <cmath>

namespace kronlab {

namespace {

constexpr int kTauSteps = 100;

RegionCell base_cell(const SymmetricEntries& e) {
  RegionCell c;
  c.alpha = e.alpha;
  c.beta = e.beta;
  c.delta = e.delta;
  c.alpha_largest = e.alpha >= e.beta && e.alpha >= e.delta;
  return c;
}

}  // namespace

std::vector<SymmetricEntries> grid_points(const GridSpec& g) {
  std::vector<SymmetricEntries> out;
  const int na = static_cast<int>(std::lround((g.alpha_max - g.alpha_min) / g.alpha_step));
  for (int i = 0; i <= na; ++i) {
    const double alpha = g.alpha_min + i * g.alpha_step;
    for (int j = 1;; ++j) {
      const double beta = j * g.beta_step;
      double delta = 1.0 - alpha - 2.0 * beta;
      if (delta < -1e-12) break;
      if (delta < 1e-12) delta = 0.0;
      out.push_back({alpha, beta, delta});
    }
  }
  return out;
}

RegionCell density_cell(const SymmetricEntries& e, int epsilon_count) {
  RegionCell c = base_cell(e);
  for (int ti = 1; ti < kTauSteps; ++ti) {
    const double tau = ti * kTauStep;
    for (int j = 1; j <= epsilon_count; ++j) {
      const double eps = static_cast<double>(j) / (epsilon_count + 1);
      if (!simple_base_domain(tau, eps)) continue;
      if (simple_deg_lower_base(e, tau, eps) > 1.0) {
        c.value = tau;
        c.tau = tau;
        c.epsilon = eps;
        return c;
      }
    }
  }
  return c;
}

RegionCell degeneracy_cell(const SymmetricEntries& e) {
  RegionCell c = base_cell(e);
  c.precondition = e.beta / e.alpha - e.delta / e.beta <= 1.0;
  for (int ti = kTauSteps - 1; ti >= 1; --ti) {
    const double tau = ti * kTauStep;
    const GrowthBase g = deg_upper_base(e, tau);
    if (!(g.base < 1.0)) break;
    c.tau = tau;
    c.branch = g.branch;
  }
  if (c.tau > 0.0) c.value = 1.0 - c.tau;
  return c;
}

RegionMap density_region_map(const GridSpec& g, int epsilon_count) {
  RegionMap map;
  map.density = true;
  for (const auto& e : grid_points(g)) map.cells.push_back(density_cell(e, epsilon_count));
  return map;
}

RegionMap degeneracy_region_map(const GridSpec& g) {
  RegionMap map;
  map.density = false;
  for (const auto& e : grid_points(g)) map.cells.push_back(degeneracy_cell(e));
  return map;
}

}  // namespace kronlab
