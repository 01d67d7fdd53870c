#pragma once

#include <cstdint>
#include <vector>

#include "kronlab/bitlabel.hpp"
#include "kronlab/initiator.hpp"

namespace kronlab {

using u128 = unsigned __int128;

// Cells (u, v) sharing one PairCounts vector; all carry the same weight.
struct WeightClass {
  PairCounts counts;
  u128 size = 0;  // k! / (c00! c01! c10! c11!)
  double log_size = 0.0;
  double weight = 0.0;
  double log_weight = 0.0;
};

std::vector<WeightClass> weight_classes(const Initiator& init, int k);

// Same decomposition against explicit per-cell entries (no flavor check).
std::vector<WeightClass> weight_classes(const std::array<double, 4>& entries, int k);

u128 multinomial(const PairCounts& p);

// The cell with index `rank` among all cells of class `p`, in lexicographic
// order of the per-position symbol sequence (position 0 first, symbol
// order 00 < 01 < 10 < 11). Returns (u, v) as k-bit values.
std::pair<std::uint64_t, std::uint64_t> unrank_cell(const PairCounts& p, u128 rank);

}  // namespace kronlab
