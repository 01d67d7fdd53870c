#pragma once

#include <cstdint>
#include <vector>

#include "kronlab/graph.hpp"

namespace kronlab {

struct CoreDecomposition {
  std::vector<std::uint32_t> core_number;
  std::uint32_t degeneracy = 0;

  // Number of vertices per core number, indexed 0..degeneracy.
  std::vector<std::uint64_t> histogram() const;
};

// Batagelj-Zaversnik bucket algorithm, O(n + m).
CoreDecomposition core_decomposition(const UGraph& g);

inline constexpr std::uint64_t kOracleMaxVertices = 10'000;

// Repeatedly removes a minimum-degree vertex; quadratic. Throws SizeLimit
// above kOracleMaxVertices.
std::uint32_t degeneracy_oracle(const UGraph& g);

struct SliceRow {
  int ell = 0;
  std::uint64_t slice_vertices = 0;       // |F_ell|
  std::uint64_t cumulative_vertices = 0;  // |F_<=ell|
  std::uint64_t edges_within = 0;         // edges with both ends in F_<=ell
  double density = 0.0;                   // edges_within / cumulative_vertices
  // Over x in F_ell: neighbours of x with Hamming weight <= ell.
  std::uint64_t lower_degree_sum = 0;
  double lower_degree_mean = 0.0;
  std::uint32_t lower_degree_max = 0;
};

struct SliceReport {
  int k = 0;
  std::vector<SliceRow> rows;  // ell = 0..k
};

// Requires g.num_vertices() == 2^k; throws DimensionMismatch otherwise.
SliceReport slice_report(const UGraph& g, int k);

std::uint32_t degree_into_lower(const UGraph& g, std::uint64_t x, int ell);

// Edges induced on the n_top highest-degree vertices, ties by ascending label.
std::uint64_t top_degree_subgraph_edges(const UGraph& g, std::uint64_t n_top);

std::uint64_t isolated_count(const UGraph& g);

}  // namespace kronlab
