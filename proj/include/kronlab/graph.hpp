#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace kronlab {

using Arc = std::pair<std::uint64_t, std::uint64_t>;

// Arc set over 2^k labeled vertices. Loops allowed, duplicates removed.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  // Sorts and deduplicates; throws DomainError on out-of-range endpoints.
  DirectedGraph(int k, std::vector<Arc> arcs);

  int k() const noexcept { return k_; }
  std::uint64_t num_vertices() const noexcept { return std::uint64_t{1} << k_; }
  std::uint64_t num_arcs() const noexcept { return arcs_.size(); }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  bool has_arc(std::uint64_t u, std::uint64_t v) const;

  std::vector<std::uint32_t> out_degrees() const;
  std::vector<std::uint32_t> in_degrees() const;

 private:
  int k_ = 0;
  std::vector<Arc> arcs_;
};

// Simple undirected graph in CSR form.
class UGraph {
 public:
  UGraph() = default;
  // Builds from an edge list; drops loops and parallel edges.
  UGraph(std::uint64_t n, std::span<const Arc> edges);

  static UGraph from_k(int k, std::span<const Arc> edges);

  std::uint64_t num_vertices() const noexcept { return n_; }
  std::uint64_t num_edges() const noexcept { return adj_.size() / 2; }
  std::uint64_t loops_dropped() const noexcept { return loops_dropped_; }
  // Power-of-two width, or -1 for external graphs.
  int k() const noexcept { return k_; }

  std::span<const std::uint32_t> neighbors(std::uint64_t v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(std::uint64_t v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  bool has_edge(std::uint64_t u, std::uint64_t v) const;

  // Each edge once with u < v, ascending.
  std::vector<Arc> edges() const;

 private:
  std::uint64_t n_ = 0;
  int k_ = -1;
  std::uint64_t loops_dropped_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<std::uint32_t> adj_;
};

struct UndirectedResult {
  UGraph graph;
  std::uint64_t loops_dropped = 0;
};

UndirectedResult to_undirected(const DirectedGraph& dg);

}  // namespace kronlab
