#include "kronlab/graph.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "kronlab/errors.hpp"

namespace kronlab {

DirectedGraph::DirectedGraph(int k, std::vector<Arc> arcs) : k_(k), arcs_(std::move(arcs)) {
  if (k < 0 || k > 32) throw DomainError(fmt::format("graph width k={} outside [0, 32]", k));
  const std::uint64_t n = num_vertices();
  for (const auto& [u, v] : arcs_) {
    if (u >= n || v >= n) {
      throw DomainError(fmt::format("arc ({}, {}) has an endpoint >= 2^{}", u, v, k));
    }
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
}

bool DirectedGraph::has_arc(std::uint64_t u, std::uint64_t v) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), Arc{u, v});
}

std::vector<std::uint32_t> DirectedGraph::out_degrees() const {
  std::vector<std::uint32_t> d(num_vertices(), 0);
  for (const auto& a : arcs_) ++d[a.first];
  return d;
}

std::vector<std::uint32_t> DirectedGraph::in_degrees() const {
  std::vector<std::uint32_t> d(num_vertices(), 0);
  for (const auto& a : arcs_) ++d[a.second];
  return d;
}

UGraph::UGraph(std::uint64_t n, std::span<const Arc> edges) : n_(n) {
  if (n > (std::uint64_t{1} << 32)) throw DomainError("UGraph supports at most 2^32 vertices");
  std::vector<Arc> es;
  es.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw DomainError(fmt::format("edge ({}, {}) has an endpoint >= n={}", u, v, n));
    }
    if (u == v) {
      ++loops_dropped_;
      continue;
    }
    if (u > v) std::swap(u, v);
    es.emplace_back(u, v);
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());

  offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : es) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (std::uint64_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  adj_.resize(2 * es.size());
  std::vector<std::uint64_t> pos(offsets_.begin(), offsets_.end() - 1);
  // es is sorted by (u, v), so each adjacency list comes out ascending.
  for (const auto& [u, v] : es) adj_[pos[v]++] = static_cast<std::uint32_t>(u);
  for (const auto& [u, v] : es) adj_[pos[u]++] = static_cast<std::uint32_t>(v);
}

UGraph UGraph::from_k(int k, std::span<const Arc> edges) {
  if (k < 0 || k > 32) throw DomainError(fmt::format("graph width k={} outside [0, 32]", k));
  UGraph g(std::uint64_t{1} << k, edges);
  g.k_ = k;
  return g;
}

bool UGraph::has_edge(std::uint64_t u, std::uint64_t v) const {
  if (u >= n_ || v >= n_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(v));
}

std::vector<Arc> UGraph::edges() const {
  std::vector<Arc> out;
  out.reserve(num_edges());
  for (std::uint64_t u = 0; u < n_; ++u) {
    for (std::uint32_t v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

UndirectedResult to_undirected(const DirectedGraph& dg) {
  UGraph g = UGraph::from_k(dg.k(), dg.arcs());
  const std::uint64_t loops = g.loops_dropped();
  return {std::move(g), loops};
}

}  // namespace kronlab
