#include "kronlab/graphcore.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "kronlab/bitlabel.hpp"
#include "kronlab/errors.hpp"

namespace kronlab {

std::vector<std::uint64_t> CoreDecomposition::histogram() const {
  std::vector<std::uint64_t> h(degeneracy + 1, 0);
  for (std::uint32_t c : core_number) ++h[c];
  return h;
}

CoreDecomposition core_decomposition(const UGraph& g) {
  const std::uint64_t n = g.num_vertices();
  CoreDecomposition out;
  out.core_number.assign(n, 0);
  if (n == 0) return out;

  std::vector<std::uint32_t> deg(n);
  std::uint32_t max_deg = 0;
  for (std::uint64_t v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  // bin[d] = first position of degree-d vertices in vert.
  std::vector<std::uint64_t> bin(max_deg + 1, 0);
  for (std::uint64_t v = 0; v < n; ++v) ++bin[deg[v]];
  std::uint64_t start = 0;
  for (std::uint32_t d = 0; d <= max_deg; ++d) {
    const std::uint64_t cnt = bin[d];
    bin[d] = start;
    start += cnt;
  }
  std::vector<std::uint64_t> vert(n), pos(n);
  for (std::uint64_t v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (std::uint32_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t v = vert[i];
    for (std::uint32_t u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        const std::uint32_t du = deg[u];
        const std::uint64_t pu = pos[u];
        const std::uint64_t pw = bin[du];
        const std::uint64_t w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  for (std::uint64_t v = 0; v < n; ++v) {
    out.core_number[v] = deg[v];
    out.degeneracy = std::max(out.degeneracy, deg[v]);
  }
  return out;
}

std::uint32_t degeneracy_oracle(const UGraph& g) {
  const std::uint64_t n = g.num_vertices();
  if (n > kOracleMaxVertices) {
    throw SizeLimit(fmt::format("degeneracy oracle limited to {} vertices", kOracleMaxVertices));
  }
  std::vector<std::uint32_t> deg(n);
  for (std::uint64_t v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<bool> removed(n, false);
  std::uint32_t best = 0;
  for (std::uint64_t step = 0; step < n; ++step) {
    std::uint64_t pick = n;
    for (std::uint64_t v = 0; v < n; ++v) {
      if (!removed[v] && (pick == n || deg[v] < deg[pick])) pick = v;
    }
    best = std::max(best, deg[pick]);
    removed[pick] = true;
    for (std::uint32_t u : g.neighbors(pick)) {
      if (!removed[u]) --deg[u];
    }
  }
  return best;
}

SliceReport slice_report(const UGraph& g, int k) {
  if (k < 0 || k > 32 || g.num_vertices() != (std::uint64_t{1} << k)) {
    throw DimensionMismatch(
        fmt::format("slice report needs 2^k vertices (k={}, n={})", k, g.num_vertices()));
  }
  const std::uint64_t n = g.num_vertices();
  std::vector<std::uint8_t> hw(n);
  for (std::uint64_t v = 0; v < n; ++v) hw[v] = static_cast<std::uint8_t>(__builtin_popcountll(v));

  std::vector<std::uint64_t> by_max(k + 1, 0);
  std::vector<std::uint64_t> lower_sum(k + 1, 0);
  std::vector<std::uint32_t> lower_max(k + 1, 0);
  for (std::uint64_t x = 0; x < n; ++x) {
    std::uint32_t lower = 0;
    for (std::uint32_t y : g.neighbors(x)) {
      if (hw[y] <= hw[x]) ++lower;
      if (x < y) ++by_max[std::max(hw[x], hw[y])];
    }
    lower_sum[hw[x]] += lower;
    lower_max[hw[x]] = std::max(lower_max[hw[x]], lower);
  }

  SliceReport rep;
  rep.k = k;
  std::uint64_t cum_v = 0;
  std::uint64_t cum_e = 0;
  for (int ell = 0; ell <= k; ++ell) {
    SliceRow r;
    r.ell = ell;
    r.slice_vertices = slice_size(k, ell);
    cum_v += r.slice_vertices;
    cum_e += by_max[ell];
    r.cumulative_vertices = cum_v;
    r.edges_within = cum_e;
    r.density = static_cast<double>(cum_e) / static_cast<double>(cum_v);
    r.lower_degree_sum = lower_sum[ell];
    r.lower_degree_mean = static_cast<double>(lower_sum[ell]) / static_cast<double>(r.slice_vertices);
    r.lower_degree_max = lower_max[ell];
    rep.rows.push_back(r);
  }
  return rep;
}

std::uint32_t degree_into_lower(const UGraph& g, std::uint64_t x, int ell) {
  std::uint32_t c = 0;
  for (std::uint32_t y : g.neighbors(x)) {
    if (__builtin_popcountll(y) <= ell) ++c;
  }
  return c;
}

std::uint64_t top_degree_subgraph_edges(const UGraph& g, std::uint64_t n_top) {
  const std::uint64_t n = g.num_vertices();
  if (n_top > n) throw DomainError(fmt::format("N={} exceeds vertex count {}", n_top, n));
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  // Stable sort keeps ascending labels within equal degrees.
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return g.degree(a) > g.degree(b);
  });
  std::vector<bool> chosen(n, false);
  for (std::uint64_t i = 0; i < n_top; ++i) chosen[order[i]] = true;
  std::uint64_t edges = 0;
  for (std::uint64_t i = 0; i < n_top; ++i) {
    const std::uint32_t u = order[i];
    for (std::uint32_t v : g.neighbors(u)) {
      if (u < v && chosen[v]) ++edges;
    }
  }
  return edges;
}

std::uint64_t isolated_count(const UGraph& g) {
  std::uint64_t c = 0;
  for (std::uint64_t v = 0; v < g.num_vertices(); ++v) c += g.degree(v) == 0;
  return c;
}

}  // namespace kronlab
