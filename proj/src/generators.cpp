#include "kronlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include <fmt/format.h>

#include "kronlab/bitlabel.hpp"
#include "kronlab/errors.hpp"
#include "kronlab/logmath.hpp"
#include "kronlab/weight_classes.hpp"

namespace kronlab {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Skg: return "skg";
    case Variant::RmatErasure: return "rmat-erasure";
    case Variant::RmatRethrow: return "rmat-rethrow";
    case Variant::RmatFlip: return "rmat-flip";
    case Variant::SkgSymmetricEdge: return "skg-edge";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::Skg, Variant::RmatErasure, Variant::RmatRethrow, Variant::RmatFlip,
                    Variant::SkgSymmetricEdge}) {
    if (to_string(v) == name) return v;
  }
  throw ConfigError(fmt::format("unknown model '{}'", name));
}

std::uint64_t variant_tag(Variant v) { return static_cast<std::uint64_t>(v) + 1; }

void GenSpec::validate() const {
  switch (variant) {
    case Variant::Skg:
      if (init.flavor() != Flavor::SkgScaled) {
        throw ConfigError("model skg requires an SKG-scaled initiator");
      }
      break;
    case Variant::SkgSymmetricEdge:
      if (!init.symmetric()) throw ConfigError("model skg-edge requires b == c");
      [[fallthrough]];
    default:
      if (init.flavor() != Flavor::RmatNormalized) {
        throw ConfigError(fmt::format("model {} requires an R-MAT initiator", to_string(variant)));
      }
  }
}

std::uint64_t GenSpec::stream_key() const {
  return kronlab::stream_key(master_seed, trial_index, variant_tag(variant));
}

Arc throw_arc(Stream& rng, const Initiator& init, int k) {
  const double a = init.a(), b = init.b(), c = init.c(), d = init.d();
  const double p_row1 = c + d;
  const double top = a + b;
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  for (int r = 0; r < k; ++r) {
    const bool c1 = rng.uniform() < p_row1 / (top + p_row1);
    const double row = c1 ? p_row1 : top;
    if (row <= 0.0) throw DegenerateInitiator("throw reached an all-zero initiator row");
    const double p_c2 = (c1 ? d : b) / row;
    const bool c2 = rng.uniform() < p_c2;
    u = (u << 1) | static_cast<std::uint64_t>(c1);
    v = (v << 1) | static_cast<std::uint64_t>(c2);
  }
  return {u, v};
}

double cell_probability(Variant v, double w, std::uint64_t m) {
  switch (v) {
    case Variant::Skg: return std::min(1.0, w);
    case Variant::RmatFlip: return one_minus_pow_complement(w, static_cast<double>(m));
    case Variant::SkgSymmetricEdge: return std::min(1.0, 2.0 * static_cast<double>(m) * w);
    default: throw ConfigError("cell_probability: not a cell-sweep variant");
  }
}

namespace {

std::uint64_t cell_key(const Arc& a, int k) { return (a.first << k) | a.second; }

GenResult run_erasure(const GenSpec& spec) {
  const int k = spec.dens.k();
  const std::uint64_t m = spec.dens.m();
  Stream rng(spec.stream_key());
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m);
  std::vector<Arc> arcs;
  arcs.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    const Arc a = throw_arc(rng, spec.init, k);
    if (seen.insert(cell_key(a, k)).second) arcs.push_back(a);
  }
  GenResult r;
  r.trace.throws_total = m;
  r.trace.collisions = m - arcs.size();
  r.graph = DirectedGraph(k, std::move(arcs));
  return r;
}

GenResult run_rethrow(const GenSpec& spec, const GenOptions& opts) {
  const int k = spec.dens.k();
  const std::uint64_t m = spec.dens.m();
  const double cells = std::ldexp(1.0, 2 * k);
  if (static_cast<double>(m) > opts.rethrow_density_cap * cells) {
    throw CapacityExceeded(fmt::format("rethrow needs m={} <= {} * 4^{}", m,
                                       opts.rethrow_density_cap, k));
  }
  Stream rng(spec.stream_key());
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m);
  std::vector<Arc> arcs;
  arcs.reserve(m);
  GenResult r;
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uint64_t tries = 0;
    for (;;) {
      const Arc a = throw_arc(rng, spec.init, k);
      ++r.trace.throws_total;
      if (seen.insert(cell_key(a, k)).second) {
        arcs.push_back(a);
        break;
      }
      ++r.trace.collisions;
      ++r.trace.rethrows_total;
      if (++tries > opts.per_arc_rethrow_limit) {
        throw RethrowLimit(fmt::format("arc {} rethrown more than {} times", i,
                                       opts.per_arc_rethrow_limit));
      }
    }
  }
  r.graph = DirectedGraph(k, std::move(arcs));
  return r;
}

DirectedGraph run_naive_sweep(const GenSpec& spec) {
  const int k = spec.dens.k();
  const std::uint64_t n = spec.dens.n();
  const std::uint64_t m = spec.dens.m();
  const auto& e = spec.init.entries();
  const bool edge_model = spec.variant == Variant::SkgSymmetricEdge;
  Stream rng(spec.stream_key());
  std::vector<Arc> arcs;
  for (std::uint64_t u = 0; u < n; ++u) {
    for (std::uint64_t v = edge_model ? u + 1 : 0; v < n; ++v) {
      const double p = cell_probability(spec.variant, weight_of(pair_counts_raw(u, v, k), e), m);
      if (rng.uniform() < p) arcs.emplace_back(u, v);
    }
  }
  return DirectedGraph(k, std::move(arcs));
}

// `count` distinct values from [0, size), ascending.
std::vector<std::uint64_t> sample_distinct(Stream& rng, std::uint64_t size, std::uint64_t count) {
  std::vector<std::uint64_t> out;
  if (count == 0) return out;
  if (count >= size) {
    out.resize(size);
    for (std::uint64_t i = 0; i < size; ++i) out[i] = i;
    return out;
  }
  const bool complement = count > size / 2;
  const std::uint64_t draw = complement ? size - count : count;
  // Floyd's algorithm.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(draw);
  for (std::uint64_t j = size - draw; j < size; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  if (!complement) {
    out.assign(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  out.reserve(count);
  for (std::uint64_t i = 0; i < size; ++i) {
    if (!chosen.count(i)) out.push_back(i);
  }
  return out;
}

}  // namespace

DirectedGraph sample_by_class(const std::array<double, 4>& entries, int k,
                              const std::function<double(double)>& probability, Stream& rng,
                              bool upper_only) {
  std::vector<Arc> arcs;
  for (const WeightClass& wc : weight_classes(entries, k)) {
    const double p = probability(wc.weight);
    if (p <= 0.0) continue;
    const auto size = static_cast<std::uint64_t>(wc.size);
    std::uint64_t count = size;
    if (p < 1.0) {
      std::binomial_distribution<long long> bin(static_cast<long long>(size), p);
      count = static_cast<std::uint64_t>(bin(rng));
    }
    for (std::uint64_t rank : sample_distinct(rng, size, count)) {
      const Arc a = unrank_cell(wc.counts, rank);
      if (upper_only && a.first >= a.second) continue;
      arcs.push_back(a);
    }
  }
  return DirectedGraph(k, std::move(arcs));
}

DirectedGraph generate_flip_fast(const GenSpec& spec, const GenOptions& opts) {
  spec.validate();
  if (spec.variant != Variant::Skg && spec.variant != Variant::RmatFlip &&
      spec.variant != Variant::SkgSymmetricEdge) {
    throw ConfigError("fast path applies to skg, rmat-flip and skg-edge only");
  }
  const int k = spec.dens.k();
  if (k > opts.fast_max_k) {
    throw SizeLimit(fmt::format("k={} exceeds the fast-path limit {}", k, opts.fast_max_k));
  }
  const std::uint64_t m = spec.dens.m();
  const Variant variant = spec.variant;
  Stream rng(spec.stream_key());
  return sample_by_class(
      spec.init.entries(), k, [&](double w) { return cell_probability(variant, w, m); }, rng,
      variant == Variant::SkgSymmetricEdge);
}

GenResult generate(const GenSpec& spec, const GenOptions& opts) {
  spec.validate();
  switch (spec.variant) {
    case Variant::RmatErasure: return run_erasure(spec);
    case Variant::RmatRethrow: return run_rethrow(spec, opts);
    default: break;
  }
  const int k = spec.dens.k();
  GenResult r;
  if (opts.fast_path) {
    r.graph = generate_flip_fast(spec, opts);
  } else if (k <= opts.naive_max_k) {
    r.graph = run_naive_sweep(spec);
  } else {
    throw SizeLimit(fmt::format("k={} exceeds the naive sweep limit {}; enable the fast path", k,
                                opts.naive_max_k));
  }
  return r;
}

}  // namespace kronlab
