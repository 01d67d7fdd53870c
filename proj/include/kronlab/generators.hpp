#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "kronlab/graph.hpp"
#include "kronlab/initiator.hpp"
#include "kronlab/rng.hpp"

namespace kronlab {

enum class Variant { Skg, RmatErasure, RmatRethrow, RmatFlip, SkgSymmetricEdge };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);
std::uint64_t variant_tag(Variant v);

/// A complete, seeded description of one generation run.
struct GenSpec {
  Initiator init;
  DensityParams dens;
  Variant variant;
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;

  /// Throws ConfigError when the initiator flavor does not fit the variant.
  void validate() const;
  std::uint64_t stream_key() const;
};

struct ThrowTrace {
  std::uint64_t throws_total = 0;
  std::uint64_t collisions = 0;
  std::uint64_t rethrows_total = 0;
};

struct GenOptions {
  /// Weight-class sampling for the cell-sweep variants. When false the naive
  /// 4^k sweep runs and k is limited by naive_max_k.
  bool fast_path = true;
  int naive_max_k = 15;
  int fast_max_k = 30;
  /// Rethrow refuses m above this fraction of the 4^k cells.
  double rethrow_density_cap = 0.25;
  std::uint64_t per_arc_rethrow_limit = 1'000'000;
};

struct GenResult {
  DirectedGraph graph;
  ThrowTrace trace;
};

/// One R-MAT throw of k rounds. Round r fixes bit position r (MSB first):
/// C1 picks the tail bit with P = c + d, then C2 picks the head bit with
/// P = b/(a+b) after C1 = 0 and d/(c+d) after C1 = 1.
Arc throw_arc(Stream& rng, const Initiator& init, int k);

GenResult generate(const GenSpec& spec, const GenOptions& opts = {});

/// Weight-class sampler for Skg, RmatFlip and SkgSymmetricEdge.
DirectedGraph generate_flip_fast(const GenSpec& spec, const GenOptions& opts = {});

/// Independent per-cell coins where the probability depends only on the arc
/// weight under `entries`. With `upper_only` cells with u >= v are skipped.
DirectedGraph sample_by_class(const std::array<double, 4>& entries, int k,
                              const std::function<double(double)>& probability, Stream& rng,
                              bool upper_only);

/// Per-cell presence probability of a cell-sweep variant for arc weight w
/// under the spec initiator (for Skg, w is the SKG-scaled product).
double cell_probability(Variant v, double w, std::uint64_t m);

}  // namespace kronlab
