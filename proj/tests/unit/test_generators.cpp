#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "kronlab/bounds.hpp"
#include "kronlab/errors.hpp"
#include "kronlab/generators.hpp"
#include "oracles.hpp"

using namespace kronlab;

namespace {

const Initiator kSkew = Initiator::rmat(0.45, 0.275, 0.2, 0.075);
const Initiator kUniform = Initiator::rmat(0.25, 0.25, 0.25, 0.25);

std::vector<double> flip_probabilities(const Initiator& init, int k, std::uint64_t m) {
  const std::uint64_t n = std::uint64_t{1} << k;
  std::vector<double> p(n * n);
  for (std::uint64_t u = 0; u < n; ++u)
    for (std::uint64_t v = 0; v < n; ++v) {
      const double w = oracle::arc_weight(u, v, k, init.entries());
      p[u * n + v] = 1.0 - std::pow(1.0 - w, static_cast<double>(m));
    }
  return p;
}

// Cells whose empirical frequency leaves the 4 sigma band around p.
int outside_band(const std::vector<std::uint64_t>& counts, const std::vector<double>& p, double trials) {
  int bad = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double f = counts[i] / trials;
    const double sigma = std::sqrt(p[i] * (1 - p[i]) / trials);
    if (std::abs(f - p[i]) > 4 * sigma + 1e-15) ++bad;
  }
  return bad;
}

std::vector<Arc> arcs_of(const GenSpec& spec, const GenOptions& opts = {}) {
  return generate(spec, opts).graph.arcs();
}

}  // namespace

TEST(ThrowArc, DeterministicCell) {
  Stream rng(1);
  const Initiator one = Initiator::rmat(1, 0, 0, 0);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(throw_arc(rng, one, 5), (Arc{0, 0}));
}

TEST(ThrowArc, UniformChiSquare) {
  Stream rng(stream_key(3, 0, 0));
  std::vector<std::uint64_t> c(64, 0);
  const int throws = 1'000'000;
  for (int i = 0; i < throws; ++i) {
    const Arc a = throw_arc(rng, kUniform, 3);
    ++c[a.first * 8 + a.second];
  }
  const double expect = throws / 64.0;
  double chi2 = 0.0;
  for (auto x : c) chi2 += (x - expect) * (x - expect) / expect;
  boost::math::chi_squared dist(63);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 0.001) << chi2;
}

TEST(ThrowArc, SkewedCellLawWithinFourSigma) {
  Stream rng(stream_key(5, 0, 0));
  std::vector<std::uint64_t> c(64, 0);
  const int throws = 400'000;
  for (int i = 0; i < throws; ++i) {
    const Arc a = throw_arc(rng, kSkew, 3);
    ++c[a.first * 8 + a.second];
  }
  int bad = 0;
  for (std::uint64_t u = 0; u < 8; ++u)
    for (std::uint64_t v = 0; v < 8; ++v) {
      const double w = oracle::arc_weight(u, v, 3, kSkew.entries());
      const double sigma = std::sqrt(w * (1 - w) / throws);
      if (std::abs(c[u * 8 + v] / double(throws) - w) > 4 * sigma) ++bad;
    }
  EXPECT_LE(bad, 1);
}

TEST(Generate, ErasureShortfallBelowWeightBound) {
  const DensityParams dens(4.0, 10);
  const double m = static_cast<double>(dens.m());
  double shortfall = 0.0;
  int strictly_less = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const GenResult r = generate({kUniform, dens, Variant::RmatErasure, 9, std::uint64_t(t)});
    EXPECT_LE(r.graph.num_arcs(), dens.m());
    EXPECT_EQ(r.trace.throws_total, dens.m());
    EXPECT_EQ(r.trace.rethrows_total, 0u);
    EXPECT_EQ(r.trace.collisions, dens.m() - r.graph.num_arcs());
    strictly_less += r.graph.num_arcs() < dens.m();
    shortfall += static_cast<double>(r.trace.collisions);
  }
  shortfall /= trials;
  EXPECT_GE(strictly_less, 95);
  // Birthday estimate m^2 / (2 * 4^k) for the uniform initiator.
  EXPECT_NEAR(shortfall, m * m / (2.0 * 1048576.0), 2.0);
  const double bound = m * erasure_weight_bound(ordered_entries(kUniform), 10, 4.0);
  EXPECT_LE(shortfall, bound);
}

TEST(Generate, RethrowProducesExactlyM) {
  for (int t = 0; t < 20; ++t) {
    const DensityParams dens(3.0, 6);
    const GenResult r = generate({kSkew, dens, Variant::RmatRethrow, 2, std::uint64_t(t)});
    EXPECT_EQ(r.graph.num_arcs(), dens.m());
    EXPECT_EQ(r.trace.throws_total, dens.m() + r.trace.rethrows_total);
    EXPECT_LE(r.trace.collisions, r.trace.throws_total);
  }
}

TEST(Generate, RethrowLimits) {
  EXPECT_THROW(generate({kUniform, DensityParams(2.0, 2), Variant::RmatRethrow, 1, 0}), CapacityExceeded);
  GenOptions o;
  o.per_arc_rethrow_limit = 100;
  EXPECT_THROW(generate({Initiator::rmat(1, 0, 0, 0), DensityParams(0.5, 2), Variant::RmatRethrow, 1, 0}, o),
               RethrowLimit);
}

TEST(Generate, NaiveSizeLimit) {
  GenOptions o;
  o.fast_path = false;
  EXPECT_THROW(generate({kUniform, DensityParams(1.0, 16), Variant::RmatFlip, 1, 0}, o), SizeLimit);
}

TEST(Generate, SpecValidation) {
  const Initiator s = Initiator::skg(0.5, 0.5, 0.5, 0.5);
  EXPECT_THROW(generate({s, DensityParams(1.0, 3), Variant::RmatFlip, 1, 0}), ConfigError);
  EXPECT_THROW(generate({kUniform, DensityParams(1.0, 3), Variant::Skg, 1, 0}), ConfigError);
  EXPECT_THROW(generate({kSkew, DensityParams(1.0, 3), Variant::SkgSymmetricEdge, 1, 0}), ConfigError);
}

TEST(Generate, Deterministic) {
  for (Variant v : {Variant::RmatErasure, Variant::RmatRethrow, Variant::RmatFlip}) {
    const GenSpec a{kSkew, DensityParams(2.0, 8), v, 42, 3};
    EXPECT_EQ(generate(a).graph.arcs(), generate(a).graph.arcs());
    GenSpec b = a;
    b.trial_index = 4;
    EXPECT_NE(generate(a).graph.arcs(), generate(b).graph.arcs());
  }
}

TEST(Generate, FlipWithSingleArcBudgetHasWeightMarginals) {
  // m = 1 gives 1 - (1 - w)^1 = w.
  const DensityParams dens(0.25, 2);
  ASSERT_EQ(dens.m(), 1u);
  std::vector<std::uint64_t> c(16, 0);
  const int trials = 100'000;
  for (int t = 0; t < trials; ++t)
    for (const auto& [u, v] : arcs_of({kSkew, dens, Variant::RmatFlip, 8, std::uint64_t(t)}))
      ++c[u * 4 + v];
  std::vector<double> p(16);
  for (std::uint64_t u = 0; u < 4; ++u)
    for (std::uint64_t v = 0; v < 4; ++v) p[u * 4 + v] = oracle::arc_weight(u, v, 2, kSkew.entries());
  EXPECT_EQ(outside_band(c, p, trials), 0);
}

TEST(Generate, SkgUniformIsErdosRenyi) {
  const int k = 8;
  const DensityParams dens(1.0, k);
  const Initiator s = rmat_to_skg(kUniform, dens);
  double mean = 0.0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t)
    mean += generate({s, dens, Variant::Skg, 4, std::uint64_t(t)}).graph.num_arcs();
  mean /= trials;
  // 4^k cells with probability 2^-k each.
  const double want = 256.0, sd = std::sqrt(65536.0 * (1.0 / 256) * (1 - 1.0 / 256) / trials);
  EXPECT_NEAR(mean, want, 4 * sd);
}

TEST(Generate, ZeroAndOneProbabilityClasses) {
  const DensityParams dens(2.0, 6);
  const Initiator no_d = Initiator::rmat(0.45, 0.275, 0.275, 0.0);
  for (const auto& [u, v] : arcs_of({no_d, dens, Variant::RmatFlip, 1, 0})) {
    EXPECT_EQ(u & v, 0u);  // no position with both bits set
  }
  const Initiator ones = Initiator::skg(1, 1, 1, 1);
  EXPECT_EQ(generate({ones, DensityParams(1.0, 5), Variant::Skg, 1, 0}).graph.num_arcs(), 1024u);
}

class FastVsNaive : public ::testing::TestWithParam<std::tuple<int, Variant>> {};

TEST_P(FastVsNaive, PerArcMarginalsAgree) {
  const auto [k, variant] = GetParam();
  const DensityParams dens(variant == Variant::Skg ? 1.0 : 2.0, k);
  const Initiator init = variant == Variant::Skg ? rmat_to_skg(kSkew, dens) : kSkew;
  const std::uint64_t n = dens.n();
  std::vector<std::uint64_t> fast(n * n, 0), naive(n * n, 0);
  GenOptions slow;
  slow.fast_path = false;
  const int trials = 100'000;
  for (int t = 0; t < trials; ++t) {
    for (const auto& [u, v] : arcs_of({init, dens, variant, 17, std::uint64_t(t)})) ++fast[u * n + v];
    for (const auto& [u, v] : arcs_of({init, dens, variant, 18, std::uint64_t(t)}, slow))
      ++naive[u * n + v];
  }
  std::vector<double> p(n * n);
  for (std::uint64_t u = 0; u < n; ++u)
    for (std::uint64_t v = 0; v < n; ++v) {
      const double w = oracle::arc_weight(u, v, k, init.entries());
      p[u * n + v] = variant == Variant::Skg ? w : 1.0 - std::pow(1.0 - w, double(dens.m()));
    }
  EXPECT_LE(outside_band(fast, p, trials), 1);
  EXPECT_LE(outside_band(naive, p, trials), 1);
  int bad = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double s = std::sqrt(2 * p[i] * (1 - p[i]) / trials);
    if (std::abs(double(fast[i]) - double(naive[i])) / trials > 4 * s + 1e-15) ++bad;
  }
  EXPECT_LE(bad, 1);
}

INSTANTIATE_TEST_SUITE_P(SmallK, FastVsNaive,
                         ::testing::Combine(::testing::Values(3, 4),
                                            ::testing::Values(Variant::RmatFlip, Variant::Skg)));

TEST(Generate, ErasureMarginalEqualsFlipClosedForm) {
  const DensityParams dens(2.0, 3);
  std::vector<std::uint64_t> c(64, 0);
  const int trials = 20'000;
  for (int t = 0; t < trials; ++t)
    for (const auto& [u, v] : arcs_of({kSkew, dens, Variant::RmatErasure, 21, std::uint64_t(t)}))
      ++c[u * 8 + v];
  EXPECT_LE(outside_band(c, flip_probabilities(kSkew, 3, dens.m()), trials), 1);
}

TEST(Generate, SkgSymmetricEdgeProbabilities) {
  const Initiator sym = Initiator::rmat(0.4, 0.2, 0.2, 0.2);
  const DensityParams dens(0.5, 3);  // m = 4
  std::vector<std::uint64_t> c(64, 0);
  const int trials = 50'000;
  for (int t = 0; t < trials; ++t) {
    for (const auto& [u, v] : arcs_of({sym, dens, Variant::SkgSymmetricEdge, 5, std::uint64_t(t)})) {
      ASSERT_LT(u, v);
      ++c[u * 8 + v];
    }
  }
  std::vector<double> p(64, 0.0);
  for (std::uint64_t u = 0; u < 8; ++u)
    for (std::uint64_t v = u + 1; v < 8; ++v)
      p[u * 8 + v] = std::min(1.0, 2.0 * 4 * oracle::arc_weight(u, v, 3, sym.entries()));
  EXPECT_EQ(outside_band(c, p, trials), 0);
}

TEST(ToUndirected, Examples) {
  const DirectedGraph dg(2, {{1, 2}, {2, 1}, {3, 3}});
  const UndirectedResult r = to_undirected(dg);
  EXPECT_EQ(r.loops_dropped, 1u);
  EXPECT_EQ(r.graph.edges(), (std::vector<Arc>{{1, 2}}));
  EXPECT_EQ(to_undirected(DirectedGraph(3, {})).graph.num_edges(), 0u);
}

TEST(ToUndirected, EdgeProbabilityFromIndependentArcs) {
  const DensityParams dens(2.0, 3);
  const auto p = flip_probabilities(kSkew, 3, dens.m());
  std::vector<std::uint64_t> c(64, 0);
  const int trials = 50'000;
  for (int t = 0; t < trials; ++t) {
    const auto r = to_undirected(generate({kSkew, dens, Variant::RmatFlip, 6, std::uint64_t(t)}).graph);
    for (const auto& [u, v] : r.graph.edges()) ++c[u * 8 + v];
  }
  std::vector<double> q(64, 0.0);
  for (int u = 0; u < 8; ++u)
    for (int v = u + 1; v < 8; ++v) q[u * 8 + v] = 1 - (1 - p[u * 8 + v]) * (1 - p[v * 8 + u]);
  EXPECT_EQ(outside_band(c, q, trials), 0);
}
