#include <gtest/gtest.h>

#include <cmath>

#include "kronlab/errors.hpp"
#include "kronlab/initiator.hpp"

using namespace kronlab;

TEST(Initiator, RmatRequiresUnitSum) {
  EXPECT_NO_THROW(Initiator::rmat(0.25, 0.25, 0.25, 0.25));
  EXPECT_THROW(Initiator::rmat(0.3, 0.3, 0.3, 0.3), InvalidInitiator);
  EXPECT_THROW(Initiator::rmat(-0.1, 0.5, 0.3, 0.3), InvalidInitiator);
}

TEST(Initiator, SkgRequiresUnitInterval) {
  EXPECT_NO_THROW(Initiator::skg(1.0, 0.0, 0.5, 0.9));
  EXPECT_THROW(Initiator::skg(1.01, 0.0, 0.5, 0.9), InvalidInitiator);
}

TEST(Initiator, SymmetricIsExactEquality) {
  EXPECT_TRUE(Initiator::rmat(0.4, 0.2, 0.2, 0.2).symmetric());
  EXPECT_FALSE(Initiator::rmat(0.4, 0.2, 0.2 + 1e-15, 0.2 - 1e-15).symmetric());
}

TEST(Initiator, ParseEntries) {
  const auto e = parse_entries("0.45, 0.275,0.2,0.075");
  EXPECT_DOUBLE_EQ(e[1], 0.275);
  EXPECT_THROW(parse_entries("0.1,0.2,0.3"), ParseError);
  EXPECT_THROW(parse_entries("0.1,0.2,0.3,0.4,0.5"), ParseError);
  EXPECT_THROW(parse_entries("0.1,x,0.3,0.4"), ParseError);
}

TEST(Initiator, ToStringRoundTrips) {
  const Initiator a = Initiator::rmat(0.1, 0.2, 0.3, 0.4);
  const auto e = parse_entries(a.to_string());
  EXPECT_EQ(e, a.entries());
}

TEST(RmatToSkg, UniformUnitDensity) {
  const Initiator s = rmat_to_skg(Initiator::rmat(0.25, 0.25, 0.25, 0.25), DensityParams(1.0, 10));
  for (double x : s.entries()) EXPECT_DOUBLE_EQ(x, 0.5);
  EXPECT_EQ(s.flavor(), Flavor::SkgScaled);
}

TEST(RmatToSkg, BoundaryIsFeasible) {
  const Initiator s = rmat_to_skg(Initiator::rmat(0.25, 0.25, 0.25, 0.25), DensityParams(4.0, 2));
  for (double x : s.entries()) EXPECT_DOUBLE_EQ(x, 1.0);
}

TEST(RmatToSkg, AsNewmanMatchesHighPrecision) {
  // 0.432 * 2 * 4.22^(1/15) to 30 digits.
  const Preset& p = find_preset("AS-NEWMAN");
  const Initiator s = rmat_to_skg(p.init, DensityParams(p.mu, 15));
  EXPECT_NEAR(s.a(), 0.951045377852817738, 1e-14);
  EXPECT_LE(s.a(), 1.0);
  EXPECT_NEAR(scaling_theta(DensityParams(4.22, 15)), 2.201493930214855876, 1e-14);
  EXPECT_NEAR(feasibility_bound(DensityParams(4.22, 15)), 0.454237000736315685, 1e-14);
}

TEST(RmatToSkg, InfeasibleReportsEntryAndBound) {
  const Initiator r = Initiator::rmat(0.45, 0.275, 0.275, 0.0);
  try {
    rmat_to_skg(r, DensityParams(6.0, 10));
    FAIL() << "expected InfeasibleScaling";
  } catch (const InfeasibleScaling& e) {
    EXPECT_DOUBLE_EQ(e.entry(), 0.45);
    EXPECT_NEAR(e.bound(), 0.5 * std::pow(6.0, -0.1), 1e-15);
  }
  // The clamped variant never fails.
  const Initiator c = rmat_to_skg_clamped(r, DensityParams(6.0, 10));
  EXPECT_DOUBLE_EQ(c.a(), 1.0);
}

TEST(ExpectedArcs, Examples) {
  EXPECT_NEAR(expected_arcs(Initiator::skg(0.5, 0.5, 0.5, 0.5), 10), 1024.0, 1e-9);
  EXPECT_DOUBLE_EQ(expected_arcs(Initiator::skg(1, 0, 0, 0), 7), 1.0);
  EXPECT_NEAR(expected_arcs(Initiator::skg(0.5, 0.5, 0.5, 0.5), 61) / std::ldexp(1.0, 61), 1.0, 1e-9);
}

TEST(ExpectedArcs, AsNewmanNormalizedRoundTrip) {
  // Printed rows are not normalized; the identity holds for the renormalized row.
  const Initiator r = find_preset("AS-NEWMAN").init.normalized();
  const Initiator s = rmat_to_skg(r, DensityParams(4.22, 15));
  EXPECT_NEAR(expected_arcs(s, 15) / (4.22 * 32768.0), 1.0, 1e-6);
}

TEST(OrderedEntries, Sorted) {
  const auto o = ordered_entries(Initiator::rmat(0.1, 0.4, 0.2, 0.3));
  EXPECT_EQ(o.rho1, 0.4);
  EXPECT_EQ(o.rho2, 0.3);
  EXPECT_EQ(o.rho3, 0.2);
  EXPECT_EQ(o.rho4, 0.1);
  const auto n = ordered_entries(find_preset("AS-NEWMAN").init);
  EXPECT_EQ(n.rho1, 0.432);
  EXPECT_EQ(n.rho2, 0.269);
  EXPECT_EQ(n.rho3, 0.269);
  EXPECT_EQ(n.rho4, 0.009);
  const auto u = ordered_entries(Initiator::rmat(0.25, 0.25, 0.25, 0.25));
  EXPECT_EQ(u.rho1, u.rho4);
}

TEST(DensityParams, Derived) {
  const DensityParams d(4.22, 15);
  EXPECT_EQ(d.n(), 32768u);
  EXPECT_EQ(d.m(), static_cast<std::uint64_t>(std::floor(4.22 * 32768)));
  EXPECT_THROW(DensityParams(0.0, 3), DomainError);
  EXPECT_THROW(DensityParams(0.01, 3), DomainError);  // m would be 0
  EXPECT_THROW(DensityParams(1.0, 0), DomainError);
}

TEST(Presets, TableRows) {
  const auto& rows = table2_presets();
  ASSERT_EQ(rows.size(), 20u);
  const Preset& e = find_preset("EMAIL-INSIDE");
  EXPECT_EQ(e.n, 986u);
  EXPECT_EQ(e.k, 10);
  EXPECT_DOUBLE_EQ(e.mu, 32.58);
  EXPECT_EQ(e.init.entries(), (std::array<double, 4>{0.352, 0.272, 0.272, 0.091}));
  EXPECT_FALSE(e.directed);
  const Preset& d = find_preset("CA-DBLP");
  EXPECT_EQ(d.n, 425957u);
  EXPECT_EQ(d.k, 19);
  EXPECT_DOUBLE_EQ(d.mu, 6.33);
  EXPECT_EQ(d.init.entries(), (std::array<double, 4>{0.453, 0.139, 0.139, 0.260}));
  EXPECT_THROW(find_preset("NOPE"), ConfigError);
}

TEST(Presets, KIsCeilLog2AndSumsWithinPresetTolerance) {
  for (const auto& p : table2_presets()) {
    EXPECT_GE(std::ldexp(1.0, p.k), static_cast<double>(p.n)) << p.name;
    EXPECT_LT(std::ldexp(1.0, p.k - 1), static_cast<double>(p.n)) << p.name;
    EXPECT_NEAR(p.init.sum(), 1.0, kPresetSumTolerance) << p.name;
    EXPECT_EQ(p.init.symmetric(), !p.directed) << p.name;
  }
}

TEST(Presets, AllThetaFeasible) {
  for (const auto& p : table2_presets()) {
    EXPECT_TRUE(scaling_feasible(p.init, DensityParams(p.mu, p.k))) << p.name;
  }
}

// Properties over a deterministic sweep of normalized initiators.
class InitiatorSweep : public ::testing::TestWithParam<int> {};

TEST_P(InitiatorSweep, RoundTripAndExpectedArcs) {
  const int seed = GetParam();
  std::uint64_t s = 0x9e37u * (seed + 1);
  auto next = [&] {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>((s >> 11) & 0xfffff) / 0x100000 + 0.01;
  };
  double e[4] = {next(), next(), next(), next()};
  const double sum = e[0] + e[1] + e[2] + e[3];
  const Initiator r = Initiator::rmat(e[0] / sum, e[1] / sum, e[2] / sum, e[3] / sum);
  for (double mu : {1.0, 2.5, 8.0}) {
    for (int k = 1; k <= 40; ++k) {
      const DensityParams dens(mu, k);
      if (!scaling_feasible(r, dens)) continue;
      // Feasibility is monotone in k for mu >= 1.
      EXPECT_TRUE(scaling_feasible(r, DensityParams(mu, k + 1)));
      const Initiator sk = rmat_to_skg(r, dens);
      const double theta = scaling_theta(dens);
      for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(sk.entries()[i] / theta, r.entries()[i], 1e-12 * r.entries()[i]);
      }
      EXPECT_NEAR(expected_arcs(sk, k) / (mu * std::ldexp(1.0, k)), 1.0, 1e-9);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, InitiatorSweep, ::testing::Range(0, 25));
