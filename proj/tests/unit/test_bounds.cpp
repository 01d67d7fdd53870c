#include <gtest/gtest.h>

#include <cmath>

#include "kronlab/bitlabel.hpp"
#include "kronlab/bounds.hpp"
#include "kronlab/errors.hpp"
#include "oracles.hpp"

using namespace kronlab;
using oracle::cpp_rational;

namespace {

const SymmetricEntries kMain{0.45, 0.2, 0.15};

SymmetricParams params(const SymmetricEntries& e, double mu, int k) {
  return SymmetricParams::make(e.alpha, e.beta, e.delta, mu, k);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST(SymmetricParams, Validation) {
  EXPECT_THROW(SymmetricParams::make(0.5, 0.2, 0.2, 1.0, 5), ConfigError);
  const auto p = SymmetricParams::make(0.45, 0.2, 0.15, 2.0, 8);
  EXPECT_DOUBLE_EQ(p.m(), 512.0);
  EXPECT_EQ(p.initiator(), Initiator::rmat(0.45, 0.2, 0.2, 0.15));
  EXPECT_EQ(slice_index(0.3, 10), 3);
  EXPECT_EQ(slice_index(0.7, 10), 7);
  EXPECT_EQ(slice_index(0.999, 10), 9);
}

TEST(ExpectedLowerDegree, TauZeroIsSingleTerm) {
  const auto p = params(kMain, 2.0, 12);
  EXPECT_NEAR(expected_lower_degree(p, 0.0), 2 * p.m() * std::pow(0.45, 12), 1e-12);
  EXPECT_NEAR(log_lambda_exact(p, 0.0), 0.0, 1e-15);
}

TEST(ExpectedLowerDegree, FactorizationIdentity) {
  for (int k : {5, 8, 20, 60}) {
    for (double tau : {0.1, 0.5, 0.9}) {
      const auto p = params(kMain, 2.0, k);
      const int t = slice_index(tau, k);
      const double lhs = log_expected_lower_degree(p, tau);
      const double rhs = std::log(2 * 2.0) + k * std::log(0.9) + t * std::log(0.2 / 0.45) + log_lambda_exact(p, tau);
      EXPECT_LE(std::abs(std::expm1(lhs - rhs)), 1e-9);
    }
  }
}

TEST(ExpectedLowerDegree, MatchesEnumerationOverLowSlices) {
  for (int k : {4, 8, 11, 14}) {
    for (double tau : {0.25, 0.5, 0.75}) {
      const auto p = params(kMain, 2.0, k);
      const int t = slice_index(tau, k);
      const auto entries = p.initiator().entries();
      // Any x in F_t; take the t lowest bits set.
      const std::uint64_t x = (std::uint64_t{1} << t) - 1;
      double sum = 0.0;
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << k); ++y)
        if (oracle::ones(y, k) <= t) sum += oracle::arc_weight(x, y, k, entries);
      EXPECT_LE(rel(expected_lower_degree(p, tau), 2 * p.m() * sum), 1e-9) << k << " " << tau;
    }
  }
}

TEST(LambdaExact, MatchesRationalDoubleSum) {
  const cpp_rational a(45, 100), b(20, 100), d(15, 100);
  for (int k : {1, 8, 25}) {
    for (double tau : {0.0, 0.3, 0.5, 1.0}) {
      const auto p = params(kMain, 1.0, k);
      const int t = slice_index(tau, k);
      const double want = static_cast<double>(oracle::lambda_exact(a, b, d, k, t));
      EXPECT_LE(rel(std::exp(log_lambda_exact(p, tau)), want), 1e-12) << k << " " << tau;
    }
  }
}

TEST(LambdaExact, DeltaZeroAndDegenerateRatios) {
  const SymmetricEntries e{0.5, 0.25, 0.0};
  const auto p = params(e, 1.0, 10);
  // Only i = 0 survives: sum_{j<=t} C(k-t, j) (1/2)^j.
  double want = 0.0;
  for (int j = 0; j <= 5; ++j) want += static_cast<double>(oracle::binom(5, j)) * std::pow(0.5, j);
  EXPECT_NEAR(std::exp(log_lambda_exact(p, 0.5)), want, 1e-12);
  EXPECT_THROW(log_lambda_exact(params({0.6, 0.0, 0.4}, 1.0, 10), 0.5), DegenerateRatio);
}

TEST(LambdaBounds, SandwichAtTauSixKHundred) {
  const auto p = params(kMain, 1.0, 100);
  const double exact = log_lambda_exact(p, 0.6);
  EXPECT_LE(lambda_lower(p, 0.6).log_value, exact);
  EXPECT_LE(exact, lambda_upper(p, 0.6).log_value);
  EXPECT_TRUE(lambda_lower(p, 0.6).precondition);
  EXPECT_TRUE(lambda_upper(p, 0.6).precondition);
}

TEST(LambdaBounds, BranchSelection) {
  const auto& e = kMain;
  const double lo_thr = 1 / (1 + M_E * e.alpha / e.beta - e.alpha * e.delta / (e.beta * e.beta));
  const double up_thr = 1 / (1 + e.alpha / e.beta - e.alpha * e.delta / (e.beta * e.beta));
  const int k = 200;
  const auto p = params(e, 1.0, k);
  EXPECT_EQ(lambda_lower(p, lo_thr + 0.01).branch, 1);
  EXPECT_EQ(lambda_lower(p, lo_thr - 0.01).branch, 2);
  EXPECT_EQ(lambda_upper(p, up_thr + 0.01).branch, 1);
  EXPECT_EQ(lambda_upper(p, up_thr - 0.01).branch, 2);

  // At the boundary both values are produced and the other branch is kept.
  const BranchValue at = lambda_lower(p, lo_thr);
  EXPECT_TRUE(std::isfinite(at.log_other));
  EXPECT_NE(at.log_value, at.log_other);

  // Branch 2 with delta = 0: ((1-tau)/tau * beta/alpha)^{tau k}.
  const SymmetricEntries z{0.6, 0.2, 0.0};
  const auto pz = params(z, 1.0, 100);
  const BranchValue b = lambda_lower(pz, 0.05);
  ASSERT_EQ(b.branch, 2);
  EXPECT_FALSE(b.swapped);
  EXPECT_NEAR(b.log_value, 5 * std::log(19.0 / 3), 1e-12);
}

TEST(LambdaBounds, SwapRegime) {
  // beta/alpha - delta/beta = 2 - 0.25/0.3 > 1 swaps both bounds.
  const SymmetricEntries e{0.15, 0.3, 0.25};
  const auto p = params(e, 1.0, 100);
  const double up_thr = 1 / (1 + e.alpha / e.beta - e.alpha * e.delta / (e.beta * e.beta));
  const BranchValue u = lambda_upper(p, std::min(0.99, up_thr + 0.05));
  EXPECT_TRUE(u.swapped);
  EXPECT_FALSE(u.precondition);
  EXPECT_EQ(u.branch, 2);
  EXPECT_TRUE(lambda_lower(p, 0.5).swapped);
}

TEST(LambdaBounds, UpperScalesWithTauK) {
  const auto p = params(kMain, 1.0, 100);
  const auto q = params(kMain, 1.0, 200);
  const BranchValue a = lambda_upper(p, 0.8), b = lambda_upper(q, 0.8);
  ASSERT_EQ(a.branch, 1);
  ASSERT_EQ(b.branch, 1);
  const double x = 0.8 * 0.15 / 0.2 + 0.2 * 0.2 / 0.45;
  EXPECT_NEAR(a.log_value - std::log(80.0), 100 * x, 1e-9);
  EXPECT_NEAR(b.log_value - std::log(160.0), 200 * x, 1e-9);
  EXPECT_THROW(lambda_upper(params(kMain, 1.0, 3), 0.2), DomainError);
}

TEST(GrowthBase, KthRootLimit) {
  const int k = 400;
  const double tau = 0.3;
  const auto p = params(kMain, 1.0, k);
  const int t = slice_index(tau, k);
  const double head = k * std::log(2 * kMain.alpha) + t * std::log(kMain.beta / kMain.alpha);
  const GrowthBase lo = deg_lower_base(kMain, tau);
  const GrowthBase up = deg_upper_base(kMain, tau);
  EXPECT_NEAR(std::exp((head + lambda_lower(p, tau).log_value) / k), lo.base, 1e-3);
  EXPECT_NEAR(std::exp((head + lambda_upper(p, tau).log_value - std::log(double(t))) / k), up.base, 1e-3);
  EXPECT_EQ(lo.branch, lambda_lower(p, tau).branch);
  EXPECT_EQ(up.branch, lambda_upper(p, tau).branch);
  // The exact degree's k-th root lies between the two bases.
  const double exact = std::exp((log_expected_lower_degree(p, tau) - std::log(2.0)) / k);
  EXPECT_LE(lo.base, exact + 1e-3);
  EXPECT_LE(exact, up.base + 1e-3);
}

TEST(GrowthBase, DeltaZeroSpecialization) {
  const SymmetricEntries z{0.6, 0.2, 0.0};
  const GrowthBase g = deg_lower_base(z, 0.05);
  ASSERT_EQ(g.branch, 2);
  EXPECT_NEAR(g.base, 1.2 * std::pow(19.0 / 9, 0.05), 1e-12);
}

TEST(SimpleBase, LimitsAndDomain) {
  EXPECT_NEAR(simple_deg_lower_base(kMain, 1e-9, 0.5), 0.9, 1e-6);
  EXPECT_THROW(simple_deg_lower_base(kMain, 0.6, 0.9), DomainError);
  EXPECT_THROW(simple_deg_lower_base(kMain, 0.3, 0.2), DomainError);
  EXPECT_FALSE(simple_base_domain(0.1, 1.0));
  EXPECT_TRUE(simple_base_domain(0.5, 0.5));
}

// On the 0.01 tau grid; below beta = 0.035 the crossing at alpha = 1/2 needs a finer tau.
TEST(SimpleBase, AlphaAtLeastHalfIsDenseOnTauGrid) {
  for (double alpha = 0.5; alpha <= 0.7001; alpha += 0.02) {
    for (double beta = 0.035; alpha + 2 * beta <= 1.0 + 1e-12; beta += 0.02) {
      const SymmetricEntries e{alpha, beta, std::max(0.0, 1 - alpha - 2 * beta)};
      bool dense = false;
      for (double tau = 0.01; tau <= 0.5 && !dense; tau += 0.01)
        for (int j = 1; j <= 20 && !dense; ++j)
          if (simple_base_domain(tau, j / 21.0)) dense = simple_deg_lower_base(e, tau, j / 21.0) > 1.0;
      EXPECT_TRUE(dense) << alpha << " " << beta;
    }
  }
}

TEST(Entropy, Values) {
  EXPECT_EQ(entropy(0.5), 1.0);
  EXPECT_EQ(entropy(0.0), 0.0);
  EXPECT_EQ(entropy(1.0), 0.0);
  EXPECT_NEAR(entropy(0.25), 0.811278124459132864, 1e-15);
  EXPECT_THROW(entropy(1.5), DomainError);
}

TEST(BinomBound, SandwichesExactBinomials) {
  const auto b = binom_bound(20, 0.5);
  EXPECT_EQ(oracle::binom(20, 10), 184756);
  EXPECT_LE(b.lower, 184756.0);
  EXPECT_GE(b.upper, 184756.0);
  for (int n = 2; n <= 30; ++n)
    for (int r = 1; r < n; ++r) {
      const auto bb = binom_bound(n, static_cast<double>(r) / n);
      const double c = static_cast<double>(oracle::binom(n, r));
      EXPECT_LE(bb.lower, c * (1 + 1e-12)) << n << " " << r;
      EXPECT_GE(bb.upper, c * (1 - 1e-12)) << n << " " << r;
    }
}

TEST(ChernoffTail, BoundsExactBinomialTails) {
  EXPECT_EQ(chernoff_tail(1.0, M_E), 1.0);
  EXPECT_EQ(chernoff_tail(0.0, 2.0), 0.0);
  // P[Bin(n, p) >= c] <= (e xi / c)^c with xi = n p.
  for (int n = 1; n <= 30; ++n) {
    const cpp_rational p(1, 10);
    for (int c = 1; c <= n; ++c) {
      cpp_rational tail = 0;
      for (int j = c; j <= n; ++j)
        tail += cpp_rational(oracle::binom(n, j)) * oracle::rpow(p, j) * oracle::rpow(1 - p, n - j);
      EXPECT_LE(static_cast<double>(tail), chernoff_tail(n * 0.1, c) * (1 + 1e-12)) << n << " " << c;
    }
  }
}

TEST(ErasureBound, Values) {
  const OrderedEntries r{0.4, 0.3, 0.2, 0.1};
  EXPECT_NEAR(erasure_weight_bound(r, 10, 1.0), std::pow(0.7, 10) * 1.2, 1e-15);
  EXPECT_THROW(erasure_weight_bound(r, 10, 6.0), DomainError);
  EXPECT_THROW(erasure_weight_bound(r, 10, 0.5), DomainError);

  const auto& asn = find_preset("AS-NEWMAN");
  EXPECT_NEAR(erasure_weight_bound(ordered_entries(asn.init), asn.k, asn.mu), 0.111285384111982456, 1e-12);
  EXPECT_NEAR(erasure_weight_bound_tight(ordered_entries(asn.init), asn.k, asn.mu), 0.0280484150907165622,
              1e-12);
  const auto& email = find_preset("EMAIL-INSIDE");
  const double v = erasure_weight_bound_unchecked(ordered_entries(email.init), email.k, email.mu);
  EXPECT_GE(v, 1.0);
  EXPECT_NEAR(v / 16201669439.7954777, 1.0, 1e-9);
}

TEST(Bernoulli, LinearHoldsEverywhere) {
  for (std::uint64_t t : {1ull, 2ull, 7ull, 100ull, 10000ull, 1000000ull})
    for (double x : oracle::log_grid(1e-9, 1.0, 60)) EXPECT_TRUE(bernoulli_variant_check(BernoulliF::Linear, t, x));
  EXPECT_EQ(bernoulli_direction(BernoulliF::Linear), 1);
  EXPECT_EQ(bernoulli_direction(BernoulliF::TwoThirds), -1);
}

TEST(Bernoulli, TwoThirdsOnItsDomain) {
  for (std::uint64_t t = 2; t <= 10000; t = t < 20 ? t + 1 : t * 3 / 2) {
    const double cap = 1.0 / (2.0 * (t - 1));
    EXPECT_LE(cap, bernoulli_threshold(BernoulliF::TwoThirds, t) + 1e-15);
    for (double x : oracle::log_grid(1e-12, std::min(1.0, cap), 40))
      EXPECT_TRUE(bernoulli_variant_check(BernoulliF::TwoThirds, t, x)) << t << " " << x;
  }
  // Outside the domain the inequality eventually fails.
  EXPECT_FALSE(bernoulli_variant_check(BernoulliF::TwoThirds, 100, 0.5));
}

TEST(Bernoulli, Thresholds) {
  EXPECT_EQ(bernoulli_threshold(BernoulliF::Linear, 1), 0.0);
  EXPECT_TRUE(std::isinf(bernoulli_threshold(BernoulliF::TwoThirds, 1)));
  EXPECT_DOUBLE_EQ(bernoulli_threshold(BernoulliF::Linear, 5), 0.0);
  // 1 - (2t/3 - 1) / (2(t-1)/3) = 1/(2(t-1)).
  EXPECT_NEAR(bernoulli_threshold(BernoulliF::TwoThirds, 11), 1.0 / 20, 1e-15);
}

TEST(Bernoulli, InverseSquareRow) {
  const double t = 1e6;
  const double v = -std::expm1(t * std::log1p(-1 / (t * t))) * t * t;
  EXPECT_NEAR(v, 999999.500000666666, 1e-3);
  EXPECT_LE(std::abs(v / (t - std::log(t)) - 1), 0.01);
}

TEST(Sandwich, UniformAndPresetThresholds) {
  for (const Initiator& init : {Initiator::rmat(0.25, 0.25, 0.25, 0.25), find_preset("AS-NEWMAN").init.normalized()}) {
    for (double mu : {1.0, 4.22}) {
      const auto k0 = sandwich_threshold(init, mu, 20);
      ASSERT_TRUE(k0.has_value());
      for (int k = *k0; k <= 20; ++k) {
        const auto rep = sandwich_check(init, DensityParams(mu, k));
        EXPECT_TRUE(rep.precondition) << k;
        EXPECT_EQ(rep.lower_violations, 0u) << k;
        EXPECT_EQ(rep.upper_violations, 0u) << k;
      }
    }
  }
  // Uniform, mu = 1: precondition 4^-k <= 1/(2(2^k - 1)) holds for every k.
  EXPECT_EQ(sandwich_threshold(Initiator::rmat(0.25, 0.25, 0.25, 0.25), 1.0, 20), 1);
}

TEST(Sandwich, UpperHoldsWithoutPrecondition) {
  const Initiator skew = Initiator::rmat(0.45, 0.25, 0.2, 0.1);
  for (int k = 1; k <= 12; ++k) {
    const auto rep = sandwich_check(skew, DensityParams(8.0, k));
    EXPECT_EQ(rep.upper_violations, 0u);
    if (!rep.precondition) EXPECT_EQ(rep.lower_violations, 0u);
  }
  EXPECT_THROW(sandwich_check(Initiator::rmat(0.5, 0.2, 0.2, 0.1), DensityParams(1.0, 4)), Rho1TooLarge);
}

TEST(Sandwich, ZeroWeightClassesAreTrivial) {
  const auto rep = sandwich_check(Initiator::rmat(0.45, 0.3, 0.25, 0.0), DensityParams(2.0, 6));
  EXPECT_EQ(rep.upper_violations, 0u);
  EXPECT_EQ(rep.lower_violations, 0u);
}

TEST(EdgeModel, MaxProbability) {
  const auto p = params(kMain, 2.0, 10);
  EXPECT_NEAR(max_edge_probability(p), 2 * 2048 * std::pow(0.45, 10), 1e-12);
}
