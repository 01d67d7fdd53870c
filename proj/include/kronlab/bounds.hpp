#pragma once

#include <cstdint>
#include <optional>

#include "kronlab/initiator.hpp"

namespace kronlab {

/// Entries of a symmetric initiator (alpha, beta, beta, delta). No
/// normalization is required here so that printed presets can be evaluated.
struct SymmetricEntries {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
};

/// Symmetric initiator plus density; alpha + 2 beta + delta = 1 within tolerance.
struct SymmetricParams {
  SymmetricEntries e;
  double mu = 1.0;
  int k = 1;

  static SymmetricParams make(double alpha, double beta, double delta, double mu, int k,
                              double tolerance = 1e-9);
  /// Real arc budget mu * 2^k.
  double m() const;
  Initiator initiator() const;
};

/// Slice index floor(tau * k), guarded against representation error.
int slice_index(double tau, int k);

/// Log of the expected number of neighbours of x in F_t among F_<=t, t = slice_index.
double log_expected_lower_degree(const SymmetricParams& p, double tau);
double expected_lower_degree(const SymmetricParams& p, double tau);

/// Log of the ratio-weighted double sum Lambda_tau(k).
double log_lambda_exact(const SymmetricParams& p, double tau);

struct BranchValue {
  double log_value = 0.0;      // selected branch
  int branch = 1;              // 1 = exponential form, 2 = power form
  double log_other = 0.0;      // the branch not selected
  bool precondition = true;    // ratio precondition of the bound
  bool swapped = false;        // selection inverted by the ratio condition
};

BranchValue lambda_lower(const SymmetricParams& p, double tau);
BranchValue lambda_upper(const SymmetricParams& p, double tau);

struct GrowthBase {
  double base = 0.0;
  int branch = 1;
  bool precondition = true;
};

GrowthBase deg_lower_base(const SymmetricEntries& e, double tau);
GrowthBase deg_upper_base(const SymmetricEntries& e, double tau);

double simple_deg_lower_base(const SymmetricEntries& e, double tau, double epsilon);
/// True when (tau, epsilon) lie in the domain of simple_deg_lower_base.
bool simple_base_domain(double tau, double epsilon);

/// Binary entropy in bits; 0 at the endpoints.
double entropy(double x);

struct BinomBound {
  double lower = 0.0;
  double upper = 0.0;
};
/// Sandwich for C(n, tau n): (sqrt(pi)/2) B <= C <= B, B = 2^{n H(tau)} / sqrt(2 pi n tau (1-tau)).
BinomBound binom_bound(double n, double tau);

/// min(1, (e xi / c)^c).
double chernoff_tail(double xi, double c);

/// (r1+r2)^k (r3 + f(c)), f(c) = 2 exp(2 r3 (c-1)/(r1+r2)) - 1. Requires 1 <= c <= k/2.
double erasure_weight_bound(const OrderedEntries& r, int k, double c);
double erasure_weight_bound_unchecked(const OrderedEntries& r, int k, double c);
/// Same bound before the final simplification: (r1+r2)^k (r3 + 2 (e r3 k/(r1+r2))^g - 1), g = 2(c-1)/k.
double erasure_weight_bound_tight(const OrderedEntries& r, int k, double c);

enum class BernoulliF { Linear, TwoThirds };

double bernoulli_f(BernoulliF f, double t);
/// +1 when f(1) >= 1 (inequality reads >=), -1 otherwise.
int bernoulli_direction(BernoulliF f);
/// 1 - (f(t)-1)/f(t-1); the domain is x >= threshold for direction +1 and x <= threshold for -1.
double bernoulli_threshold(BernoulliF f, std::uint64_t t);
/// (1-x)^t compared with 1 - f(t) x in the direction given by bernoulli_direction.
bool bernoulli_variant_check(BernoulliF f, std::uint64_t t, double x);

struct SandwichReport {
  int k = 0;
  std::uint64_t m = 0;
  bool precondition = false;  // rho1^k <= 1/(2(m-1))
  std::uint64_t classes = 0;
  std::uint64_t lower_violations = 0;
  std::uint64_t upper_violations = 0;
};

/// Checks (2/3) m w <= 1 - (1-w)^m <= m w over all weight classes. Lower
/// violations are only counted when the precondition holds.
SandwichReport sandwich_check(const Initiator& init, const DensityParams& dens);

/// Smallest k0 in [1, k_max] with the precondition holding for every k in [k0, k_max].
std::optional<int> sandwich_threshold(const Initiator& init, double mu, int k_max);

/// Expected edges inside F_1 under the symmetric edge model: 2m C(k,2) alpha^(k-2) beta^2.
double f1_expected_edges(const SymmetricParams& p);

/// Largest symmetric edge probability 2 m max-entry^k (may exceed 1).
double max_edge_probability(const SymmetricParams& p);

}  // namespace kronlab
