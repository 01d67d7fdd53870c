#include "kronlab/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "kronlab/errors.hpp"
#include "kronlab/logmath.hpp"
#include "kronlab/weight_classes.hpp"

namespace kronlab {

namespace {

constexpr double kE = M_E;

void require_ratios(const SymmetricEntries& e) {
  if (!(e.beta > 0.0)) throw DegenerateRatio("beta must be positive for ratio expressions");
  if (!(e.alpha > 0.0)) throw DegenerateRatio("alpha must be positive for ratio expressions");
  if (e.delta < 0.0) throw DomainError("delta must be nonnegative");
}

void require_tau(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError(fmt::format("tau={} outside (0, 1)", tau));
}

// tau*delta/beta + (1-tau)*beta/alpha
double mix_ratio(const SymmetricEntries& e, double tau) {
  return tau * e.delta / e.beta + (1.0 - tau) * e.beta / e.alpha;
}

double ratio_gap(const SymmetricEntries& e) { return e.beta / e.alpha - e.delta / e.beta; }

}  // namespace

SymmetricParams SymmetricParams::make(double alpha, double beta, double delta, double mu, int k,
                                      double tolerance) {
  if (alpha < 0 || beta < 0 || delta < 0) throw DomainError("symmetric entries must be >= 0");
  if (std::abs(alpha + 2 * beta + delta - 1.0) > tolerance) {
    throw DomainError(fmt::format("alpha + 2 beta + delta = {} is not 1",
                                  alpha + 2 * beta + delta));
  }
  if (!(mu > 0)) throw DomainError("mu must be positive");
  if (k < 1) throw DomainError("k must be positive");
  return SymmetricParams{{alpha, beta, delta}, mu, k};
}

double SymmetricParams::m() const { return mu * std::ldexp(1.0, k); }

Initiator SymmetricParams::initiator() const {
  return Initiator::rmat(e.alpha, e.beta, e.beta, e.delta, 1e-9);
}

int slice_index(double tau, int k) { return static_cast<int>(std::floor(tau * k + 1e-9)); }

double log_lambda_exact(const SymmetricParams& p, double tau) {
  require_ratios(p.e);
  if (tau < 0.0 || tau > 1.0) throw DomainError(fmt::format("tau={} outside [0, 1]", tau));
  const int k = p.k;
  const int t = slice_index(tau, k);
  const double ld = p.e.delta > 0 ? std::log(p.e.delta / p.e.beta) : kNegInf;
  const double lr = std::log(p.e.beta / p.e.alpha);
  LogFactorials lf(k + 1);
  LogSumAccumulator acc;
  for (int i = 0; i <= t; ++i) {
    if (i > 0 && ld == kNegInf) break;
    const double head = lf.log_binom(t, i) + (i > 0 ? i * ld : 0.0);
    // j = ell - i ranges over [0, min(t - i, k - t)].
    const int jmax = std::min(t - i, k - t);
    for (int j = 0; j <= jmax; ++j) acc.add(head + lf.log_binom(k - t, j) + j * lr);
  }
  return acc.value();
}

double log_expected_lower_degree(const SymmetricParams& p, double tau) {
  const int t = slice_index(tau, p.k);
  return std::log(2.0 * p.mu) + p.k * std::log(2.0 * p.e.alpha) +
         t * std::log(p.e.beta / p.e.alpha) + log_lambda_exact(p, tau);
}

double expected_lower_degree(const SymmetricParams& p, double tau) {
  return std::exp(log_expected_lower_degree(p, tau));
}

BranchValue lambda_lower(const SymmetricParams& p, double tau) {
  require_ratios(p.e);
  require_tau(tau);
  const auto& e = p.e;
  const int t = slice_index(tau, p.k);
  const double threshold =
      1.0 / (1.0 + kE * e.alpha / e.beta - e.alpha * e.delta / (e.beta * e.beta));
  bool first = tau >= threshold;
  const bool swap = ratio_gap(e) > 1.0 / kE;
  if (swap) first = !first;
  const double b1 = mix_ratio(e, tau) * p.k / kE;
  const double b2 = t * std::log(e.delta / e.beta + (1.0 - tau) / tau * e.beta / e.alpha);
  BranchValue out;
  out.branch = first ? 1 : 2;
  out.log_value = first ? b1 : b2;
  out.log_other = first ? b2 : b1;
  out.precondition = !swap;
  out.swapped = swap;
  return out;
}

BranchValue lambda_upper(const SymmetricParams& p, double tau) {
  require_ratios(p.e);
  require_tau(tau);
  const auto& e = p.e;
  const int t = slice_index(tau, p.k);
  if (t == 0) throw DomainError("upper bound needs tau * k >= 1");
  const double threshold =
      1.0 / (1.0 + e.alpha / e.beta - e.alpha * e.delta / (e.beta * e.beta));
  bool first = tau >= threshold;
  const bool swap = ratio_gap(e) > 1.0;
  if (swap) first = !first;
  const double lt = std::log(static_cast<double>(t));
  const double b1 = lt + mix_ratio(e, tau) * p.k;
  const double b2 =
      lt + t * std::log(kE * e.delta / e.beta + (1.0 - tau) / tau * kE * e.beta / e.alpha);
  BranchValue out;
  out.branch = first ? 1 : 2;
  out.log_value = first ? b1 : b2;
  out.log_other = first ? b2 : b1;
  out.precondition = !swap;
  out.swapped = swap;
  return out;
}

GrowthBase deg_lower_base(const SymmetricEntries& e, double tau) {
  require_ratios(e);
  require_tau(tau);
  const double threshold =
      1.0 / (1.0 + kE * e.alpha / e.beta - e.alpha * e.delta / (e.beta * e.beta));
  bool first = tau >= threshold;
  const bool swap = ratio_gap(e) > 1.0 / kE;
  if (swap) first = !first;
  GrowthBase g;
  g.branch = first ? 1 : 2;
  g.precondition = !swap;
  if (first) {
    g.base = 2 * e.alpha * std::pow(e.beta / e.alpha, tau) * std::exp(mix_ratio(e, tau) / kE);
  } else {
    const double r = e.delta / e.alpha + (1 - tau) / tau * e.beta * e.beta / (e.alpha * e.alpha);
    g.base = 2 * e.alpha * std::pow(r, tau);
  }
  return g;
}

GrowthBase deg_upper_base(const SymmetricEntries& e, double tau) {
  require_ratios(e);
  require_tau(tau);
  const double threshold =
      1.0 / (1.0 + e.alpha / e.beta - e.alpha * e.delta / (e.beta * e.beta));
  bool first = tau >= threshold;
  const bool swap = ratio_gap(e) > 1.0;
  if (swap) first = !first;
  GrowthBase g;
  g.branch = first ? 1 : 2;
  g.precondition = !swap;
  if (first) {
    g.base = 2 * e.alpha * std::pow(e.beta / e.alpha, tau) * std::exp(mix_ratio(e, tau));
  } else {
    const double r = kE * e.delta / e.alpha +
                     (1 - tau) / tau * kE * e.beta * e.beta / (e.alpha * e.alpha);
    g.base = 2 * e.alpha * std::pow(r, tau);
  }
  return g;
}

bool simple_base_domain(double tau, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) return false;
  if (!(tau > 0.0 && tau <= std::min(epsilon, 0.5) + 1e-12)) return false;
  const double x = epsilon * tau / (1.0 - tau);
  return x > 0.0 && x < 1.0;
}

double simple_deg_lower_base(const SymmetricEntries& e, double tau, double epsilon) {
  require_ratios(e);
  if (!simple_base_domain(tau, epsilon)) {
    throw DomainError(fmt::format("simple base needs 0<eps<1, tau<=min(eps,1/2); got tau={} eps={}",
                                  tau, epsilon));
  }
  const double x = epsilon * tau / (1.0 - tau);
  return 2 * e.alpha * std::pow(e.beta / e.alpha, (1 + epsilon) * tau) *
         std::exp2(entropy(x) * (1 - tau));
}

double entropy(double x) {
  if (x < 0.0 || x > 1.0) throw DomainError(fmt::format("entropy argument {} outside [0, 1]", x));
  if (x == 0.0 || x == 1.0) return 0.0;
  if (x == 0.5) return 1.0;
  return -(x * std::log2(x) + (1 - x) * std::log2(1 - x));
}

BinomBound binom_bound(double n, double tau) {
  require_tau(tau);
  if (!(n > 0)) throw DomainError("binom_bound needs n > 0");
  const double log_b = n * entropy(tau) * M_LN2 - 0.5 * std::log(2 * M_PI * n * tau * (1 - tau));
  const double b = std::exp(log_b);
  return {std::sqrt(M_PI) / 2 * b, b};
}

double chernoff_tail(double xi, double c) {
  if (xi < 0.0 || !(c > 0.0)) throw DomainError("chernoff_tail needs xi >= 0 and c > 0");
  if (xi == 0.0) return 0.0;
  const double lv = c * std::log(kE * xi / c);
  return lv >= 0.0 ? 1.0 : std::exp(lv);
}

double erasure_weight_bound_unchecked(const OrderedEntries& r, int k, double c) {
  const double s = r.rho1 + r.rho2;
  const double f = 2.0 * std::exp(2.0 * r.rho3 * (c - 1.0) / s) - 1.0;
  return std::pow(s, k) * (r.rho3 + f);
}

double erasure_weight_bound(const OrderedEntries& r, int k, double c) {
  if (!(c >= 1.0 && c <= k / 2.0)) {
    throw DomainError(fmt::format("erasure bound needs 1 <= c <= k/2 (c={}, k={})", c, k));
  }
  return erasure_weight_bound_unchecked(r, k, c);
}

double erasure_weight_bound_tight(const OrderedEntries& r, int k, double c) {
  const double s = r.rho1 + r.rho2;
  const double g = 2.0 * (c - 1.0) / k;
  return std::pow(s, k) * (r.rho3 + 2.0 * std::pow(kE * r.rho3 * k / s, g) - 1.0);
}

double bernoulli_f(BernoulliF f, double t) {
  return f == BernoulliF::Linear ? t : 2.0 * t / 3.0;
}

int bernoulli_direction(BernoulliF f) { return bernoulli_f(f, 1.0) >= 1.0 ? 1 : -1; }

double bernoulli_threshold(BernoulliF f, std::uint64_t t) {
  if (t == 0) throw DomainError("bernoulli threshold needs t >= 1");
  const double prev = bernoulli_f(f, static_cast<double>(t) - 1.0);
  if (prev == 0.0) {
    // t = 1: the base case holds on all of (0, 1].
    return bernoulli_direction(f) > 0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return 1.0 - (bernoulli_f(f, static_cast<double>(t)) - 1.0) / prev;
}

bool bernoulli_variant_check(BernoulliF f, std::uint64_t t, double x) {
  if (t == 0 || !(x > 0.0 && x <= 1.0)) throw DomainError("bernoulli check needs t >= 1, x in (0,1]");
  const double ft = bernoulli_f(f, static_cast<double>(t));
  // (1-x)^t - (1 - f x) = expm1(t log1p(-x)) + f x, free of cancellation near x = 0.
  const double lhs_m1 = x == 1.0 ? -1.0 : std::expm1(static_cast<double>(t) * std::log1p(-x));
  const double diff = lhs_m1 + ft * x;
  const double slack = 4e-16 * std::max(1.0, ft * x);
  return bernoulli_direction(f) > 0 ? diff >= -slack : diff <= slack;
}

SandwichReport sandwich_check(const Initiator& init, const DensityParams& dens) {
  if (init.flavor() != Flavor::RmatNormalized) {
    throw InvalidInitiator("sandwich_check expects an R-MAT initiator");
  }
  const OrderedEntries r = ordered_entries(init);
  if (!(r.rho1 < 0.5)) {
    throw Rho1TooLarge(fmt::format("sandwich check needs rho1 < 1/2, got {}", r.rho1));
  }
  SandwichReport rep;
  rep.k = dens.k();
  rep.m = dens.m();
  const double m = static_cast<double>(rep.m);
  rep.precondition = rep.m <= 1 || dens.k() * std::log(r.rho1) <= -std::log(2.0 * (m - 1.0));
  for (const WeightClass& wc : weight_classes(init, dens.k())) {
    ++rep.classes;
    const double w = wc.weight;
    const double flip = one_minus_pow_complement(w, m);
    const double lo = 2.0 / 3.0 * m * w;
    const double hi = m * w;
    if (flip > hi * (1.0 + 1e-12)) ++rep.upper_violations;
    if (rep.precondition && lo > flip * (1.0 + 1e-12)) ++rep.lower_violations;
  }
  return rep;
}

std::optional<int> sandwich_threshold(const Initiator& init, double mu, int k_max) {
  const double rho1 = ordered_entries(init).rho1;
  std::optional<int> k0;
  for (int k = k_max; k >= 1; --k) {
    const double m = std::floor(mu * std::ldexp(1.0, k));
    const bool ok = m <= 1.0 || k * std::log(rho1) <= -std::log(2.0 * (m - 1.0));
    if (!ok) break;
    k0 = k;
  }
  return k0;
}

double f1_expected_edges(const SymmetricParams& p) {
  const double k = p.k;
  return 2.0 * p.m() * (k * (k - 1) / 2.0) * std::pow(p.e.alpha, k - 2) * p.e.beta * p.e.beta;
}

double max_edge_probability(const SymmetricParams& p) {
  const double top = std::max({p.e.alpha, p.e.beta, p.e.delta});
  return 2.0 * p.m() * std::pow(top, p.k);
}

}  // namespace kronlab
