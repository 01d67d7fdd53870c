#pragma once

#include <limits>
#include <span>
#include <vector>

namespace kronlab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(std::span<const double> xs);

// Streaming log-sum-exp. Rescales when a larger term arrives.
class LogSumAccumulator {
 public:
  void add(double x);
  double value() const;

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

// ln(n!) for n in [0, size), tabulated.
class LogFactorials {
 public:
  explicit LogFactorials(int size);
  double operator()(int n) const { return table_[n]; }
  double log_binom(int n, int r) const;

 private:
  std::vector<double> table_;
};

double log_binom(double n, double r);

// log(1 - (1 - w)^m) evaluated without cancellation.
double log_one_minus_pow_complement(double w, double m);

// 1 - (1 - w)^m.
double one_minus_pow_complement(double w, double m);

}  // namespace kronlab
