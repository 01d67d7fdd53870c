#include "kronlab/logmath.hpp"

#include <algorithm>
#include <cmath>

namespace kronlab {

double log_sum_exp(std::span<const double> xs) {
  LogSumAccumulator acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

void LogSumAccumulator::add(double x) {
  if (x == kNegInf) return;
  if (x <= max_) {
    sum_ += std::exp(x - max_);
  } else {
    sum_ = sum_ * std::exp(max_ - x) + 1.0;
    max_ = x;
  }
}

double LogSumAccumulator::value() const {
  if (max_ == kNegInf) return kNegInf;
  return max_ + std::log(sum_);
}

LogFactorials::LogFactorials(int size) : table_(static_cast<std::size_t>(std::max(size, 1))) {
  table_[0] = 0.0;
  for (std::size_t i = 1; i < table_.size(); ++i) {
    table_[i] = std::lgamma(static_cast<double>(i) + 1.0);
  }
}

double LogFactorials::log_binom(int n, int r) const {
  if (r < 0 || r > n) return kNegInf;
  return table_[n] - table_[r] - table_[n - r];
}

double log_binom(double n, double r) {
  if (r < 0 || r > n) return kNegInf;
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

double one_minus_pow_complement(double w, double m) {
  if (w <= 0.0) return 0.0;
  if (w >= 1.0) return 1.0;
  return -std::expm1(m * std::log1p(-w));
}

double log_one_minus_pow_complement(double w, double m) {
  if (w <= 0.0) return kNegInf;
  if (w >= 1.0) return 0.0;
  const double x = m * std::log1p(-w);
  // log(1 - e^x) for x < 0.
  return x > -M_LN2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

}  // namespace kronlab
