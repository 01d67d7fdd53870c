#include "kronlab/bitlabel.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "kronlab/errors.hpp"

namespace kronlab {

VertexLabel VertexLabel::make(std::uint64_t value, int width) {
  if (width < 1 || width > 63) {
    throw DomainError(fmt::format("label width must lie in [1, 63], got {}", width));
  }
  if (value >> width) {
    throw DomainError(fmt::format("label {} does not fit in {} bits", value, width));
  }
  return VertexLabel{value, width};
}

PairCounts pair_counts(VertexLabel u, VertexLabel v) {
  if (u.width != v.width) {
    throw WidthMismatch(fmt::format("label widths differ: {} vs {}", u.width, v.width));
  }
  return pair_counts_raw(u.value, v.value, u.width);
}

namespace {

double ipow(double base, int e) {
  if (e == 0) return 1.0;
  return std::pow(base, e);
}

}  // namespace

double weight_of(const PairCounts& p, const std::array<double, 4>& e) {
  return ipow(e[0], p.c00) * ipow(e[1], p.c01) * ipow(e[2], p.c10) * ipow(e[3], p.c11);
}

double log_weight_of(const PairCounts& p, const std::array<double, 4>& e) {
  const int c[4] = {p.c00, p.c01, p.c10, p.c11};
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (c[i] == 0) continue;
    if (e[i] == 0.0) return -std::numeric_limits<double>::infinity();
    acc += c[i] * std::log(e[i]);
  }
  return acc;
}

double arc_weight(VertexLabel u, VertexLabel v, const Initiator& init) {
  return weight_of(pair_counts(u, v), init.entries());
}

double arc_log_weight(VertexLabel u, VertexLabel v, const Initiator& init) {
  return log_weight_of(pair_counts(u, v), init.entries());
}

int hamming_weight(VertexLabel u) { return __builtin_popcountll(u.value); }

namespace {

void check_slice_args(int k, int ell) {
  if (k < 0 || k > 63) throw DomainError(fmt::format("k must lie in [0, 63], got {}", k));
  if (ell < 0 || ell > k) {
    throw DomainError(fmt::format("slice index {} outside [0, {}]", ell, k));
  }
}

}  // namespace

std::uint64_t slice_size(int k, int ell) {
  check_slice_args(k, ell);
  // C(k, ell) by the multiplicative formula; exact since each prefix is a binomial.
  unsigned __int128 r = 1;
  for (int i = 1; i <= ell; ++i) r = r * static_cast<unsigned>(k - ell + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t cumulative_slice_size(int k, int ell) {
  check_slice_args(k, ell);
  std::uint64_t s = 0;
  for (int i = 0; i <= ell; ++i) s += slice_size(k, i);
  return s;
}

SliceMembers::iterator& SliceMembers::iterator::operator++() {
  if (cur_ == 0) {
    cur_ = end_;
    return *this;
  }
  // Gosper's hack: next larger value with the same popcount.
  const std::uint64_t c = cur_ & (~cur_ + 1);
  const std::uint64_t r = cur_ + c;
  const std::uint64_t next = (((r ^ cur_) >> 2) / c) | r;
  cur_ = (r == 0 || (k_ < 64 && (next >> k_))) ? end_ : next;
  return *this;
}

SliceMembers::SliceMembers(int k, int ell) : k_(k), ell_(ell) {
  check_slice_args(k, ell);
  first_ = ell == 0 ? 0 : ((std::uint64_t{1} << ell) - 1);
  // One past the largest label; never a member.
  sentinel_ = std::uint64_t{1} << k;
}

SliceMembers::iterator SliceMembers::begin() const { return iterator(first_, sentinel_, k_); }
SliceMembers::iterator SliceMembers::end() const { return iterator(sentinel_, sentinel_, k_); }

SliceMembers slice_members(int k, int ell) { return SliceMembers(k, ell); }

}  // namespace kronlab
