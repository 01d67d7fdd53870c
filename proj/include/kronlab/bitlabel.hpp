#pragma once

#include <cstdint>
#include <iterator>

#include "kronlab/initiator.hpp"

namespace kronlab {

// A k-bit vertex label. Bit position 0 is the most significant of the k bits.
struct VertexLabel {
  std::uint64_t value = 0;
  int width = 0;

  static VertexLabel make(std::uint64_t value, int width);
  bool operator==(const VertexLabel&) const = default;
};

struct PairCounts {
  int c00 = 0;
  int c01 = 0;
  int c10 = 0;
  int c11 = 0;

  int total() const noexcept { return c00 + c01 + c10 + c11; }
  bool operator==(const PairCounts&) const = default;
};

PairCounts pair_counts(VertexLabel u, VertexLabel v);

// Unchecked variant on raw k-bit values.
inline PairCounts pair_counts_raw(std::uint64_t u, std::uint64_t v, int k) {
  const std::uint64_t mask = k >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
  PairCounts p;
  p.c11 = __builtin_popcountll(u & v);
  p.c10 = __builtin_popcountll(u & ~v & mask);
  p.c01 = __builtin_popcountll(~u & v & mask);
  p.c00 = k - p.c11 - p.c10 - p.c01;
  return p;
}

// Product of entries raised to the pair counts, with 0^0 = 1.
double weight_of(const PairCounts& p, const std::array<double, 4>& entries);
// Log of weight_of; -infinity when a used entry is zero.
double log_weight_of(const PairCounts& p, const std::array<double, 4>& entries);

double arc_weight(VertexLabel u, VertexLabel v, const Initiator& init);
double arc_log_weight(VertexLabel u, VertexLabel v, const Initiator& init);

int hamming_weight(VertexLabel u);

std::uint64_t slice_size(int k, int ell);
std::uint64_t cumulative_slice_size(int k, int ell);

// Ascending enumeration of the k-bit values with exactly ell ones.
class SliceMembers {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = VertexLabel;
    using difference_type = std::ptrdiff_t;
    using pointer = const VertexLabel*;
    using reference = VertexLabel;

    iterator() = default;
    iterator(std::uint64_t cur, std::uint64_t end, int k) : cur_(cur), end_(end), k_(k) {}

    VertexLabel operator*() const { return VertexLabel{cur_, k_}; }
    iterator& operator++();
    iterator operator++(int) {
      iterator t = *this;
      ++*this;
      return t;
    }
    bool operator==(const iterator& o) const { return cur_ == o.cur_; }

   private:
    std::uint64_t cur_ = 0;
    std::uint64_t end_ = 0;
    int k_ = 0;
  };

  SliceMembers(int k, int ell);
  iterator begin() const;
  iterator end() const;

 private:
  int k_;
  int ell_;
  std::uint64_t first_;
  std::uint64_t sentinel_;
};

SliceMembers slice_members(int k, int ell);

}  // namespace kronlab
