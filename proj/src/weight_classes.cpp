#include "kronlab/weight_classes.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "kronlab/errors.hpp"
#include "kronlab/logmath.hpp"

namespace kronlab {

namespace {

u128 binom128(int n, int r) {
  u128 x = 1;
  for (int i = 1; i <= r; ++i) x = x * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
  return x;
}

}  // namespace

u128 multinomial(const PairCounts& p) {
  const int k = p.total();
  // Each factor fits; the product is bounded by 4^k <= 2^126 for k <= 63.
  return binom128(k, p.c00) * binom128(k - p.c00, p.c01) *
         binom128(k - p.c00 - p.c01, p.c10);
}

std::vector<WeightClass> weight_classes(const std::array<double, 4>& entries, int k) {
  if (k < 1 || k > 63) throw DomainError(fmt::format("k must lie in [1, 63], got {}", k));
  std::vector<WeightClass> out;
  out.reserve(static_cast<std::size_t>((k + 1) * (k + 2) * (k + 3) / 6));
  LogFactorials lf(k + 1);
  for (int c00 = 0; c00 <= k; ++c00) {
    for (int c01 = 0; c00 + c01 <= k; ++c01) {
      for (int c10 = 0; c00 + c01 + c10 <= k; ++c10) {
        WeightClass w;
        w.counts = PairCounts{c00, c01, c10, k - c00 - c01 - c10};
        w.size = multinomial(w.counts);
        w.log_size = lf(k) - lf(c00) - lf(c01) - lf(c10) - lf(w.counts.c11);
        w.weight = weight_of(w.counts, entries);
        w.log_weight = log_weight_of(w.counts, entries);
        out.push_back(w);
      }
    }
  }
  return out;
}

std::vector<WeightClass> weight_classes(const Initiator& init, int k) {
  return weight_classes(init.entries(), k);
}

std::pair<std::uint64_t, std::uint64_t> unrank_cell(const PairCounts& p, u128 rank) {
  int cnt[4] = {p.c00, p.c01, p.c10, p.c11};
  const int k = p.total();
  u128 remaining = multinomial(p);
  if (rank >= remaining) throw DomainError("rank outside weight class");
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  for (int len = k; len > 0; --len) {
    int chosen = -1;
    for (int s = 0; s < 4; ++s) {
      if (cnt[s] == 0) continue;
      // Sequences starting with s: remaining * cnt[s] / len, kept exact via gcd.
      const unsigned g = std::gcd(static_cast<unsigned>(cnt[s]), static_cast<unsigned>(len));
      const u128 block = (remaining / (len / g)) * (cnt[s] / g);
      if (rank < block) {
        chosen = s;
        remaining = block;
        break;
      }
      rank -= block;
    }
    u = (u << 1) | static_cast<std::uint64_t>(chosen >> 1);
    v = (v << 1) | static_cast<std::uint64_t>(chosen & 1);
    --cnt[chosen];
  }
  return {u, v};
}

}  // namespace kronlab
