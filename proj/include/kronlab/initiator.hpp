#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kronlab {

enum class Flavor { RmatNormalized, SkgScaled };

std::string_view to_string(Flavor f);

/// 2x2 initiator matrix [a b; c d] in row-major order. In R-MAT notation the
/// entries are alpha, beta, gamma, delta. Immutable once constructed.
class Initiator {
 public:
  static constexpr double kSumTolerance = 1e-9;

  /// R-MAT initiator: nonnegative entries summing to one within `tolerance`.
  static Initiator rmat(double a, double b, double c, double d,
                        double tolerance = kSumTolerance);
  /// SKG initiator: every entry in [0, 1].
  static Initiator skg(double a, double b, double c, double d);

  double a() const noexcept { return entries_[0]; }
  double b() const noexcept { return entries_[1]; }
  double c() const noexcept { return entries_[2]; }
  double d() const noexcept { return entries_[3]; }
  const std::array<double, 4>& entries() const noexcept { return entries_; }
  Flavor flavor() const noexcept { return flavor_; }

  double sum() const noexcept;
  double max_entry() const noexcept;
  bool symmetric() const noexcept { return entries_[1] == entries_[2]; }

  /// Copy with entries divided by their sum (flavor RmatNormalized).
  Initiator normalized() const;

  std::string to_string() const;  // "a,b,c,d" with round-trip precision

  bool operator==(const Initiator&) const = default;

 private:
  Initiator(std::array<double, 4> e, Flavor f) : entries_(e), flavor_(f) {}

  std::array<double, 4> entries_;
  Flavor flavor_;
};

/// Parse "a,b,c,d".
std::array<double, 4> parse_entries(std::string_view text);

struct OrderedEntries {
  double rho1;
  double rho2;
  double rho3;
  double rho4;
};

OrderedEntries ordered_entries(const Initiator& init);

/// Density parameters: vertex count n = 2^k and arc budget m = floor(mu * 2^k).
class DensityParams {
 public:
  static constexpr int kMaxK = 62;

  DensityParams(double mu, int k);

  double mu() const noexcept { return mu_; }
  int k() const noexcept { return k_; }
  std::uint64_t n() const noexcept { return std::uint64_t{1} << k_; }
  std::uint64_t m() const noexcept { return m_; }

 private:
  double mu_;
  int k_;
  std::uint64_t m_;
};

/// theta = 2 mu^(1/k).
double scaling_theta(const DensityParams& dens);

/// Largest R-MAT entry for which theta-scaling stays within [0, 1].
double feasibility_bound(const DensityParams& dens);

bool scaling_feasible(const Initiator& init, const DensityParams& dens);

/// Multiply a normalized R-MAT initiator by theta. Throws InfeasibleScaling
/// when theta * max-entry exceeds one. The boundary theta * max = 1 is legal.
Initiator rmat_to_skg(const Initiator& init, const DensityParams& dens);

/// theta-scaling with each entry clamped to 1 instead of failing.
Initiator rmat_to_skg_clamped(const Initiator& init, const DensityParams& dens);

/// (a+b+c+d)^k for an SKG initiator.
double expected_arcs(const Initiator& skg_init, int k);

struct Preset {
  std::string name;
  std::uint64_t n;
  int k;  // ceil(log2 n)
  double mu;
  Initiator init;  // verbatim three-decimal entries
  bool directed;
};

/// Rows of printed presets are not normalized exactly; this is the tolerance
/// their constructor accepts.
inline constexpr double kPresetSumTolerance = 0.07;

const std::vector<Preset>& table2_presets();
const Preset& find_preset(std::string_view name);

}  // namespace kronlab
