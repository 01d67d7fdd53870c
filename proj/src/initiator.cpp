#include "kronlab/initiator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "kronlab/errors.hpp"

namespace kronlab {

std::string_view to_string(Flavor f) {
  return f == Flavor::RmatNormalized ? "rmat" : "skg";
}

namespace {

void check_finite_nonneg(const std::array<double, 4>& e) {
  for (double x : e) {
    if (!std::isfinite(x) || x < 0.0) {
      throw InvalidInitiator(
          fmt::format("initiator entries must be finite and >= 0, got {}", x));
    }
  }
}

}  // namespace

Initiator Initiator::rmat(double a, double b, double c, double d,
                          double tolerance) {
  std::array<double, 4> e{a, b, c, d};
  check_finite_nonneg(e);
  const double s = a + b + c + d;
  if (std::abs(s - 1.0) > tolerance) {
    throw InvalidInitiator(fmt::format(
        "R-MAT initiator must sum to 1 (within {}), got {}", tolerance, s));
  }
  return Initiator(e, Flavor::RmatNormalized);
}

Initiator Initiator::skg(double a, double b, double c, double d) {
  std::array<double, 4> e{a, b, c, d};
  check_finite_nonneg(e);
  for (double x : e) {
    if (x > 1.0) {
      throw InvalidInitiator(
          fmt::format("SKG initiator entries must lie in [0, 1], got {}", x));
    }
  }
  return Initiator(e, Flavor::SkgScaled);
}

double Initiator::sum() const noexcept {
  return entries_[0] + entries_[1] + entries_[2] + entries_[3];
}

double Initiator::max_entry() const noexcept {
  return *std::max_element(entries_.begin(), entries_.end());
}

Initiator Initiator::normalized() const {
  const double s = sum();
  if (s <= 0.0) throw InvalidInitiator("cannot normalize an all-zero initiator");
  std::array<double, 4> e = entries_;
  for (double& x : e) x /= s;
  return Initiator(e, Flavor::RmatNormalized);
}

std::string Initiator::to_string() const {
  return fmt::format("{},{},{},{}", entries_[0], entries_[1], entries_[2],
                     entries_[3]);
}

std::array<double, 4> parse_entries(std::string_view text) {
  std::array<double, 4> out{};
  std::size_t idx = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (idx >= 4) throw ParseError(fmt::format("expected 4 entries in '{}'", text));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
      throw ParseError(fmt::format("bad initiator entry '{}'", tok));
    }
    out[idx++] = v;
    pos = comma + 1;
  }
  if (idx != 4) throw ParseError(fmt::format("expected 4 entries in '{}'", text));
  return out;
}

OrderedEntries ordered_entries(const Initiator& init) {
  std::array<double, 4> e = init.entries();
  std::sort(e.begin(), e.end(), std::greater<>());
  return {e[0], e[1], e[2], e[3]};
}

DensityParams::DensityParams(double mu, int k) : mu_(mu), k_(k), m_(0) {
  if (!(k >= 1 && k <= kMaxK)) {
    throw DomainError(fmt::format("k must lie in [1, {}], got {}", kMaxK, k));
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError(fmt::format("mu must be positive, got {}", mu));
  }
  const double m = std::floor(mu * std::ldexp(1.0, k));
  if (m < 1.0) {
    throw DomainError(fmt::format("mu * 2^k must be at least 1 (mu={}, k={})", mu, k));
  }
  if (m >= 0x1p63) throw DomainError("mu * 2^k does not fit in 63 bits");
  m_ = static_cast<std::uint64_t>(m);
}

double scaling_theta(const DensityParams& dens) {
  return 2.0 * std::pow(dens.mu(), 1.0 / dens.k());
}

double feasibility_bound(const DensityParams& dens) {
  return 0.5 * std::pow(dens.mu(), -1.0 / dens.k());
}

namespace {
constexpr double kBoundarySlack = 1e-12;
}

bool scaling_feasible(const Initiator& init, const DensityParams& dens) {
  return scaling_theta(dens) * init.max_entry() <= 1.0 + kBoundarySlack;
}

Initiator rmat_to_skg(const Initiator& init, const DensityParams& dens) {
  if (init.flavor() != Flavor::RmatNormalized) {
    throw InvalidInitiator("rmat_to_skg expects an R-MAT initiator");
  }
  const double theta = scaling_theta(dens);
  if (!scaling_feasible(init, dens)) {
    const double bound = feasibility_bound(dens);
    throw InfeasibleScaling(
        fmt::format("theta-scaling infeasible: entry {} exceeds bound {} "
                    "(theta={}, mu={}, k={})",
                    init.max_entry(), bound, theta, dens.mu(), dens.k()),
        init.max_entry(), bound);
  }
  std::array<double, 4> e = init.entries();
  for (double& x : e) x = std::min(1.0, theta * x);
  return Initiator::skg(e[0], e[1], e[2], e[3]);
}

Initiator rmat_to_skg_clamped(const Initiator& init, const DensityParams& dens) {
  if (init.flavor() != Flavor::RmatNormalized) {
    throw InvalidInitiator("rmat_to_skg_clamped expects an R-MAT initiator");
  }
  const double theta = scaling_theta(dens);
  std::array<double, 4> e = init.entries();
  for (double& x : e) x = std::min(1.0, theta * x);
  return Initiator::skg(e[0], e[1], e[2], e[3]);
}

double expected_arcs(const Initiator& skg_init, int k) {
  if (skg_init.flavor() != Flavor::SkgScaled) {
    throw InvalidInitiator("expected_arcs expects an SKG initiator");
  }
  const double s = skg_init.sum();
  if (k > 60) return std::exp(k * std::log(s));
  return std::pow(s, k);
}

namespace {

int ceil_log2(std::uint64_t n) {
  int k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

Preset make_preset(std::string name, std::uint64_t n, double mu, double a,
                   double b, double c, double d, bool directed) {
  return Preset{std::move(name), n, ceil_log2(n), mu,
                Initiator::rmat(a, b, c, d, kPresetSumTolerance), directed};
}

}  // namespace

const std::vector<Preset>& table2_presets() {
  static const std::vector<Preset> rows = {
      make_preset("AS-NEWMAN", 22963, 4.22, .432, .269, .269, .009, false),
      make_preset("AS-ROUTEVIEWS", 6474, 4.09, .442, .255, .255, .022, false),
      make_preset("BIO-PROTEINS", 4626, 6.40, .364, .275, .275, .031, false),
      make_preset("CA-DBLP", 425957, 6.33, .453, .139, .139, .260, false),
      make_preset("CA-GR-QC", 5242, 5.53, .435, .107, .107, .301, false),
      make_preset("CA-HEP-PH", 12008, 19.74, .401, .175, .175, .194, false),
      make_preset("CA-HEP-TH", 9877, 5.26, .441, .120, .120, .259, false),
      make_preset("EMAIL-INSIDE", 986, 32.58, .352, .272, .272, .091, false),
      make_preset("ANSWERS", 598314, 3.07, .469, .181, .195, .117, true),
      make_preset("ATP-GR-QC", 19177, 1.36, .441, .124, .108, .285, true),
      make_preset("BLOG-NAT05-6M", 31600, 8.59, .433, .246, .217, .096, true),
      make_preset("BLOG-NAT06ALL", 32443, 9.83, .429, .248, .222, .095, true),
      make_preset("CIT-HEP-PH", 30567, 11.41, .422, .186, .151, .223, true),
      make_preset("CIT-HEP-TH", 27770, 12.70, .417, .185, .146, .226, true),
      make_preset("DELICIOUS", 205282, 2.13, .479, .157, .167, .187, true),
      make_preset("EPINIONS", 75879, 6.71, .444, .237, .213, .057, true),
      make_preset("FLICKR", 584207, 6.09, .455, .216, .221, .066, true),
      make_preset("GNUTELLA-25", 22687, 2.41, .351, .233, .308, .086, true),
      make_preset("GNUTELLA-30", 36682, 2.41, .355, .231, .298, .084, true),
      make_preset("WEB-NOTREDAME", 325729, 4.60, .460, .190, .208, .105, true),
  };
  return rows;
}

const Preset& find_preset(std::string_view name) {
  for (const auto& p : table2_presets()) {
    if (p.name == name) return p;
  }
  throw ConfigError(fmt::format("unknown preset '{}'", name));
}

}  // namespace kronlab
