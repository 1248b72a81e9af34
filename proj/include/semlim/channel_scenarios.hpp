#pragma once

// Per-realization SINR statistics for the four interference scenarios.
//
//   NoRfi          (2 P_max^s / sigma^2) (X^2 + Y^2) / Z^2
//   SingleRfi      (P_max^s / P_min^i) (A^2 + B^2) / C^2
//   MultiRfi       (P_max^s / P~_min^i) (D^2 + E^2) / sum_u (F_u^2 + G_u^2)
//   PracticalSinr  |h|^2 / (sum_u |g_u|^2 + |n|^2), unit symbol powers
//
// Each realization consumes a fixed number of normals (draws_per_realization),
// read in the order the formulas list them.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semlim/sampling.hpp"

namespace semlim {

enum class Variant { NoRfi, SingleRfi, MultiRfi, PracticalSinr };

const char* to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view name);

struct ScenarioConfig {
  Variant variant = Variant::NoRfi;
  double p_max_s = 1.0;      ///< W
  double sigma2 = 1.0;       ///< W, NoRfi
  double p_min_i = 1.0;      ///< W, SingleRfi
  double p_tilde_min = 1.0;  ///< W, MultiRfi (PracticalSinr: bound columns only)
  int u = 1;                 ///< interferer count, MultiRfi / PracticalSinr
  /// Upper RFI power envelope. Carried for completeness; no statistic or
  /// bound depends on it.
  std::optional<double> p_max_i;

  /// Throws std::invalid_argument when a power used by the variant is not a
  /// finite positive number or when u < 2 for MultiRfi / PracticalSinr.
  void validate() const;
};

/// Normals consumed by one realization: 3, 3, 2 + 2U, 2 + 2U + 2.
std::uint64_t draws_per_realization(const ScenarioConfig& config);

/// Scalar multiplying the random ratio (1 for PracticalSinr).
double power_prefactor(const ScenarioConfig& config);

template <NormalSource S>
double realize_statistic(const ScenarioConfig& config, S& source) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double numerator = 0.0;
  double denominator = 0.0;
  switch (config.variant) {
    case Variant::NoRfi:
    case Variant::SingleRfi: {
      const double x = source.next();
      const double y = source.next();
      const double z = source.next();
      numerator = x * x + y * y;
      denominator = z * z;
      break;
    }
    case Variant::MultiRfi: {
      const double d = source.next();
      const double e = source.next();
      numerator = d * d + e * e;
      for (int k = 0; k < config.u; ++k) {
        const double f = source.next();
        const double g = source.next();
        denominator += f * f + g * g;
      }
      break;
    }
    case Variant::PracticalSinr: {
      numerator = next_complex_unit(source).norm();
      for (int k = 0; k < config.u; ++k) denominator += next_complex_unit(source).norm();
      denominator += next_complex_unit(source).norm();
      break;
    }
  }
  if (denominator == 0.0) return kInf;
  return power_prefactor(config) * (numerator / denominator);
}

/// One realization drawn from the start of substream `key`.
double realize_statistic(const ScenarioConfig& config, StreamKey key);

/// `count` consecutive realizations starting at the beginning of `key`.
std::vector<double> realize_batch(const ScenarioConfig& config, StreamKey key, std::uint64_t count);

}  // namespace semlim
