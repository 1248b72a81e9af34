#include "semlim/channel_scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace semlim {

namespace {

void require_power(double value, const char* name) {
  if (!(std::isfinite(value) && value > 0.0))
    throw std::invalid_argument(std::string(name) + " must be finite and > 0");
}

}  // namespace

const char* to_string(Variant v) {
  switch (v) {
    case Variant::NoRfi:
      return "NoRfi";
    case Variant::SingleRfi:
      return "SingleRfi";
    case Variant::MultiRfi:
      return "MultiRfi";
    case Variant::PracticalSinr:
      return "PracticalSinr";
  }
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (Variant v : {Variant::NoRfi, Variant::SingleRfi, Variant::MultiRfi, Variant::PracticalSinr})
    if (name == to_string(v)) return v;
  return std::nullopt;
}

void ScenarioConfig::validate() const {
  require_power(p_max_s, "p_max_s");
  switch (variant) {
    case Variant::NoRfi:
      require_power(sigma2, "sigma2");
      break;
    case Variant::SingleRfi:
      require_power(p_min_i, "p_min_i");
      break;
    case Variant::MultiRfi:
    case Variant::PracticalSinr:
      require_power(p_tilde_min, "p_tilde_min");
      if (u < 2) throw std::invalid_argument("u must be >= 2 for multi-interferer scenarios");
      break;
  }
  if (p_max_i) require_power(*p_max_i, "p_max_i");
}

std::uint64_t draws_per_realization(const ScenarioConfig& config) {
  switch (config.variant) {
    case Variant::NoRfi:
    case Variant::SingleRfi:
      return 3;
    case Variant::MultiRfi:
      return 2 + 2 * static_cast<std::uint64_t>(config.u);
    case Variant::PracticalSinr:
      return 2 + 2 * static_cast<std::uint64_t>(config.u) + 2;
  }
  return 0;
}

double power_prefactor(const ScenarioConfig& config) {
  switch (config.variant) {
    case Variant::NoRfi:
      return (2.0 * config.p_max_s) / config.sigma2;
    case Variant::SingleRfi:
      return config.p_max_s / config.p_min_i;
    case Variant::MultiRfi:
      return config.p_max_s / config.p_tilde_min;
    case Variant::PracticalSinr:
      return 1.0;
  }
  return 1.0;
}

double realize_statistic(const ScenarioConfig& config, StreamKey key) {
  config.validate();
  NormalStream stream(key);
  return realize_statistic(config, stream);
}

std::vector<double> realize_batch(const ScenarioConfig& config, StreamKey key,
                                  std::uint64_t count) {
  config.validate();
  std::vector<double> out;
  out.reserve(count);
  NormalStream stream(key);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(realize_statistic(config, stream));
  return out;
}

}  // namespace semlim
