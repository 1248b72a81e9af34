#pragma once

// Figure presets, sweep configuration files, CSV emission and bound reports.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "semlim/analytic_bounds.hpp"
#include "semlim/monte_carlo.hpp"
#include "semlim/semantic_model.hpp"

namespace semlim {

struct SeriesSpec {
  std::string label;
  ScenarioConfig config;
};

struct Preset {
  std::string name;
  std::string description;
  std::vector<SeriesSpec> series;
  std::vector<double> thresholds;
  std::uint64_t n = 0;
};

/// fig3..fig10 plus the two fixed-U multi-interferer presets.
const std::vector<Preset>& preset_registry();
const Preset* find_preset(const std::string& name, std::span<const Preset> registry);
const Preset* find_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Checks the fixed reference constants (fixed powers, U sets, sample counts) in
/// `registry`. Returns one message per mismatch, each naming its preset.
std::vector<std::string> verify_registry(std::span<const Preset> registry);

struct RunOptions {
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> samples;
  unsigned workers = 0;
};

struct SweepSeries {
  std::string label;
  SweepResult result;
};

std::vector<SweepSeries> run_preset(const Preset& preset, const RunOptions& options);

inline constexpr const char* kCsvHeader =
    "scenario,series_label,threshold,n,hits,p_hat,ci_low,ci_high,markov_bound,closed_form,"
    "outage_lower_bound,seed";

/// %.17g, round-trip exact.
std::string format_real(double value);
void write_csv(std::ostream& out, std::span<const SweepSeries> series);
std::string to_csv(std::span<const SweepSeries> series);

struct SweepConfig {
  std::vector<SeriesSpec> series;
  /// SINR thresholds, or derived from `logistic` + `eta_min` when empty.
  std::vector<double> thresholds;
  std::optional<LogisticParams> logistic;
  std::vector<double> eta_min;
  std::uint64_t n = 1'000'000;
  bool bounds = false;
  bool shared_samples = true;
  std::optional<std::uint64_t> seed;
};

/// Parses the JSON sweep document. Throws std::invalid_argument with the
/// offending field on malformed input.
SweepConfig parse_sweep_config(const nlohmann::json& doc);
LogisticParams parse_logistic(const nlohmann::json& doc);
ScenarioConfig parse_scenario(const nlohmann::json& doc);

/// Throws ConditionError when bound columns are requested for a series whose
/// conditions fail, before any sampling.
std::vector<SweepSeries> run_sweep(const SweepConfig& config, const RunOptions& options);

/// JSON bound report (Markov and outage, conditions, kappa/alpha/beta, and
/// optionally the optimal K over a "family").
nlohmann::json bound_report_json(const nlohmann::json& doc);

nlohmann::json to_json(const BoundReport& report);

}  // namespace semlim
