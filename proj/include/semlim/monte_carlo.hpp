#pragma once

// Tail-probability estimation p = P(statistic >= threshold) by indicator
// averaging, with Wilson score intervals.
//
// Realizations are processed in fixed blocks whose stream positions depend only
// on the realization index, and per-block hit counts are reduced by integer
// addition, so results do not depend on the worker count.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "semlim/channel_scenarios.hpp"

namespace semlim {

struct TailEstimate {
  double p_hat = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t n = 0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::uint64_t master_seed = 0;
};

struct GridPoint {
  double threshold = 0.0;
  TailEstimate estimate;
  std::optional<double> markov_bound;
  std::optional<double> closed_form;
  std::optional<double> outage_lower_bound;
};

struct SweepResult {
  ScenarioConfig config;
  std::vector<GridPoint> grid;
};

struct EngineOptions {
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
  double confidence = 0.95;
};

struct SweepOptions {
  /// Draw each realization once and test it against every threshold.
  bool shared_samples = true;
  /// Attach Markov / outage columns where the scenario admits them.
  bool bounds = true;
};

/// Realizations per work block.
inline constexpr std::uint64_t kBlockRealizations = 16384;

/// Wilson score interval. Throws std::invalid_argument unless 0 < confidence < 1,
/// n >= 1 and hits <= n.
std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t n,
                                          double confidence = 0.95);

TailEstimate make_estimate(std::uint64_t hits, std::uint64_t n, std::uint64_t master_seed,
                           double confidence = 0.95);

/// Hit counts for every threshold of an increasing grid over one shared set of
/// n realizations.
std::vector<std::uint64_t> count_hits(const ScenarioConfig& config,
                                      std::span<const double> thresholds, std::uint64_t n,
                                      std::uint64_t master_seed, unsigned workers = 0);

TailEstimate estimate_tail(const ScenarioConfig& config, double threshold, std::uint64_t n,
                           std::uint64_t master_seed, const EngineOptions& options = {});

/// Throws std::invalid_argument for an empty or non-increasing grid.
SweepResult sweep_tail(const ScenarioConfig& config, std::span<const double> grid,
                       std::uint64_t n, std::uint64_t master_seed,
                       const SweepOptions& sweep = {}, const EngineOptions& options = {});

}  // namespace semlim
