#include "semlim/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "semlim/analytic_bounds.hpp"

namespace semlim {

namespace {

unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("threshold grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::isnan(grid[i])) throw std::invalid_argument("threshold grid contains NaN");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::invalid_argument("threshold grid must be strictly increasing");
  }
}

// buckets[k] counts realizations exceeding exactly the first k thresholds.
void accumulate_block(const ScenarioConfig& config, std::span<const double> thresholds,
                      std::uint64_t master_seed, std::uint64_t first, std::uint64_t last,
                      std::vector<std::uint64_t>& buckets) {
  const std::uint64_t stride = draws_per_realization(config);
  auto stream = NormalStream::at_position(master_seed, first * stride);
  if (thresholds.size() == 1) {
    const double threshold = thresholds[0];
    std::uint64_t hits = 0;
    for (std::uint64_t r = first; r < last; ++r)
      hits += realize_statistic(config, stream) >= threshold ? 1 : 0;
    buckets[1] += hits;
    buckets[0] += (last - first) - hits;
    return;
  }
  for (std::uint64_t r = first; r < last; ++r) {
    const double stat = realize_statistic(config, stream);
    const auto exceeded = static_cast<std::size_t>(
        std::upper_bound(thresholds.begin(), thresholds.end(), stat) - thresholds.begin());
    ++buckets[exceeded];
  }
}

}  // namespace

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t n,
                                          double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("confidence must lie in (0, 1)");
  if (n == 0) throw std::invalid_argument("Wilson interval needs n >= 1");
  if (hits > n) throw std::invalid_argument("hits exceed n");

  const double z =
      boost::math::quantile(boost::math::normal(), 1.0 - (1.0 - confidence) / 2.0);
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  double low = hits == 0 ? 0.0 : std::max(0.0, centre - half);
  double high = hits == n ? 1.0 : std::min(1.0, centre + half);
  // Keep the ordering ci_low <= p_hat <= ci_high exact under rounding.
  low = std::min(low, p);
  high = std::max(high, p);
  return {low, high};
}

TailEstimate make_estimate(std::uint64_t hits, std::uint64_t n, std::uint64_t master_seed,
                           double confidence) {
  const auto [low, high] = wilson_interval(hits, n, confidence);
  return {static_cast<double>(hits) / static_cast<double>(n), hits, n, low, high, master_seed};
}

std::vector<std::uint64_t> count_hits(const ScenarioConfig& config,
                                      std::span<const double> thresholds, std::uint64_t n,
                                      std::uint64_t master_seed, unsigned workers) {
  config.validate();
  validate_grid(thresholds);
  if (n == 0) throw std::invalid_argument("sample count must be >= 1");

  const std::uint64_t blocks = (n + kBlockRealizations - 1) / kBlockRealizations;
  const auto threads =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), blocks));
  std::vector<std::vector<std::uint64_t>> partial(
      threads, std::vector<std::uint64_t>(thresholds.size() + 1, 0));
  std::atomic<std::uint64_t> next_block{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](unsigned id) {
    try {
      for (std::uint64_t b = next_block++; b < blocks; b = next_block++) {
        const std::uint64_t first = b * kBlockRealizations;
        const std::uint64_t last = std::min(n, first + kBlockRealizations);
        accumulate_block(config, thresholds, master_seed, first, last, partial[id]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next_block = blocks;
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(work, id);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::uint64_t> buckets(thresholds.size() + 1, 0);
  for (const auto& p : partial)
    for (std::size_t k = 0; k < buckets.size(); ++k) buckets[k] += p[k];

  // hits[j] = realizations exceeding at least j + 1 thresholds.
  std::vector<std::uint64_t> hits(thresholds.size(), 0);
  std::uint64_t running = 0;
  for (std::size_t k = thresholds.size(); k >= 1; --k) {
    running += buckets[k];
    hits[k - 1] = running;
  }
  return hits;
}

TailEstimate estimate_tail(const ScenarioConfig& config, double threshold, std::uint64_t n,
                           std::uint64_t master_seed, const EngineOptions& options) {
  const double grid[] = {threshold};
  const auto hits = count_hits(config, grid, n, master_seed, options.workers);
  return make_estimate(hits[0], n, master_seed, options.confidence);
}

SweepResult sweep_tail(const ScenarioConfig& config, std::span<const double> grid,
                       std::uint64_t n, std::uint64_t master_seed, const SweepOptions& sweep,
                       const EngineOptions& options) {
  validate_grid(grid);
  SweepResult result{config, {}};
  result.grid.reserve(grid.size());

  std::vector<std::uint64_t> hits;
  if (sweep.shared_samples) hits = count_hits(config, grid, n, master_seed, options.workers);

  const bool markov_family =
      (config.variant == Variant::MultiRfi || config.variant == Variant::PracticalSinr) &&
      config.u >= 2;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    GridPoint point;
    point.threshold = grid[j];
    if (sweep.shared_samples) {
      point.estimate = make_estimate(hits[j], n, master_seed, options.confidence);
    } else {
      point.estimate = estimate_tail(config, grid[j], n, splitmix64(master_seed + j), options);
    }
    point.closed_form = closed_form_tail(config, grid[j]);
    if (sweep.bounds && markov_family && grid[j] >= 0.0) {
      point.markov_bound =
          markov_upper_bound_at(grid[j], config.p_max_s, config.p_tilde_min, config.u).value;
      point.outage_lower_bound = std::max(0.0, 1.0 - *point.markov_bound);
    }
    result.grid.push_back(point);
  }
  return result;
}

}  // namespace semlim
