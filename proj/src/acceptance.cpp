#include "semlim/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ostream>
#include <random>

#include "semlim/analytic_bounds.hpp"
#include "semlim/experiment.hpp"
#include "semlim/monte_carlo.hpp"
#include "semlim/sampling.hpp"
#include "semlim/semantic_model.hpp"

namespace semlim::acceptance {

namespace {

std::string printf_string(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

double binomial_sigma(double p, std::uint64_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

ScenarioConfig no_rfi(double p_max_s, double sigma2) {
  ScenarioConfig c;
  c.variant = Variant::NoRfi;
  c.p_max_s = p_max_s;
  c.sigma2 = sigma2;
  return c;
}

ScenarioConfig single_rfi(double p_max_s, double p_min_i) {
  ScenarioConfig c;
  c.variant = Variant::SingleRfi;
  c.p_max_s = p_max_s;
  c.p_min_i = p_min_i;
  return c;
}

ScenarioConfig multi(Variant v, double p_max_s, double p_tilde_min, int u) {
  ScenarioConfig c;
  c.variant = v;
  c.p_max_s = p_max_s;
  c.p_tilde_min = p_tilde_min;
  c.u = u;
  return c;
}

class Suite {
 public:
  explicit Suite(const Settings& s) : s_(s), engine_{s.workers, 0.95} {}

  std::vector<CheckResult> run() {
    single_rfi_oracle();
    no_rfi_oracle();
    multi_rfi_oracle();
    practical_limits_oracle();
    decay_ladders();
    f_mean_check();
    outage_bound_check();
    optimal_k_check();
    arctan_quadrature();
    determinism();
    registry();
    return std::move(results_);
  }

 private:
  void record(std::string name, bool passed, std::string detail) {
    results_.push_back({std::move(name), passed, std::move(detail)});
  }

  TailEstimate estimate(const ScenarioConfig& c, double beta) {
    return estimate_tail(c, beta, s_.n, s_.seed, engine_);
  }

  // Counts along a parameter ladder drawn from one seed (common random
  // numbers): strictly decreasing, top rung below 1e-3.
  bool ladder_ok(const std::vector<ScenarioConfig>& rungs, std::string& detail) {
    std::vector<std::uint64_t> hits;
    for (const auto& c : rungs) hits.push_back(estimate(c, 1.0).hits);
    bool strictly = true;
    for (std::size_t i = 1; i < hits.size(); ++i) strictly = strictly && hits[i] < hits[i - 1];
    const double top = static_cast<double>(hits.back()) / static_cast<double>(s_.n);
    detail += printf_string("%zu rungs, hits %llu -> %llu, top p_hat = %.3g; ", hits.size(),
                            static_cast<unsigned long long>(hits.front()),
                            static_cast<unsigned long long>(hits.back()), top);
    return strictly && top < 1e-3;
  }

  void single_rfi_oracle() {
    const auto c = single_rfi(10.0, 10.0);
    const std::vector<double> grid = {0.5, 1.0, 2.0, 4.0};
    const auto sweep = sweep_tail(c, grid, s_.n, s_.seed, {}, engine_);
    bool ok = true;
    std::string detail;
    for (const auto& point : sweep.grid) {
      const double truth = std::pow(1.0 + point.threshold, -0.5);
      const double tol = 3.0 * binomial_sigma(truth, s_.n);
      const double err = std::abs(point.estimate.p_hat - truth);
      ok = ok && err <= tol;
      detail += printf_string("b=%g p=%.5f (%.5f+-%.5f) ", point.threshold, point.estimate.p_hat,
                              truth, tol);
    }
    record("single-RFI oracle", ok, detail);
  }

  void no_rfi_oracle() {
    const auto e = estimate(no_rfi(5.0, 100.0), 1.0);
    const double truth = 1.0 / std::sqrt(11.0);
    const bool ok = std::abs(e.p_hat - truth) <= 0.0015;
    record("no-RFI oracle", ok,
           printf_string("p_hat(1) = %.5f, expected %.5f +- 0.0015", e.p_hat, truth));
  }

  void multi_rfi_oracle() {
    const auto e = estimate(multi(Variant::MultiRfi, 10.0, 10.0, 3), 1.0);
    bool ok = std::abs(e.p_hat - 0.125) <= 0.001;
    std::string detail = printf_string("U=3 p_hat(1) = %.5f (0.125 +- 0.001); ", e.p_hat);
    for (int u : {2, 4, 8, 16}) {
      const auto eu = estimate(multi(Variant::MultiRfi, 10.0, 10.0, u), 1.0);
      const double truth = std::pow(2.0, -u);
      const double limit = truth + 5.0 * binomial_sigma(truth, s_.n);
      ok = ok && eu.p_hat <= limit;
      detail += printf_string("U=%d %.3g<=%.3g ", u, eu.p_hat, limit);
    }
    record("MI-RFI oracle", ok, detail);
  }

  const std::vector<SweepResult>& practical_sweeps() {
    if (practical_.empty()) {
      const auto* fig10 = find_preset("fig10");
      for (const auto& s : fig10->series)
        practical_.push_back(sweep_tail(s.config, fig10->thresholds, s_.n, s_.seed, {}, engine_));
    }
    return practical_;
  }

  void practical_limits_oracle() {
    const auto c = multi(Variant::PracticalSinr, 1.5, 1.0, 25);
    const auto e = estimate(c, 0.1);
    const double truth = std::pow(1.1, -26);
    const auto markov = markov_upper_bound_at(0.1, 1.5, 1.0, 25);
    bool ok = std::abs(e.p_hat - truth) <= 0.001;
    ok = ok && std::abs(markov.value - 0.625) <= 1e-12 && markov.value >= e.p_hat;
    std::string detail = printf_string("p_hat(0.1) = %.5f (%.5f +- 0.001), Markov = %.4f; ",
                                       e.p_hat, truth, markov.value);

    // Gap between the bound and the estimate shrinks along beta_K and along U.
    const auto& sweeps = practical_sweeps();
    bool shrinks = true;
    for (std::size_t si = 0; si < sweeps.size(); ++si) {
      const auto& grid = sweeps[si].grid;
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const double gap = *grid[j].markov_bound - grid[j].estimate.p_hat;
        if (j > 0) {
          const double prev = *grid[j - 1].markov_bound - grid[j - 1].estimate.p_hat;
          shrinks = shrinks && gap < prev;
        }
        if (si > 0) {
          const auto& other = sweeps[si - 1].grid[j];
          shrinks = shrinks && gap < *other.markov_bound - other.estimate.p_hat;
        }
      }
    }
    detail += shrinks ? "gap shrinks in beta_K and U" : "gap does not shrink monotonically";
    record("practical-limits oracle", ok && shrinks, detail);
  }

  void decay_ladders() {
    std::string detail;
    std::vector<ScenarioConfig> sigma, pmin, ptilde, users;
    for (int k = 0; k <= 22; ++k) {
      sigma.push_back(no_rfi(5.0, 10.0 * std::ldexp(1.0, k)));
      pmin.push_back(single_rfi(10.0, 10.0 * std::ldexp(1.0, k)));
    }
    for (int k = 0; k <= 5; ++k)
      ptilde.push_back(multi(Variant::MultiRfi, 10.0, 10.0 * std::ldexp(1.0, k), 3));
    for (int u : {2, 4, 8, 16}) users.push_back(multi(Variant::MultiRfi, 10.0, 10.0, u));

    detail += "sigma2: ";
    bool ok = ladder_ok(sigma, detail);
    detail += "P_min: ";
    ok = ladder_ok(pmin, detail) && ok;
    detail += "P~_min: ";
    ok = ladder_ok(ptilde, detail) && ok;
    detail += "U: ";
    ok = ladder_ok(users, detail) && ok;
    record("decay ladders (sigma2, P_min, P~_min, U)", ok, detail);
  }

  void f_mean_check() {
    bool ok = true;
    std::string detail;
    for (int u : {2, 3, 10, 25}) {
      auto stream = NormalStream::at_position(splitmix64(s_.seed), 0);
      double mean = 0.0;
      double m2 = 0.0;
      for (std::uint64_t i = 0; i < s_.n; ++i) {
        const double x = f_ratio(stream, 2, 2 * u);
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
      }
      const double se = std::sqrt(m2 / static_cast<double>(s_.n - 1) / static_cast<double>(s_.n));
      const double truth = f_mean(2 * u);
      ok = ok && std::abs(mean - truth) <= 4.0 * se;
      detail += printf_string("U=%d %.4f vs %.4f (4se %.4f) ", u, mean, truth, 4.0 * se);
    }
    record("F_{2,2U} mean", ok, detail);
  }

  void outage_bound_check() {
    const auto& sweeps = practical_sweeps();
    int checked = 0;
    bool ok = true;
    for (double pt : {0.8, 1.0}) {
      for (const auto& sweep : sweeps) {
        for (const auto& point : sweep.grid) {
          const auto report =
              outage_lower_bound_at(point.threshold, sweep.config.p_max_s, pt, sweep.config.u);
          if (!all_satisfied(report.conditions)) continue;
          ++checked;
          ok = ok && 1.0 - point.estimate.p_hat >= report.value;
        }
      }
    }
    ok = ok && checked > 0;
    record("outage lower bound", ok,
           printf_string("%d configurations passing all conditions satisfy 1 - p_hat >= bound",
                         checked));
  }

  void optimal_k_check() {
    const auto family = synthetic_family();
    const double eta = 0.8;
    const int k_star = select_optimal_k(family, eta);
    const int k_max = family.back().k_label;

    std::vector<std::pair<double, int>> thresholds;
    for (const auto& m : family) thresholds.emplace_back(beta_threshold(m, eta), m.k_label);
    std::sort(thresholds.begin(), thresholds.end());
    std::vector<double> grid;
    for (const auto& t : thresholds) grid.push_back(t.first);
    const auto sweep =
        sweep_tail(multi(Variant::PracticalSinr, 1.5, 1.0, 25), grid, s_.n, s_.seed, {}, engine_);
    // Smallest threshold carries the largest estimate; it must be K_max's and
    // strictly above the runner-up.
    const bool argmax_ok = thresholds.front().second == k_max &&
                           sweep.grid[0].estimate.hits > sweep.grid[1].estimate.hits;
    record("optimal K", k_star == k_max && argmax_ok,
           printf_string("K* = %d, K_max = %d, p_hat(K_max) = %.4f > %.4f", k_star, k_max,
                         sweep.grid[0].estimate.p_hat, sweep.grid[1].estimate.p_hat));
  }

  void arctan_quadrature() {
    const double at0 = arctan_integral_bound(0.0);
    bool ok = std::abs(at0 - 0.5) <= 1e-9;
    std::string detail = printf_string("bound(0) = %.12f; ", at0);

    // Cauchy ratio-of-normals oracle on an independent generator:
    // (1/2)[P(X >= t + Y) + P(X >= t - Y)], X = A/C, Y = B/D.
    const double ts[] = {0.5, 1.0, 2.0};
    std::uint64_t hits[3] = {0, 0, 0};
    std::mt19937_64 rng(s_.seed);
    std::normal_distribution<double> normal;
    for (std::uint64_t i = 0; i < s_.cauchy_n; ++i) {
      const double x = normal(rng) / normal(rng);
      const double y = normal(rng) / normal(rng);
      for (int k = 0; k < 3; ++k) hits[k] += (x >= ts[k] + y) + (x >= ts[k] - y);
    }
    for (int k = 0; k < 3; ++k) {
      const double mc = 0.5 * static_cast<double>(hits[k]) / static_cast<double>(s_.cauchy_n);
      const double q = arctan_integral_bound(ts[k]);
      const double tol = 3.0 * binomial_sigma(mc, s_.cauchy_n);
      ok = ok && std::abs(q - mc) <= tol;
      detail += printf_string("t=%g quad %.6f mc %.6f (3s %.6f) ", ts[k], q, mc, tol);
    }
    bool monotone = true;
    double prev = arctan_integral_bound(0.0);
    for (int i = 1; i <= 100; ++i) {
      const double v = arctan_integral_bound(0.1 * i);
      monotone = monotone && v <= prev;
      prev = v;
    }
    detail += monotone ? "monotone on [0, 10]" : "not monotone";
    record("arctan-integral quadrature", ok && monotone, detail);
  }

  void determinism() {
    const auto* fig7 = find_preset("fig7");
    const std::string one = to_csv(run_preset(*fig7, {7, 100'000, 1}));
    const std::string eight = to_csv(run_preset(*fig7, {7, 100'000, 8}));
    record("preset determinism (fig7, seed 7, 1e5 samples, 1 vs 8 workers)", one == eight,
           printf_string("%zu bytes, %s", one.size(), one == eight ? "identical" : "differ"));
  }

  void registry() {
    const auto issues = verify_registry(preset_registry());
    std::string detail = issues.empty() ? "reference constants match" : "";
    for (const auto& i : issues) detail += i + "; ";
    record("preset registry", issues.empty(), detail);
  }

  Settings s_;
  EngineOptions engine_;
  std::vector<CheckResult> results_;
  std::vector<SweepResult> practical_;
};

}  // namespace

std::vector<CheckResult> run_all(const Settings& settings) { return Suite(settings).run(); }

void print_report(std::ostream& out, const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  out << passed << "/" << results.size() << " checks passed\n";
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace semlim::acceptance
