#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "semlim/channel_scenarios.hpp"
#include "test_support.hpp"

using namespace semlim;
using semlim::testing::FixedSource;
using semlim::testing::ReferenceNormal;

namespace {

ScenarioConfig no_rfi(double p, double sigma2) {
  ScenarioConfig c;
  c.variant = Variant::NoRfi;
  c.p_max_s = p;
  c.sigma2 = sigma2;
  return c;
}

ScenarioConfig single_rfi(double p, double p_min) {
  ScenarioConfig c;
  c.variant = Variant::SingleRfi;
  c.p_max_s = p;
  c.p_min_i = p_min;
  return c;
}

ScenarioConfig multi_rfi(double p, double p_tilde, int u) {
  ScenarioConfig c;
  c.variant = Variant::MultiRfi;
  c.p_max_s = p;
  c.p_tilde_min = p_tilde;
  c.u = u;
  return c;
}

ScenarioConfig practical(int u) {
  ScenarioConfig c;
  c.variant = Variant::PracticalSinr;
  c.p_max_s = 1.5;
  c.p_tilde_min = 1.0;
  c.u = u;
  return c;
}

double fraction_at_least(const std::vector<double>& xs, double t) {
  std::size_t hits = 0;
  for (double x : xs) hits += x >= t;
  return static_cast<double>(hits) / static_cast<double>(xs.size());
}

}  // namespace

TEST_CASE("draw counts and prefactors") {
  CHECK(draws_per_realization(no_rfi(5, 100)) == 3);
  CHECK(draws_per_realization(single_rfi(10, 10)) == 3);
  CHECK(draws_per_realization(multi_rfi(10, 10, 3)) == 8);
  CHECK(draws_per_realization(practical(25)) == 54);
  CHECK(power_prefactor(no_rfi(5, 100)) == doctest::Approx(0.1));
  CHECK(power_prefactor(single_rfi(10, 100)) == doctest::Approx(0.1));
  CHECK(power_prefactor(multi_rfi(10, 0.1, 3)) == doctest::Approx(100.0));
  CHECK(power_prefactor(practical(25)) == 1.0);
}

TEST_CASE("forced draws") {
  FixedSource ones({1.0});
  CHECK(realize_statistic(no_rfi(5, 100), ones) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(realize_statistic(single_rfi(10, 10), ones) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(realize_statistic(multi_rfi(10, 10, 3), ones) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(realize_statistic(practical(2), ones) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // Draw order X, Y, Z: numerator 3^2 + 4^2, denominator 5^2.
  FixedSource ordered({3.0, 4.0, 5.0});
  CHECK(realize_statistic(single_rfi(1, 1), ordered) == doctest::Approx(1.0));

  FixedSource zero_denominator({1.0, 1.0, 0.0});
  CHECK(realize_statistic(no_rfi(5, 100), zero_denominator) == std::numeric_limits<double>::infinity());
}

TEST_CASE("validation") {
  CHECK_NOTHROW(no_rfi(5, 100).validate());
  CHECK_THROWS_AS(no_rfi(0, 100).validate(), std::invalid_argument);
  CHECK_THROWS_AS(no_rfi(5, -1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(single_rfi(5, std::nan("")).validate(), std::invalid_argument);
  CHECK_THROWS_AS(multi_rfi(5, 1, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(multi_rfi(5, std::numeric_limits<double>::infinity(), 3).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(practical(1).validate(), std::invalid_argument);
  CHECK(parse_variant("MultiRfi") == Variant::MultiRfi);
  CHECK_FALSE(parse_variant("Bogus").has_value());
  CHECK(std::string(to_string(Variant::PracticalSinr)) == "PracticalSinr");
}

TEST_CASE("batches") {
  CHECK(realize_batch(no_rfi(5, 100), {1, 0}, 0).empty());
  const auto batch = realize_batch(multi_rfi(10, 10, 3), {3, 0}, 100);
  CHECK(batch.size() == 100);
  CHECK(batch.front() == realize_statistic(multi_rfi(10, 10, 3), StreamKey{3, 0}));
  CHECK(batch == realize_batch(multi_rfi(10, 10, 3), {3, 0}, 100));
}

TEST_CASE("tail fractions at reference points") {
  // NoRfi P=5, sigma2=100: tail at 1 is 11^(-1/2).
  CHECK(std::abs(fraction_at_least(realize_batch(no_rfi(5, 100), {1, 0}, 1'000'000), 1.0) -
                 0.30151134457776363) < 0.0015);
  // SingleRfi P=10, Pmin=10: tail at 1 is 2^(-1/2).
  CHECK(std::abs(fraction_at_least(realize_batch(single_rfi(10, 10), {2, 0}, 1'000'000), 1.0) -
                 0.7071067811865476) < 0.0014);
  // MultiRfi U=3, P=P~=10: tail at 1 is 2^-3.
  CHECK(std::abs(fraction_at_least(realize_batch(multi_rfi(10, 10, 3), {3, 0}, 1'000'000), 1.0) -
                 0.125) < 0.001);
  // PracticalSinr U=25: tail at 0.1 is 1.1^-26.
  CHECK(std::abs(fraction_at_least(realize_batch(practical(25), {4, 0}, 1'000'000), 0.1) -
                 0.08390545288824001) < 0.001);
}

TEST_CASE("closed forms hold under an independent reference sampler") {
  // Formulas are evaluated directly here, not through realize_statistic.
  constexpr int n = 1'000'000;
  ReferenceNormal r(99);
  auto sq = [&r] {
    const double x = r.next();
    return x * x;
  };
  struct Case {
    const char* name;
    double expected;
    std::function<double()> draw;
  };
  const double beta = 1.3;
  const std::vector<Case> cases{
      {"NoRfi", std::pow(1.0 + beta * 100.0 / (2.0 * 5.0), -0.5),
       [&] { return (2.0 * 5.0 / 100.0) * (sq() + sq()) / sq(); }},
      {"SingleRfi", std::pow(1.0 + beta * 20.0 / 10.0, -0.5),
       [&] { return (10.0 / 20.0) * (sq() + sq()) / sq(); }},
      {"MultiRfi", std::pow(1.0 + beta * 2.0 / 10.0, -4.0),
       [&] {
         const double num = sq() + sq();
         double den = 0.0;
         for (int k = 0; k < 4; ++k) den += sq() + sq();
         return (10.0 / 2.0) * num / den;
       }},
      {"PracticalSinr", std::pow(1.0 + beta, -6.0),
       [&] {
         const double num = 0.5 * (sq() + sq());
         double den = 0.0;
         for (int k = 0; k < 6; ++k) den += 0.5 * (sq() + sq());
         return num / den;
       }},
  };
  for (const auto& c : cases) {
    int hits = 0;
    for (int i = 0; i < n; ++i) hits += c.draw() >= beta;
    const double p_hat = static_cast<double>(hits) / n;
    INFO(c.name << ": p_hat = " << p_hat << ", expected " << c.expected);
    CHECK(std::abs(p_hat - c.expected) < 4.0 * semlim::testing::binomial_sigma(c.expected, n));
  }
}

TEST_CASE("power scaling is exact") {
  for (int i = 0; i < 200; ++i) {
    const StreamKey k{8, static_cast<std::uint64_t>(i)};
    CHECK(realize_statistic(no_rfi(10, 100), k) == 2.0 * realize_statistic(no_rfi(5, 100), k));
    CHECK(realize_statistic(single_rfi(20, 10), k) == 2.0 * realize_statistic(single_rfi(10, 10), k));
    CHECK(realize_statistic(multi_rfi(20, 10, 4), k) == 2.0 * realize_statistic(multi_rfi(10, 10, 4), k));
  }
}

TEST_CASE("statistic decreases in the noise / interference powers") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const StreamKey k{9, i};
    CHECK(realize_statistic(no_rfi(5, 1000), k) <= realize_statistic(no_rfi(5, 100), k));
    CHECK(realize_statistic(single_rfi(5, 1000), k) <= realize_statistic(single_rfi(5, 100), k));
    CHECK(realize_statistic(multi_rfi(5, 1000, 3), k) <= realize_statistic(multi_rfi(5, 100, 3), k));
  }
}

TEST_CASE("adding interferers never raises the statistic on shared draws") {
  // The first 2 + 2U draws of a larger-U realization are a smaller-U realization
  // plus extra nonnegative denominator terms.
  for (std::uint64_t i = 0; i < 500; ++i) {
    const StreamKey k{10, i};
    double prev = std::numeric_limits<double>::infinity();
    for (int u : {2, 3, 5, 8, 13}) {
      const double s = realize_statistic(multi_rfi(10, 1, u), k);
      CHECK(s <= prev);
      prev = s;
    }
  }
}

TEST_CASE("MultiRfi ratio is F(2, 2U) up to scale (KS, alpha 0.001)") {
  constexpr int u = 4;
  constexpr std::size_t n = 100'000;
  const auto cfg = multi_rfi(1, 1, u);
  const auto stat = realize_batch(cfg, {12, 0}, n);
  std::vector<double> scaled(n);
  // (D^2+E^2)/sum(F^2+G^2) = (chi2_2/2)/(chi2_2U/2U) / U.
  for (std::size_t i = 0; i < n; ++i) scaled[i] = stat[i] * u;
  std::vector<double> f(n);
  NormalStream s({13, 0});
  for (auto& v : f) v = f_ratio(s, 2, 2 * u);
  CHECK(semlim::testing::ks_statistic(scaled, f) < semlim::testing::ks_critical_001(n, n));
}
