#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "semlim/sampling.hpp"
#include "test_support.hpp"

using namespace semlim;
using semlim::testing::FixedSource;
using semlim::testing::ReferenceNormal;

namespace {

constexpr StreamKey kKey{20240607, 0};

std::vector<double> sequential(NormalStream s, std::size_t count) {
  std::vector<double> out(count);
  for (auto& v : out) v = s.next();
  return out;
}

}  // namespace

TEST_CASE("philox4x32-10 known-answer vectors") {
  using Block = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("normal_quantile agrees with an independent quantile") {
  const boost::math::normal_distribution<double> ref;
  for (double p : {1e-12, 1e-6, 0.001, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.9, 0.97575, 0.999, 1 - 1e-9}) {
    const double expected = boost::math::quantile(ref, p);
    INFO("p = " << p);
    CHECK(normal_quantile(p) == doctest::Approx(expected).epsilon(1.2e-9).scale(1.0));
  }
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("empty streams") {
  CHECK(standard_normal_stream(kKey, 0).empty());
  CHECK(complex_gaussian_unit_stream(kKey, 0).empty());
}

TEST_CASE("standard normal moments at 1e6 draws") {
  const auto xs = standard_normal_stream(kKey, 1'000'000);
  const auto m = semlim::testing::moments(xs);
  CHECK(std::abs(m.mean) < 0.004);
  CHECK(std::abs(m.variance - 1.0) < 0.006);
}

TEST_CASE("reference sampler passes the same moment check") {
  ReferenceNormal ref(20240607);
  std::vector<double> xs(1'000'000);
  for (auto& v : xs) v = ref.next();
  const auto m = semlim::testing::moments(xs);
  CHECK(std::abs(m.mean) < 0.004);
  CHECK(std::abs(m.variance - 1.0) < 0.006);
}

TEST_CASE("Philox normals and reference normals share a distribution (KS, alpha 0.001)") {
  const auto ours = standard_normal_stream({5, 0}, 100'000);
  ReferenceNormal ref(5);
  std::vector<double> theirs(100'000);
  for (auto& v : theirs) v = ref.next();
  CHECK(semlim::testing::ks_statistic(ours, theirs) <
        semlim::testing::ks_critical_001(ours.size(), theirs.size()));
}

TEST_CASE("complex unit Gaussians") {
  const auto zs = complex_gaussian_unit_stream(kKey, 1'000'000);
  double power = 0.0;
  double re = 0.0;
  for (const auto& z : zs) {
    power += z.norm();
    re += z.re;
  }
  power /= static_cast<double>(zs.size());
  re /= static_cast<double>(zs.size());
  CHECK(std::abs(power - 1.0) < 0.003);
  CHECK(std::abs(re) < 0.0022);
}

TEST_CASE("streams are deterministic in their key") {
  const auto a = standard_normal_stream({42, 3}, 1000);
  const auto b = standard_normal_stream({42, 3}, 1000);
  CHECK(a == b);
  CHECK(a != standard_normal_stream({43, 3}, 1000));
  CHECK(a != standard_normal_stream({42, 4}, 1000));
  CHECK(chi_squared_draw({9, 9}, 4) == chi_squared_draw({9, 9}, 4));
  CHECK(f_ratio_draw({9, 9}, 2, 6) == f_ratio_draw({9, 9}, 2, 6));
}

TEST_CASE("adjacent chunks are uncorrelated") {
  const auto a = standard_normal_stream({77, 0}, 100'000);
  const auto b = standard_normal_stream({77, 1}, 100'000);
  double sab = 0.0, sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += a[i] * b[i];
    sa += a[i];
    sb += b[i];
    saa += a[i] * a[i];
    sbb += b[i] * b[i];
  }
  const double n = static_cast<double>(a.size());
  const double cov = sab / n - (sa / n) * (sb / n);
  const double corr = cov / std::sqrt((saa / n - sa * sa / (n * n)) * (sbb / n - sb * sb / (n * n)));
  CHECK(std::abs(corr) < 0.01);
}

TEST_CASE("positions are randomly addressable and roll over chunk boundaries") {
  const auto chunk0 = standard_normal_stream({11, 0}, kChunkLength);
  const auto chunk1 = standard_normal_stream({11, 1}, 10);

  // Reading through the boundary continues in chunk 1.
  NormalStream s({11, 0}, kChunkLength - 3);
  CHECK(s.next() == chunk0[kChunkLength - 3]);
  CHECK(s.next() == chunk0[kChunkLength - 2]);
  CHECK(s.next() == chunk0[kChunkLength - 1]);
  CHECK(s.key() == StreamKey{11, 1});
  CHECK(s.offset() == 0);
  for (std::size_t i = 0; i < chunk1.size(); ++i) CHECK(s.next() == chunk1[i]);

  // Odd and even start offsets both land on the same values.
  for (std::uint64_t pos : std::vector<std::uint64_t>{0, 1, 2, 12345, kChunkLength - 1, kChunkLength + 7}) {
    auto t = NormalStream::at_position(11, pos);
    const double expected = pos < kChunkLength ? chunk0[pos] : chunk1[pos - kChunkLength];
    CHECK(t.next() == expected);
  }
  CHECK(key_for_position(11, kChunkLength * 5 + 2) == StreamKey{11, 5});
}

TEST_CASE("chi-squared draws") {
  FixedSource zeros({0.0});
  CHECK(chi_squared(zeros, 3) == 0.0);
  FixedSource ones({1.0});
  CHECK(chi_squared(ones, 5) == 5.0);

  SUBCASE("nu = 2, one draw per key") {
    constexpr std::uint64_t n = 1'000'000;
    double sum = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) sum += chi_squared_draw({31, i}, 2);
    CHECK(std::abs(sum / n - 2.0) < 0.006);
  }
  SUBCASE("nu = 6, sequential draws") {
    NormalStream s({31, 0});
    constexpr int n = 1'000'000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += chi_squared(s, 6);
    CHECK(std::abs(sum / n - 6.0) < 0.011);
  }
  SUBCASE("mean and variance within 4 sigma for several nu") {
    for (int nu : {1, 2, 4, 8, 16}) {
      NormalStream s({37, static_cast<std::uint64_t>(nu)});
      std::vector<double> xs(1'000'000);
      for (auto& x : xs) x = chi_squared(s, nu);
      const auto m = semlim::testing::moments(xs);
      const double n = static_cast<double>(xs.size());
      const double mean_sigma = std::sqrt(2.0 * nu / n);
      const double var_sigma = std::sqrt((8.0 * nu * nu + 48.0 * nu) / n);
      INFO("nu = " << nu);
      CHECK(std::abs(m.mean - nu) < 4.0 * mean_sigma);
      CHECK(std::abs(m.variance - 2.0 * nu) < 4.0 * var_sigma);
    }
  }
  CHECK_THROWS_AS(chi_squared(ones, 0), std::invalid_argument);
  CHECK_THROWS_AS(chi_squared_draw(kKey, -1), std::invalid_argument);
}

TEST_CASE("F-ratio draws") {
  FixedSource ones({1.0});
  CHECK(f_ratio(ones, 3, 7) == doctest::Approx(1.0).epsilon(1e-15));

  // A zero denominator is redrawn rather than producing inf.
  FixedSource padded({1.0, 0.0, 0.0, 2.0});
  CHECK(f_ratio(padded, 1, 1) == doctest::Approx(0.25));

  SUBCASE("F(2,4) mean over 1e7") {
    NormalStream s({41, 0});
    constexpr int n = 10'000'000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += f_ratio(s, 2, 4);
    CHECK(std::abs(sum / n - 2.0) < 0.01);
  }
  SUBCASE("F(2,6) mean over 1e7") {
    NormalStream s({43, 0});
    constexpr int n = 10'000'000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += f_ratio(s, 2, 6);
    CHECK(std::abs(sum / n - 1.5) < 0.006);
  }
  SUBCASE("F(2,2U) mean within 4 standard errors") {
    for (int u : {3, 10, 25}) {
      const double nu2 = 2.0 * u;
      const double mean = nu2 / (nu2 - 2.0);
      // Var F(2, nu2) = 2 nu2^2 nu2 / (2 (nu2-2)^2 (nu2-4)), finite for nu2 > 4.
      const double var = 2.0 * nu2 * nu2 * nu2 / (2.0 * (nu2 - 2.0) * (nu2 - 2.0) * (nu2 - 4.0));
      NormalStream s({47, static_cast<std::uint64_t>(u)});
      constexpr int n = 1'000'000;
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += f_ratio(s, 2, 2 * u);
      INFO("U = " << u);
      CHECK(std::abs(sum / n - mean) < 4.0 * std::sqrt(var / n));
    }
  }
  CHECK_THROWS_AS(f_ratio(ones, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(f_ratio_draw(kKey, 2, 0), std::invalid_argument);
}
