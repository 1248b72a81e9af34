#include "semlim/sampling.hpp"

#include <cmath>

namespace semlim {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53U;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57U;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9U;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85U;

// 53 high bits mapped to the open interval (0, 1).
inline double to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

double normal_quantile(double p) {
  // Acklam's rational approximation.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  constexpr double kHigh = 1.0 - kLow;

  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > kHigh) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

NormalStream::NormalStream(StreamKey key, std::uint64_t offset)
    : master_seed_(key.master_seed), chunk_index_(key.chunk_index), offset_(offset) {
  if (offset >= kChunkLength) throw std::out_of_range("stream offset beyond chunk length");
}

void NormalStream::refill() {
  const std::uint64_t block = offset_ / 2;
  const std::array<std::uint32_t, 4> counter = {
      static_cast<std::uint32_t>(block), 0U, static_cast<std::uint32_t>(chunk_index_),
      static_cast<std::uint32_t>(chunk_index_ >> 32)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(master_seed_),
                                            static_cast<std::uint32_t>(master_seed_ >> 32)};
  const auto out = philox4x32(counter, key);
  const std::uint64_t u0 = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  const std::uint64_t u1 = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
  block_[0] = normal_quantile(to_open_unit(u0));
  block_[1] = normal_quantile(to_open_unit(u1));
  valid_ = true;
}

std::vector<double> standard_normal_stream(StreamKey key, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  NormalStream stream(key);
  for (std::size_t i = 0; i < count; ++i) out.push_back(stream.next());
  return out;
}

std::vector<ComplexSample> complex_gaussian_unit_stream(StreamKey key, std::size_t count) {
  std::vector<ComplexSample> out;
  out.reserve(count);
  NormalStream stream(key);
  for (std::size_t i = 0; i < count; ++i) out.push_back(next_complex_unit(stream));
  return out;
}

double chi_squared_draw(StreamKey key, int nu) {
  NormalStream stream(key);
  return chi_squared(stream, nu);
}

double f_ratio_draw(StreamKey key, int nu1, int nu2) {
  NormalStream stream(key);
  return f_ratio(stream, nu1, nu2);
}

}  // namespace semlim
