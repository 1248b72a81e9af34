#pragma once

// Counter-based random streams for the Monte Carlo engine.
//
// Every normal draw is addressable by (master_seed, chunk_index, offset), so a
// run partitioned across any number of workers consumes exactly the same
// variates as a single-threaded run.

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace semlim {

/// Draws per substream chunk. A stream that runs past the end of its chunk
/// continues at offset 0 of chunk_index + 1.
inline constexpr std::uint64_t kChunkLength = 65536;

struct StreamKey {
  std::uint64_t master_seed = 0;
  std::uint64_t chunk_index = 0;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

/// StreamKey for the chunk holding global draw position `position`.
constexpr StreamKey key_for_position(std::uint64_t master_seed, std::uint64_t position) {
  return {master_seed, position / kChunkLength};
}

struct ComplexSample {
  double re = 0.0;
  double im = 0.0;

  [[nodiscard]] constexpr double norm() const { return re * re + im * im; }
};

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Inverse standard-normal CDF for p in (0, 1) (rational approximation,
/// relative error below 1.2e-9).
double normal_quantile(double p);

/// Bijective 64-bit mixer, used to derive independent master seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

template <typename S>
concept NormalSource = requires(S& s) {
  { s.next() } -> std::convertible_to<double>;
};

/// Sequential reader of standard normals from a substream.
class NormalStream {
 public:
  explicit NormalStream(StreamKey key, std::uint64_t offset = 0);

  /// Stream positioned at global draw index `position` of `master_seed`.
  static NormalStream at_position(std::uint64_t master_seed, std::uint64_t position) {
    return NormalStream(key_for_position(master_seed, position), position % kChunkLength);
  }

  double next() {
    if (!valid_) refill();
    const double value = block_[offset_ & 1U];
    ++offset_;
    if ((offset_ & 1U) == 0) valid_ = false;
    if (offset_ == kChunkLength) {
      offset_ = 0;
      ++chunk_index_;
    }
    return value;
  }

  [[nodiscard]] StreamKey key() const { return {master_seed_, chunk_index_}; }
  [[nodiscard]] std::uint64_t offset() const { return offset_; }

 private:
  void refill();

  std::uint64_t master_seed_;
  std::uint64_t chunk_index_;
  std::uint64_t offset_;
  bool valid_ = false;
  std::array<double, 2> block_{};
};

/// Complex Gaussian CN(0,1): independent N(0, 1/2) real and imaginary parts.
template <NormalSource S>
ComplexSample next_complex_unit(S& source) {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  const double re = source.next() * kInvSqrt2;
  const double im = source.next() * kInvSqrt2;
  return {re, im};
}

/// Sum of `nu` squared standard normals.
template <NormalSource S>
double chi_squared(S& source, int nu) {
  if (nu < 1) throw std::invalid_argument("chi-squared degrees of freedom must be >= 1");
  double sum = 0.0;
  for (int i = 0; i < nu; ++i) {
    const double z = source.next();
    sum += z * z;
  }
  return sum;
}

/// (chi2_nu1 / nu1) / (chi2_nu2 / nu2). A zero denominator is redrawn from the
/// following stream positions.
template <NormalSource S>
double f_ratio(S& source, int nu1, int nu2) {
  if (nu1 < 1 || nu2 < 1) throw std::invalid_argument("F degrees of freedom must be >= 1");
  const double numerator = chi_squared(source, nu1) / nu1;
  double denominator = 0.0;
  while (denominator == 0.0) denominator = chi_squared(source, nu2) / nu2;
  return numerator / denominator;
}

std::vector<double> standard_normal_stream(StreamKey key, std::size_t count);
std::vector<ComplexSample> complex_gaussian_unit_stream(StreamKey key, std::size_t count);

/// One chi-squared draw from the start of the substream `key`.
double chi_squared_draw(StreamKey key, int nu);

/// One F-ratio draw from the start of the substream `key`.
double f_ratio_draw(StreamKey key, int nu1, int nu2);

}  // namespace semlim
