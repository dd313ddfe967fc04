#pragma once

// Counter-based random numbers. Every variate is a pure function of
// (seed, path, step, slot), so any partition of paths across workers yields
// the same numbers.

#include <array>
#include <cstdint>

namespace bbmc {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit constexpr Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  constexpr Counter operator()(Counter ctr) const {
    Key k = key_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k[1], static_cast<std::uint32_t>(p0)};
      k[0] += kW0;
      k[1] += kW1;
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u;
  static constexpr std::uint32_t kW1 = 0xBB67AE85u;
  Key key_;
};

/// Maps 52 random bits to the open interval (0, 1). With 53 bits the
/// half-offset top value would round to 1.
inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 12;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

/// Standard normal quantile, Wichura's AS241 (PPND16); relative accuracy
/// about 1e-16 over (0, 1).
double normal_quantile(double p);

/// Uniform and normal variates addressed by (path, step, slot). Each Philox
/// block yields two uniforms, so slots 2j and 2j+1 share one block.
class VariateStream {
 public:
  explicit VariateStream(std::uint64_t seed) : gen_(seed) {}

  /// Two uniforms for slots 2*pair and 2*pair + 1.
  std::array<double, 2> uniform_pair(std::uint64_t path, std::uint32_t step,
                                     std::uint32_t pair) const {
    const auto r = gen_({static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32),
                         step, pair});
    return {to_open_unit(r[0], r[1]), to_open_unit(r[2], r[3])};
  }

  double uniform(std::uint64_t path, std::uint32_t step, std::uint32_t slot) const {
    return uniform_pair(path, step, slot / 2)[slot % 2];
  }

  double normal(std::uint64_t path, std::uint32_t step, std::uint32_t slot) const {
    return normal_quantile(uniform(path, step, slot));
  }

  /// Fills out[0..n) with independent standard normals for (path, step).
  void normals(std::uint64_t path, std::uint32_t step, double* out, std::size_t n) const {
    for (std::size_t j = 0; 2 * j < n; ++j) {
      const auto u = uniform_pair(path, step, static_cast<std::uint32_t>(j));
      out[2 * j] = normal_quantile(u[0]);
      if (2 * j + 1 < n) out[2 * j + 1] = normal_quantile(u[1]);
    }
  }

 private:
  Philox4x32 gen_;
};

}  // namespace bbmc
