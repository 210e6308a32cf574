#pragma once

// Counter-based random numbers: every (key, counter) pair gives an
// independent block, so path i draws the same numbers whichever thread runs it.

#include <array>
#include <cstdint>

namespace volswap::rng {

/// Philox4x32-10 (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Uniform on (0, 1) from the top 52 bits; never returns 0 or 1.
double uniform_from_bits(std::uint64_t bits);

/// Inverse of the standard normal CDF (Wichura AS241, ~1e-16 relative).
double inverse_normal_cdf(double p);

/// Stream of standard normals for one path: key = seed, counter = (path, block).
class PathStream {
 public:
  PathStream(std::uint64_t seed, std::uint64_t path);

  double next_uniform();
  double next_normal() { return inverse_normal_cdf(next_uniform()); }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t path_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;  // 32-bit words consumed from buffer_, two per uniform
};

}  // namespace volswap::rng
