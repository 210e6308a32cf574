#include <doctest.h>

#include <boost/math/distributions/normal.hpp>

#include <cmath>

#include "volswap/rng.hpp"

using namespace volswap::rng;

TEST_CASE("philox4x32-10 known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("uniforms avoid the endpoints") {
  CHECK(uniform_from_bits(0) > 0.0);
  CHECK(uniform_from_bits(~std::uint64_t{0}) < 1.0);
}

TEST_CASE("inverse normal against boost") {
  const boost::math::normal n;
  for (double p : {1e-300, 1e-20, 1e-6, 0.01, 0.07, 0.3, 0.5, 0.75, 0.925, 0.99, 1.0 - 1e-12}) {
    CAPTURE(p);
    const double ref = boost::math::quantile(n, p);
    CHECK(inverse_normal_cdf(p) == doctest::Approx(ref).epsilon(1e-14));
  }
  CHECK(inverse_normal_cdf(0.5) == 0.0);
}

TEST_CASE("path streams are reproducible and distinct") {
  PathStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  for (int i = 0; i < 10; ++i) {
    const double x = a.next_normal();
    CHECK(x == b.next_normal());
    CHECK(x != c.next_normal());
    CHECK(x != d.next_normal());
  }
}

TEST_CASE("normal moments") {
  PathStream s(1, 0);
  const int n = 200000;
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = s.next_normal();
    m1 += x;
    m2 += x * x;
  }
  CHECK(std::abs(m1 / n) < 5.0 / std::sqrt(n));
  CHECK(std::abs(m2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
}
