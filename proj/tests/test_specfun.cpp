#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <cmath>
#include <numbers>

#include "volswap/errors.hpp"
#include "volswap/specfun.hpp"

using namespace volswap;
using namespace volswap::specfun;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("kummer_1f1 against boost") {
  const double cases[][3] = {{-0.5, 0.5, 0.3}, {-0.5, 0.5, 12.0}, {0.5, 2.5, 3.0},   {1.5, 4.5, 7.5},
                             {4.5, 10.5, 20.0}, {9.5, 20.5, 35.0}, {2.5, 6.5, 0.01}, {-0.5, 0.5, 39.9}};
  for (const auto& c : cases) {
    CAPTURE(c[0]);
    CAPTURE(c[2]);
    const auto r = kummer_1f1(c[0], c[1], c[2]);
    CHECK(r.converged);
    CHECK(rel(r.value, boost::math::hypergeometric_1F1(c[0], c[1], c[2])) < 1e-13);
  }
}

TEST_CASE("kummer_1f1 asymptotic branch") {
  for (double z : {41.0, 60.0, 100.0, 300.0}) {
    CAPTURE(z);
    CHECK(rel(kummer_1f1(-0.5, 0.5, z).value, boost::math::hypergeometric_1F1(-0.5, 0.5, z)) < 1e-12);
    CHECK(rel(kummer_1f1(3.5, 8.5, z).value, boost::math::hypergeometric_1F1(3.5, 8.5, z)) < 1e-11);
  }
}

TEST_CASE("kummer_1f1 trivial values") {
  CHECK(kummer_1f1(1.5, 2.5, 0.0).value == 1.0);
  CHECK(rel(kummer_1f1(1.0, 1.0, 2.0).value, std::exp(2.0)) < 1e-15);
  CHECK_THROWS_AS(kummer_1f1(0.5, 1.5, -1.0), DomainError);
}

TEST_CASE("erfi against its Kummer form") {
  for (double x : {1e-8, 0.1, 0.5, 1.0, 2.0, 3.5, 5.0}) {
    CAPTURE(x);
    const double ref =
        2.0 * x / std::sqrt(std::numbers::pi) * boost::math::hypergeometric_1F1(0.5, 1.5, x * x);
    CHECK(rel(erfi(x), ref) < 1e-13);
  }
  CHECK(erfi(0.0) == 0.0);
  CHECK(erfi(-1.3) == doctest::Approx(-erfi(1.3)).epsilon(1e-15));
}

TEST_CASE("bessel_i against boost") {
  for (double order : {-2.5, -0.5, 1.5, 3.5, 7.5, 19.5}) {
    for (double y : {0.01, 0.5, 1.0, 3.0, 10.0, 25.0}) {
      CAPTURE(order);
      CAPTURE(y);
      CHECK(rel(bessel_i(order, y).value, boost::math::cyl_bessel_i(order, y)) < 1e-13);
    }
  }
}

TEST_CASE("bessel_i_scaled") {
  for (double order : {0.0, 1.0, 2.5}) {
    for (double y : {0.1, 2.0, 30.0, 200.0}) {
      CAPTURE(order);
      CAPTURE(y);
      CHECK(rel(bessel_i_scaled(order, y), std::exp(-y) * boost::math::cyl_bessel_i(order, y)) < 1e-12);
    }
  }
  CHECK(std::isfinite(bessel_i_scaled(0.0, 5000.0)));
}

TEST_CASE("half-integer gamma is exact") {
  CHECK(gamma_half_integer_over_sqrt_pi(1) == 1);
  CHECK(gamma_half_integer_over_sqrt_pi(-1) == -2);
  CHECK(gamma_half_integer_over_sqrt_pi(5) == ExactRational(3, 4));
  CHECK(gamma_half_integer_over_sqrt_pi(-3) == ExactRational(4, 3));
  CHECK(gamma_half_integer(7).to_double() == doctest::Approx(std::tgamma(3.5)).epsilon(1e-15));
  CHECK_THROWS_AS(gamma_half_integer(4), DomainError);
}

TEST_CASE("log_gamma and sign") {
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-15));
  CHECK(gamma_sign(-0.5) == -1);
  CHECK(gamma_sign(-1.5) == 1);
  CHECK(reciprocal_gamma(-2.0) == 0.0);
  CHECK(reciprocal_gamma(4.0) == doctest::Approx(1.0 / 6.0));
}
