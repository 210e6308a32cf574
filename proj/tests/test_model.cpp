#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "volswap/errors.hpp"
#include "volswap/model.hpp"

using namespace volswap;

namespace {

bool has(const std::vector<StateViolation>& v, StateViolation x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SabrParams(0.0), DomainError);
  CHECK_THROWS_AS(SabrParams(-0.1), DomainError);
  CHECK_THROWS_AS(SabrParams(0.3, 1.5), DomainError);
  CHECK_THROWS_AS(SabrParams(0.3, 0.0, 0.5), DomainError);
  CHECK_NOTHROW(SabrParams(1e-12));
  CHECK_THROWS_AS(SwapContract(0.0, 0.0, 0.2), DomainError);
  CHECK_THROWS_AS(SwapContract(0.0, 1.0, -0.1), DomainError);
  CHECK(SwapContract(0.5, 2.0, 0.2).maturity() == 2.5);
}

TEST_CASE("state violations") {
  const SabrParams p(0.4);
  const SwapContract c(0.0, 1.0, 0.2);
  CHECK(validate_state({0.5, 0.25, 0.03}, p, c).empty());
  CHECK(has(validate_state({-0.1, 0.25, 0.03}, p, c), StateViolation::before_accrual_start));
  CHECK(has(validate_state({1.1, 0.25, 0.03}, p, c), StateViolation::after_maturity));
  CHECK(has(validate_state({0.5, 0.0, 0.03}, p, c), StateViolation::non_positive_sigma));
  CHECK(has(validate_state({0.5, 0.25, -1e-9}, p, c), StateViolation::negative_nu));
  CHECK(has(validate_state({0.5, 0.25, 0.0}, p, c), StateViolation::nu_zero_series_singular));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK(has(validate_state({0.5, nan, 0.03}, p, c), StateViolation::non_finite));
  CHECK(to_string(StateViolation::after_maturity) == "AFTER_MATURITY");
}

TEST_CASE("discount factor") {
  const SwapContract c(0.0, 2.0, 0.2);
  CHECK(discount_factor(DiscountCurve::flat(0.05), 0.5, c) == doctest::Approx(std::exp(-0.075)));
  CHECK(discount_factor(DiscountCurve::flat(0.0), 0.5, c) == 1.0);
  CHECK(discount_factor(DiscountCurve::explicit_factor(0.9), 0.5, c) == 0.9);
  CHECK_THROWS_AS(DiscountCurve::explicit_factor(1.2), DomainError);
  CHECK_THROWS_AS(discount_factor(DiscountCurve::flat(0.01), 2.5, c), DomainError);
}
