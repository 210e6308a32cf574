#include <doctest.h>

#include "volswap/errors.hpp"
#include "volswap/verify.hpp"

using namespace volswap;
using namespace volswap::verify;

TEST_CASE("terminal identity vanishes exactly") {
  for (std::size_t s = 1; s <= 40; ++s) {
    CAPTURE(s);
    CHECK(check_terminal_identity(s) == 0);
  }
  CHECK(terminal_identity_sum(0) != 0);
  CHECK(terminal_leading_coefficient() == 1);
}

TEST_CASE("Bessel expansion of y^(-1/2)") {
  for (double y : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    CAPTURE(y);
    CHECK(check_bessel_sqrt_expansion(y, 60).pass);
  }
  CHECK_FALSE(check_bessel_sqrt_expansion(1.0, 1).pass);
}

TEST_CASE("psi PDE residual") {
  CHECK(check_psi_pde_residual(0.25, 1.0, 0.3, 20).pass);
  CHECK_THROWS_AS(check_psi_pde_residual(1.0, 3.0, 0.3, 20), InconclusiveError);
}

TEST_CASE("functional residual") {
  const MarketState st{0.5, 0.25, 0.03};
  const FunctionalReport f = check_functional_residual(st, SabrParams(0.4), SwapContract(0.0, 1.0, 0.0), 10);
  REQUIRE(f.per_term.size() == 10);
  for (const auto& r : f.per_term) CHECK(r.pass);
  CHECK(f.fd_time.pass);
  CHECK(f.fd_sigma.pass);
}

TEST_CASE("Kummer ODE and J0") {
  CHECK(check_kummer_ode(-0.5, 0.5, 3.0).pass);
  CHECK(check_kummer_ode(4.5, 10.5, 60.0).pass);
  CHECK(check_j0_forms(0.01).pass);
  CHECK(check_j0_forms(50.0).pass);
}

TEST_CASE("suite") {
  const auto all = run_suite("kummer");
  CHECK(all.size() == 9);
  CHECK_THROWS_AS(run_suite("nope"), DomainError);
}
