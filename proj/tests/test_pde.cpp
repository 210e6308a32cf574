#include <doctest.h>

#include <cmath>

#include "volswap/errors.hpp"
#include "volswap/pde_engine.hpp"
#include "volswap/series_pricer.hpp"

using namespace volswap;
using namespace volswap::pde;

TEST_CASE("grid validation") {
  GridSpec g;
  g.n_y = 2;
  CHECK_THROWS_AS(g.validate(), DomainError);
  g = GridSpec{};
  g.boundary_tol = 0.0;
  CHECK_THROWS_AS(g.validate(), DomainError);
}

TEST_CASE("psi surface stays in [0, 1] and matches the Bessel series") {
  const PsiSolution sol = solve_psi(0.3, 1.0, GridSpec{});
  CHECK(sol.boundary_ok());
  for (std::size_t j = 0; j <= sol.n_y(); ++j) {
    const double p = sol.psi(sol.n_t(), j);
    CHECK(p >= -1e-12);
    CHECK(p <= 1.0 + 1e-12);
  }
  CHECK(sol.q_at(0.0) == doctest::Approx(std::expm1(0.09) / 2.0).epsilon(1e-15));
  for (double y : {0.2, 0.5, 1.0, 2.0}) {
    CAPTURE(y);
    const auto s = series::psi_series(y, 1.0, 0.3);
    REQUIRE(s.diagnostics.regime != Regime::diverging);
    CHECK(sol.psi_at(y) == doctest::Approx(s.value).epsilon(1e-5));
  }
}

TEST_CASE("kappa by quadrature against the series") {
  const MarketState st{0.5, 0.25, 0.03};
  const SabrParams p(0.4);
  const SwapContract c(0.0, 1.0, 0.2);
  const QuadratureResult q = kappa_quadrature(st, p, c);
  CHECK(q.tail_bound <= 1e-8);
  CHECK(q.warnings.empty());
  CHECK(q.kappa == doctest::Approx(series::kappa_series(st, p, c).kappa).epsilon(1e-5));
}

TEST_CASE("deterministic limit") {
  const MarketState st{0.5, 0.25, 0.03};
  const QuadratureResult q = kappa_quadrature(st, SabrParams(1e-12), SwapContract(0.0, 1.0, 0.0));
  CHECK(q.kappa == doctest::Approx(std::sqrt(0.03 + 0.0625 * 0.5)).epsilon(1e-4));
}

TEST_CASE("at maturity the quadrature returns sqrt(nu)/T") {
  const QuadratureResult q =
      kappa_quadrature({2.0, 0.3, 0.09}, SabrParams(0.5), SwapContract(0.0, 2.0, 0.0));
  CHECK(q.kappa == doctest::Approx(0.15).epsilon(1e-15));
}

TEST_CASE("second-order refinement") {
  GridSpec g;
  g.n_y = 100;
  g.n_t = 100;
  const RefinementReport r =
      refine_kappa({0.5, 0.25, 0.03}, SabrParams(0.4), SwapContract(0.0, 1.0, 0.0), g, 2);
  REQUIRE(r.kappa.size() == 3);
  REQUIRE(r.ratios.size() == 1);
  CHECK(r.ratios[0] > 3.5);
  CHECK(r.ratios[0] < 4.5);
  CHECK(r.n_y[2] == 400);
}

TEST_CASE("tail bound is enforced") {
  CHECK_THROWS_AS(kappa_quadrature({0.5, 0.25, 0.03}, SabrParams(0.4), SwapContract(0.0, 1.0, 0.0),
                                   GridSpec{}, 1e-300),
                  AccuracyError);
}
