#include <doctest.h>

#include <cmath>

#include "volswap/errors.hpp"
#include "volswap/mc_engine.hpp"
#include "volswap/series_pricer.hpp"

using namespace volswap;
using namespace volswap::mc;

namespace {

using volswap::rng::PathStream;
const MarketState kState{0.5, 0.25, 0.03};
const SwapContract kContract(0.0, 1.0, 0.2);

McConfig small(unsigned threads) {
  McConfig c;
  c.n_paths = 4000;
  c.n_steps = 100;
  c.seed = 11;
  c.threads = threads;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  McConfig c;
  c.n_paths = 1;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = McConfig{};
  c.n_steps = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("results do not depend on the worker count") {
  const McEstimate one = kappa_mc(kState, SabrParams(0.4), kContract, small(1));
  for (unsigned w : {2u, 3u, 4u, 16u}) {
    const McEstimate e = kappa_mc(kState, SabrParams(0.4), kContract, small(w));
    CHECK(e.mean == one.mean);
    CHECK(e.std_error == one.std_error);
  }
}

TEST_CASE("antithetic pairs") {
  McConfig c = small(1);
  c.antithetic = true;
  c.n_paths = 4001;
  const McEstimate e = kappa_mc(kState, SabrParams(0.4), kContract, c);
  CHECK(e.n_paths == 4000);
  CHECK(e.n_draws == 2000);
  CHECK(std::abs(e.mean - series::kappa_series(kState, SabrParams(0.4), kContract).kappa) <
        4.0 * e.std_error);
}

TEST_CASE("agrees with the series") {
  McConfig c = small(0);
  c.n_paths = 40000;
  c.n_steps = 200;
  const McEstimate e = kappa_mc(kState, SabrParams(0.4), kContract, c);
  const double k = series::kappa_series(kState, SabrParams(0.4), kContract).kappa;
  CHECK(std::abs(e.mean - k) < 4.0 * e.std_error);
}

TEST_CASE("deterministic limit") {
  const McEstimate e = kappa_mc(kState, SabrParams(1e-12), kContract, small(1));
  CHECK(e.mean == doctest::Approx(std::sqrt(0.03 + 0.0625 * 0.5)).epsilon(1e-12));
  CHECK(e.std_error < 1e-12);
}

TEST_CASE("at maturity") {
  const McEstimate e = kappa_mc({1.0, 0.25, 0.04}, SabrParams(0.4), kContract, small(1));
  CHECK(e.mean == 0.2);
  CHECK(e.std_error == 0.0);
}

TEST_CASE("variance swap expectation") {
  const SabrParams p(0.6);
  const double exact = variance_swap_expectation(kState, p, kContract);
  CHECK(exact == doctest::Approx(0.03 + 0.0625 * std::expm1(0.18) / 0.36).epsilon(1e-15));
  CHECK(variance_swap_expectation(kState, SabrParams(1e-9), kContract) ==
        doctest::Approx(0.03 + 0.0625 * 0.5).epsilon(1e-15));
  McConfig c = small(0);
  c.n_paths = 20000;
  const McEstimate e = variance_swap_mc(kState, p, kContract, c);
  CHECK(std::abs(e.mean - exact) < 4.0 * e.std_error);
}

TEST_CASE("vol path") {
  PathStream s(3, 0);
  const auto path = simulate_vol_path(SabrParams(0.4), 0.25, 1.0, 10, s);
  REQUIRE(path.size() == 11);
  CHECK(path[0] == 0.25);
  for (double v : path) CHECK(v > 0.0);
}
