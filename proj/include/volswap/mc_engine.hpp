#pragma once

// Monte Carlo oracle for kappa and for the variance-swap expectation.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "volswap/model.hpp"
#include "volswap/rng.hpp"

namespace volswap::mc {

struct McConfig {
  std::size_t n_paths = 100000;
  std::size_t n_steps = 500;
  std::uint64_t seed = 0;
  bool antithetic = false;
  /// Worker threads; 0 uses std::thread::hardware_concurrency(). Results do
  /// not depend on this.
  unsigned threads = 0;

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  /// Paths simulated.
  std::size_t n_paths = 0;
  /// Independent draws behind std_error (n_paths / 2 with antithetic pairs).
  std::size_t n_draws = 0;
};

/// sigma at n_steps + 1 equidistant times on [0, horizon], using exact
/// lognormal increments sigma_{k+1} = sigma_k exp(alpha sqrt(dt) xi - alpha^2 dt / 2).
std::vector<double> simulate_vol_path(const SabrParams& params, double sigma_start,
                                      double horizon, std::size_t n_steps,
                                      rng::PathStream& stream);

/// E[ sqrt(nu_t + int_t^{t0+T} sigma^2 ds) / T ], trapezoidal rule in time.
McEstimate kappa_mc(const MarketState& state, const SabrParams& params,
                    const SwapContract& contract, const McConfig& config);

/// nu_t + sigma_t^2 (e^{alpha^2 tau} - 1) / alpha^2.
double variance_swap_expectation(const MarketState& state, const SabrParams& params,
                                 const SwapContract& contract);

/// Monte Carlo estimate of the same expectation.
McEstimate variance_swap_mc(const MarketState& state, const SabrParams& params,
                            const SwapContract& contract, const McConfig& config);

/// Worker count actually used for `requested` (0 = hardware concurrency).
unsigned resolve_threads(unsigned requested);

}  // namespace volswap::mc
