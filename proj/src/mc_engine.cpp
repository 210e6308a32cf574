#include "volswap/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <thread>

#include "volswap/errors.hpp"

namespace volswap::mc {

namespace {

// Pairwise (tree) summation; the split points depend only on the length.
double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

void check_state(const MarketState& state, const SabrParams& params,
                 const SwapContract& contract) {
  for (StateViolation v : validate_state(state, params, contract)) {
    if (v == StateViolation::nu_zero_series_singular) continue;
    throw DomainError("mc: invalid state (" + std::string(to_string(v)) + ")");
  }
}

// Realized variance nu + trapezoid of sigma^2 over the remaining horizon, for
// the path driven by +xi (sign = 1) or -xi (sign = -1).
double realized_variance(double nu, double sigma, double alpha, double horizon,
                         std::size_t n_steps, rng::PathStream& stream, double sign,
                         std::vector<double>& normals) {
  const double dt = horizon / static_cast<double>(n_steps);
  const double vol = alpha * std::sqrt(dt);
  const double drift = -0.5 * alpha * alpha * dt;
  double s = sigma;
  double acc = 0.5 * s * s;
  for (std::size_t k = 0; k < n_steps; ++k) {
    if (sign > 0.0) normals[k] = stream.next_normal();
    s *= std::exp(vol * sign * normals[k] + drift);
    acc += (k + 1 == n_steps ? 0.5 : 1.0) * s * s;
  }
  return nu + dt * acc;
}

template <typename Payoff>
McEstimate run(const MarketState& state, const SabrParams& params, const SwapContract& contract,
               const McConfig& config, Payoff payoff) {
  config.validate();
  check_state(state, params, contract);
  const double tau = contract.maturity() - state.t;
  McEstimate est;
  est.n_paths = config.antithetic ? 2 * (config.n_paths / 2) : config.n_paths;
  est.n_draws = config.antithetic ? config.n_paths / 2 : config.n_paths;
  if (tau == 0.0) {
    est.mean = payoff(state.nu);
    return est;
  }

  std::vector<double> draws(est.n_draws);
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> normals(config.n_steps);
    for (std::size_t i = begin; i < end; ++i) {
      rng::PathStream stream(config.seed, i);
      const double rv = realized_variance(state.nu, state.sigma, params.alpha(), tau,
                                          config.n_steps, stream, 1.0, normals);
      if (config.antithetic) {
        const double rv_anti = realized_variance(state.nu, state.sigma, params.alpha(), tau,
                                                 config.n_steps, stream, -1.0, normals);
        draws[i] = 0.5 * (payoff(rv) + payoff(rv_anti));
      } else {
        draws[i] = payoff(rv);
      }
    }
  };

  const auto workers = static_cast<unsigned>(
      std::min<std::size_t>(resolve_threads(config.threads), est.n_draws));
  if (workers == 1) {
    work(0, est.n_draws);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (est.n_draws + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(est.n_draws, w * chunk);
      const std::size_t end = std::min(est.n_draws, begin + chunk);
      pool.emplace_back(work, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  const double n = static_cast<double>(est.n_draws);
  est.mean = pairwise_sum(draws) / n;
  for (double& d : draws) d = (d - est.mean) * (d - est.mean);
  const double var = pairwise_sum(draws) / (n - 1.0);
  est.std_error = std::sqrt(var / n);
  return est;
}

}  // namespace

void McConfig::validate() const {
  if (n_paths < 2) throw DomainError("McConfig: n_paths must be >= 2");
  if (antithetic && n_paths < 4) throw DomainError("McConfig: antithetic runs need n_paths >= 4");
  if (n_steps < 1) throw DomainError("McConfig: n_steps must be >= 1");
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> simulate_vol_path(const SabrParams& params, double sigma_start,
                                      double horizon, std::size_t n_steps,
                                      rng::PathStream& stream) {
  if (!(sigma_start > 0.0)) throw DomainError("simulate_vol_path: sigma_start must be > 0");
  if (!(horizon >= 0.0)) throw DomainError("simulate_vol_path: horizon must be >= 0");
  if (n_steps < 1) throw DomainError("simulate_vol_path: n_steps must be >= 1");
  const double alpha = params.alpha();
  const double dt = horizon / static_cast<double>(n_steps);
  const double vol = alpha * std::sqrt(dt);
  const double drift = -0.5 * alpha * alpha * dt;
  std::vector<double> path(n_steps + 1);
  path[0] = sigma_start;
  for (std::size_t k = 0; k < n_steps; ++k) {
    path[k + 1] = path[k] * std::exp(vol * stream.next_normal() + drift);
  }
  return path;
}

McEstimate kappa_mc(const MarketState& state, const SabrParams& params,
                    const SwapContract& contract, const McConfig& config) {
  const double T = contract.tenor();
  return run(state, params, contract, config, [T](double rv) { return std::sqrt(rv) / T; });
}

double variance_swap_expectation(const MarketState& state, const SabrParams& params,
                                 const SwapContract& contract) {
  check_state(state, params, contract);
  const double tau = contract.maturity() - state.t;
  const double a2 = params.alpha() * params.alpha();
  const double x = a2 * tau;
  const double s2 = state.sigma * state.sigma;
  if (x < 1e-8) return state.nu + s2 * tau * (1.0 + x / 2.0 + x * x / 6.0);
  return state.nu + s2 * std::expm1(x) / a2;
}

McEstimate variance_swap_mc(const MarketState& state, const SabrParams& params,
                            const SwapContract& contract, const McConfig& config) {
  return run(state, params, contract, config, [](double rv) { return rv; });
}

}  // namespace volswap::mc
