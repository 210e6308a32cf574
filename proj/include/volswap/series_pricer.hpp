#pragma once

// Closed-form series for the expected annualized realized volatility
//
//   kappa_t = sqrt(nu_t)/T * sum_{n>=0} b_n exp(E_n tau) zeta^n 1F1(n-1/2; 2n+1/2; zeta)
//
// with b_n = (-1)^(n+1) Gamma(n-1/2)^2 / (2 sqrt(pi) n! Gamma(2n-1/2)),
// E_n = alpha^2 n (2n-1), tau = t0 + T - t and zeta = sigma^2 / (2 alpha^2 nu_t).
//
// For tau > 0 the terms eventually grow like exp(2 alpha^2 tau n^2), so the
// sum is asymptotic in n. The adaptive mode sums it directly, classifies the
// behaviour and, when the direct sum cannot reach the tolerance, returns the
// Gaussian-transform summation of the same series instead (see
// kappa_gaussian_transform).

#include <cstddef>
#include <vector>

#include "volswap/diagnostics.hpp"
#include "volswap/exact.hpp"
#include "volswap/model.hpp"

namespace volswap::series {

enum class SeriesMode { adaptive_asymptotic, fixed_n };

struct SeriesConfig {
  std::size_t max_terms = 64;
  double rel_tol = 1e-10;
  SeriesMode mode = SeriesMode::adaptive_asymptotic;
  /// In adaptive mode, fall back to the Gaussian-transform summation when the
  /// direct sum does not converge.
  bool resummation = true;

  void validate() const;
};

struct SeriesVariables {
  double tau = 0.0;
  double zeta = 0.0;
  double z = 0.0;
};

/// b_n as an exact rational (the sqrt(pi) factors cancel).
ExactRational coeff_b_exact(std::size_t n);
double coeff_b(std::size_t n);

/// a_n = (-1)^n (2n - 1/2) Gamma(n - 1/2) / n!, the weights of the Bessel
/// expansion of y^(-1/2); returned as a_n / sqrt(pi), exact.
ExactRational coeff_a_over_sqrt_pi(std::size_t n);
double coeff_a(std::size_t n);

/// E_n = alpha^2 n (2n - 1).
double energy_e(std::size_t n, double alpha);

/// Throws SingularityError when nu = 0.
SeriesVariables series_variables(const MarketState& state, const SabrParams& params,
                                 const SwapContract& contract);

/// n-th term b_n exp(E_n tau) zeta^n 1F1(n-1/2; 2n+1/2; zeta) of the
/// normalized series (kappa T / sqrt(nu)). `alpha2_tau` is alpha^2 * tau.
double series_term(std::size_t n, double zeta, double alpha2_tau);

struct NormalizedSum {
  double value = 0.0;  // kappa * T / sqrt(nu)
  SeriesDiagnostics diagnostics;
  std::vector<double> terms;
};

/// Sums the normalized series directly (no resummation) under `config`.
/// Diagnostics' error_estimate is relative to the normalized value.
NormalizedSum sum_normalized_series(double zeta, double alpha2_tau, const SeriesConfig& config);

struct TransformResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Gaussian-transform summation of the normalized series:
///   exp(-s^2/8) E_G[ exp(-s G/2) S(zeta exp(2 s G), zeta) ],  s = alpha sqrt(tau),
/// where S(w, zeta) = sum_n b_n w^n 1F1(n-1/2; 2n+1/2; zeta) is entire in w.
/// Writing exp(E_n tau) as a Gaussian expectation is exact term by term.
TransformResult kappa_gaussian_transform(double zeta, double alpha2_tau);

/// S(w, zeta) evaluated through its integral representation.
double transform_kernel(double w, double zeta);

struct KappaSeries {
  double kappa = 0.0;
  SeriesDiagnostics diagnostics;
};

KappaSeries kappa_series(const MarketState& state, const SabrParams& params,
                         const SwapContract& contract, const SeriesConfig& config = {});

/// notional * df * (kappa - strike).
PricingResult fair_value(double kappa, const SwapContract& contract, double df,
                         const SeriesDiagnostics& diagnostics = {});

/// J0 through the imaginary error function:
///   -(sqrt(pi)/2) { sqrt(pi) erfi(sqrt(z)/2) + (2/sqrt(z)) (1 - e^{z/4}) }.
double j0_closed_form(double z);

/// J0 through Kummer's function: (sqrt(pi)/2) (z/4)^(-1/2) (1F1(-1/2; 1/2; z/4) - 1).
double j0_hypergeometric_form(double z);

struct JInfinity {
  double value = 0.0;
  bool diverging = false;
};

/// Partial sum over n = 1..n_max of the J_infinity series.
JInfinity j_infinity(double z, double tau, double alpha, std::size_t n_max);

/// Truncated solution of the backward equation for psi:
///   psi(tau, y) = sum_n a_n (y/2)^(1/2) I_{2n-1/2}(y) exp(E_n tau),
/// summed up to its smallest term. diagnostics.error_estimate is the first
/// omitted term.
struct PsiSeries {
  double value = 0.0;
  SeriesDiagnostics diagnostics;
};
PsiSeries psi_series(double y, double tau, double alpha, std::size_t max_terms = 200);

}  // namespace volswap::series
