#pragma once

// Contract, model and market value types.

#include <string>
#include <string_view>
#include <vector>

#include "volswap/diagnostics.hpp"

namespace volswap {

/// Lognormal SABR volatility dynamics d(sigma) = alpha * sigma dZ.
///
/// beta is pinned to 1 and rho is carried for completeness; neither enters
/// any volatility-swap computation.
class SabrParams {
 public:
  explicit SabrParams(double alpha, double rho = 0.0, double beta = 1.0);

  double alpha() const { return alpha_; }
  double rho() const { return rho_; }
  double beta() const { return beta_; }

 private:
  double alpha_;
  double rho_;
  double beta_;
};

/// Accrual window [t0, t0 + tenor], volatility strike and notional per
/// volatility point.
class SwapContract {
 public:
  SwapContract(double t0, double tenor, double strike, double notional = 1.0);

  double t0() const { return t0_; }
  double tenor() const { return tenor_; }
  double strike() const { return strike_; }
  double notional() const { return notional_; }
  double maturity() const { return t0_ + tenor_; }

 private:
  double t0_;
  double tenor_;
  double strike_;
  double notional_;
};

/// State at valuation time t: spot volatility and variance accrued since t0.
struct MarketState {
  double t = 0.0;
  double sigma = 0.0;
  double nu = 0.0;
};

class DiscountCurve {
 public:
  enum class Mode { flat_rate, explicit_factor };

  static DiscountCurve flat(double rate);
  static DiscountCurve explicit_factor(double factor);

  Mode mode() const { return mode_; }
  double rate() const { return rate_; }
  double factor() const { return factor_; }

 private:
  DiscountCurve(Mode mode, double rate, double factor)
      : mode_(mode), rate_(rate), factor_(factor) {}

  Mode mode_;
  double rate_;
  double factor_;
};

struct PricingResult {
  double kappa = 0.0;
  double discount_factor = 1.0;
  double fair_value = 0.0;
  SeriesDiagnostics diagnostics;
  std::vector<std::string> warnings;
};

/// Discount factor from t to the settlement date t0 + tenor.
double discount_factor(const DiscountCurve& curve, double t, const SwapContract& contract);

enum class StateViolation {
  non_finite,
  before_accrual_start,
  after_maturity,
  non_positive_sigma,
  negative_nu,
  nu_zero_series_singular,
};

std::string_view to_string(StateViolation v);

/// Every violated range or sign condition; empty means the state is usable by
/// all pricers. Path consistency of nu is not checked.
std::vector<StateViolation> validate_state(const MarketState& state, const SabrParams& params,
                                           const SwapContract& contract);

}  // namespace volswap
