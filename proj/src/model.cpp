#include "volswap/model.hpp"

#include <cmath>

#include "volswap/errors.hpp"

namespace volswap {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::convergent_like: return "convergent_like";
    case Regime::asymptotic_truncated: return "asymptotic_truncated";
    case Regime::diverging: return "diverging";
  }
  return "unknown";
}

std::string_view to_string(Summation s) {
  switch (s) {
    case Summation::direct: return "direct";
    case Summation::gaussian_transform: return "gaussian_transform";
  }
  return "unknown";
}

SabrParams::SabrParams(double alpha, double rho, double beta)
    : alpha_(alpha), rho_(rho), beta_(beta) {
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw DomainError("SabrParams: alpha must be finite and > 0");
  }
  if (!(rho >= -1.0 && rho <= 1.0)) throw DomainError("SabrParams: rho must lie in [-1, 1]");
  if (beta != 1.0) throw DomainError("SabrParams: only beta = 1 is supported");
}

SwapContract::SwapContract(double t0, double tenor, double strike, double notional)
    : t0_(t0), tenor_(tenor), strike_(strike), notional_(notional) {
  if (!std::isfinite(t0)) throw DomainError("SwapContract: t0 must be finite");
  if (!(std::isfinite(tenor) && tenor > 0.0)) {
    throw DomainError("SwapContract: tenor must be finite and > 0");
  }
  if (!(std::isfinite(strike) && strike >= 0.0)) {
    throw DomainError("SwapContract: strike must be finite and >= 0");
  }
  if (!std::isfinite(notional)) throw DomainError("SwapContract: notional must be finite");
}

DiscountCurve DiscountCurve::flat(double rate) {
  if (!std::isfinite(rate)) throw DomainError("DiscountCurve: rate must be finite");
  return DiscountCurve(Mode::flat_rate, rate, 1.0);
}

DiscountCurve DiscountCurve::explicit_factor(double factor) {
  if (!(factor > 0.0 && factor <= 1.0)) {
    throw DomainError("DiscountCurve: explicit factor must lie in (0, 1]");
  }
  return DiscountCurve(Mode::explicit_factor, 0.0, factor);
}

double discount_factor(const DiscountCurve& curve, double t, const SwapContract& contract) {
  if (!(t <= contract.maturity())) {
    throw DomainError("discount_factor: valuation time is beyond maturity");
  }
  if (curve.mode() == DiscountCurve::Mode::explicit_factor) return curve.factor();
  return std::exp(-curve.rate() * (contract.maturity() - t));
}

std::string_view to_string(StateViolation v) {
  switch (v) {
    case StateViolation::non_finite: return "NON_FINITE";
    case StateViolation::before_accrual_start: return "BEFORE_ACCRUAL_START";
    case StateViolation::after_maturity: return "AFTER_MATURITY";
    case StateViolation::non_positive_sigma: return "NON_POSITIVE_SIGMA";
    case StateViolation::negative_nu: return "NEGATIVE_NU";
    case StateViolation::nu_zero_series_singular: return "NU_ZERO_SERIES_SINGULAR";
  }
  return "UNKNOWN";
}

std::vector<StateViolation> validate_state(const MarketState& state, const SabrParams& /*params*/,
                                           const SwapContract& contract) {
  std::vector<StateViolation> out;
  if (!(std::isfinite(state.t) && std::isfinite(state.sigma) && std::isfinite(state.nu))) {
    out.push_back(StateViolation::non_finite);
    return out;
  }
  if (state.t < contract.t0()) out.push_back(StateViolation::before_accrual_start);
  if (state.t > contract.maturity()) out.push_back(StateViolation::after_maturity);
  if (state.sigma <= 0.0) out.push_back(StateViolation::non_positive_sigma);
  if (state.nu < 0.0) out.push_back(StateViolation::negative_nu);
  if (state.nu == 0.0) out.push_back(StateViolation::nu_zero_series_singular);
  return out;
}

}  // namespace volswap
