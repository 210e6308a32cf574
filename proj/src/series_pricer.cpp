#include "volswap/series_pricer.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "volswap/errors.hpp"
#include "volswap/specfun.hpp"

namespace volswap::series {

namespace {

using specfun::gamma_half_integer_over_sqrt_pi;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kCoefficientCache = 256;
// Entries below this index are rounded from exact rationals; the rest follow
// from the term ratio in floating point (big-integer cost grows fast).
constexpr std::size_t kExactCoefficients = 64;

ExactRational factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return ExactRational(f);
}

const std::vector<double>& b_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kCoefficientCache);
    for (std::size_t n = 0; n < kExactCoefficients; ++n) t[n] = to_double(coeff_b_exact(n));
    for (std::size_t n = kExactCoefficients; n < t.size(); ++n) {
      const double m = static_cast<double>(n - 1);
      t[n] = -t[n - 1] * (m - 0.5) * (m - 0.5) / ((2.0 * m - 0.5) * (2.0 * m + 0.5) * (m + 1.0));
    }
    return t;
  }();
  return table;
}

const std::vector<double>& a_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kCoefficientCache);
    for (std::size_t n = 0; n < kExactCoefficients; ++n) {
      t[n] = to_double(coeff_a_over_sqrt_pi(n)) * std::sqrt(std::numbers::pi);
    }
    for (std::size_t n = kExactCoefficients; n < t.size(); ++n) {
      const double m = static_cast<double>(n - 1);
      t[n] = -t[n - 1] * (2.0 * m + 1.5) * (m - 0.5) / ((2.0 * m - 0.5) * (m + 1.0));
    }
    return t;
  }();
  return table;
}

struct Truncation {
  double value = 0.0;
  SeriesDiagnostics diagnostics;
  std::vector<double> terms;
};

// Sums term(0), term(1), ... and decides where to stop.
//
// Adaptive: stop once two consecutive terms are below rel_tol * |sum|. If that
// never happens, look at the smallest term seen; when later terms are larger
// (or overflow), truncate just before it and report it as the error.
// Fixed: sum exactly max_terms terms.
// Rounding in a sum whose terms are much larger than the result; past this
// the partial sums cannot deliver rel_tol however many terms are taken.
bool cancelled(double abs_sum, double value, double rel_tol) {
  return 4.0 * kEps * abs_sum > std::max(rel_tol, 1e-13) * std::abs(value);
}

double truncated_abs_of(const std::vector<double>& terms, std::size_t end) {
  double s = 0.0;
  for (std::size_t n = 0; n < end; ++n) s += std::abs(terms[n]);
  return s;
}

template <typename Term>
Truncation truncate_series(Term term, std::size_t max_terms, double rel_tol, bool adaptive) {
  Truncation out;
  auto& d = out.diagnostics;
  double sum = 0.0;
  double abs_sum = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
  std::size_t min_idx = 0;
  int small_in_a_row = 0;
  bool overflow = false;
  bool hit_tolerance = false;

  for (std::size_t n = 0; n < max_terms; ++n) {
    const double t = term(n);
    if (!std::isfinite(t)) {
      overflow = true;
      break;
    }
    out.terms.push_back(t);
    sum += t;
    abs_sum += std::abs(t);
    if (std::abs(t) < min_abs) {
      min_abs = std::abs(t);
      min_idx = n;
    }
    small_in_a_row = std::abs(t) <= rel_tol * std::abs(sum) ? small_in_a_row + 1 : 0;
    if (adaptive && small_in_a_row >= 2) {
      hit_tolerance = true;
      break;
    }
  }

  const std::size_t evaluated = out.terms.size();
  d.terms_used = evaluated;
  d.min_term_index = min_idx;
  d.min_term_abs = evaluated > 0 ? min_abs : 0.0;
  d.summation = Summation::direct;

  if (evaluated == 0) {
    d.regime = Regime::diverging;
    d.converged = false;
    d.error_estimate = std::numeric_limits<double>::infinity();
    return out;
  }

  const bool growing = overflow || min_idx + 1 < evaluated;
  if (hit_tolerance || !growing) {
    out.value = sum;
    d.error_estimate = std::abs(out.terms.back()) + 4.0 * kEps * abs_sum;
    if (cancelled(abs_sum, sum, rel_tol)) {
      d.regime = Regime::diverging;
      d.converged = false;
      return out;
    }
    d.regime = Regime::convergent_like;
    d.converged = hit_tolerance || std::abs(out.terms.back()) <= rel_tol * std::abs(sum);
    return out;
  }

  if (!adaptive) {
    // Fixed truncation keeps every term; the diagnostics still say where the
    // smallest one was.
    out.value = sum;
    d.error_estimate = std::abs(out.terms.back()) + 4.0 * kEps * abs_sum;
  } else {
    double truncated = 0.0;
    double truncated_abs = 0.0;
    for (std::size_t n = 0; n < min_idx; ++n) {
      truncated += out.terms[n];
      truncated_abs += std::abs(out.terms[n]);
    }
    out.value = truncated;
    d.error_estimate = min_abs + 4.0 * kEps * truncated_abs;
  }
  const double kept_abs = adaptive ? truncated_abs_of(out.terms, min_idx) : abs_sum;
  const bool small_enough = min_abs <= rel_tol * std::abs(out.value);
  d.regime = (small_enough && !overflow && !cancelled(kept_abs, out.value, rel_tol))
                 ? Regime::asymptotic_truncated
                 : Regime::diverging;
  d.converged = d.regime == Regime::asymptotic_truncated;
  return out;
}

// h(x) / x where h(x) = sum_{n>=1} (-1)^(n+1) (2n-1/2) Gamma(n-1/2) x^n / (2 sqrt(pi) n!^2)
//                     = (1/2) e^{-x/2} [ (x-1) I0(x/2) + x I1(x/2) ] + 1/2.
double h_over_x(double x) {
  if (x <= 2.0) {
    double c = 0.75;
    double power = 1.0;
    double sum = c;
    for (int n = 1; n < 60; ++n) {
      c *= -(2.0 * n + 1.5) * (n - 0.5) / ((2.0 * n - 0.5) * (n + 1.0) * (n + 1.0));
      power *= x;
      const double t = c * power;
      sum += t;
      if (std::abs(t) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  const double half = 0.5 * x;
  const double h = 0.5 * ((x - 1.0) * specfun::bessel_i_scaled(0.0, half) +
                          x * specfun::bessel_i_scaled(1.0, half)) +
                   0.5;
  return h / x;
}

template <typename F>
double integrate(F f, double a, double b, double tol, unsigned max_depth,
                 double* error = nullptr, double* l1 = nullptr) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, max_depth, tol, &err, l1);
  if (error) *error = err;
  return v;
}

void require_positive_z(double z, const char* what) {
  if (!(std::isfinite(z) && z > 0.0)) throw DomainError(std::string(what) + ": z must be > 0");
}

}  // namespace

void SeriesConfig::validate() const {
  if (max_terms < 1) throw DomainError("SeriesConfig: max_terms must be >= 1");
  if (!(rel_tol > 0.0)) throw DomainError("SeriesConfig: rel_tol must be > 0");
}

ExactRational coeff_b_exact(std::size_t n) {
  const long k = static_cast<long>(n);
  const ExactRational g1 = gamma_half_integer_over_sqrt_pi(2 * k - 1);  // Gamma(n-1/2)/sqrt(pi)
  const ExactRational g2 = gamma_half_integer_over_sqrt_pi(4 * k - 1);  // Gamma(2n-1/2)/sqrt(pi)
  ExactRational b = g1 * g1 / (2 * factorial(n) * g2);
  return n % 2 == 0 ? ExactRational(-b) : b;
}

double coeff_b(std::size_t n) {
  if (n < kCoefficientCache) return b_table()[n];
  return to_double(coeff_b_exact(n));
}

ExactRational coeff_a_over_sqrt_pi(std::size_t n) {
  const long k = static_cast<long>(n);
  ExactRational a = ExactRational(4 * k - 1, 2) * gamma_half_integer_over_sqrt_pi(2 * k - 1) /
                    factorial(n);
  return n % 2 == 0 ? a : ExactRational(-a);
}

double coeff_a(std::size_t n) {
  if (n < kCoefficientCache) return a_table()[n];
  return to_double(coeff_a_over_sqrt_pi(n)) * std::sqrt(std::numbers::pi);
}

double energy_e(std::size_t n, double alpha) {
  const double m = static_cast<double>(n);
  return alpha * alpha * m * (2.0 * m - 1.0);
}

SeriesVariables series_variables(const MarketState& state, const SabrParams& params,
                                 const SwapContract& contract) {
  if (state.nu == 0.0) {
    throw SingularityError("series_variables: nu = 0 makes zeta infinite");
  }
  if (!(state.nu > 0.0)) throw DomainError("series_variables: nu must be > 0");
  if (!(state.sigma > 0.0)) throw DomainError("series_variables: sigma must be > 0");
  SeriesVariables v;
  v.tau = contract.maturity() - state.t;
  const double a = params.alpha();
  v.zeta = state.sigma * state.sigma / (2.0 * a * a * state.nu);
  v.z = 4.0 * v.zeta;
  return v;
}

double series_term(std::size_t n, double zeta, double alpha2_tau) {
  const double b = coeff_b(n);
  if (n == 0) return b * specfun::kummer_1f1(-0.5, 0.5, zeta).value;
  if (zeta == 0.0) return 0.0;
  const double m = static_cast<double>(n);
  const double f = specfun::kummer_1f1(m - 0.5, 2.0 * m + 0.5, zeta).value;
  const double log_mag = std::log(std::abs(b)) + alpha2_tau * m * (2.0 * m - 1.0) +
                         m * std::log(zeta) + std::log(f);
  return std::copysign(std::exp(log_mag), b);
}

NormalizedSum sum_normalized_series(double zeta, double alpha2_tau, const SeriesConfig& config) {
  config.validate();
  if (!(zeta >= 0.0) || !std::isfinite(zeta)) {
    throw DomainError("sum_normalized_series: zeta must be finite and >= 0");
  }
  if (!(alpha2_tau >= 0.0)) throw DomainError("sum_normalized_series: alpha^2 tau must be >= 0");
  const bool adaptive = config.mode == SeriesMode::adaptive_asymptotic;
  auto tr = truncate_series([&](std::size_t n) { return series_term(n, zeta, alpha2_tau); },
                            config.max_terms, config.rel_tol, adaptive);
  return {tr.value, tr.diagnostics, std::move(tr.terms)};
}

double transform_kernel(double w, double zeta) {
  const double f0 = specfun::kummer_1f1(-0.5, 0.5, zeta).value;
  if (w <= 0.0) return f0;
  auto integrand = [&](double v) {
    const double v2 = v * v;
    const double x = w * v2 * (1.0 - v2);
    return 2.0 * std::exp(zeta * v2) * w * (1.0 - v2) * h_over_x(x);
  };
  // h(x)/x changes character near x ~ 1, i.e. v ~ 1/sqrt(w).
  const double split = std::min(0.5, 3.0 / std::sqrt(w));
  return f0 + integrate(integrand, 0.0, split, 1e-13, 10) + integrate(integrand, split, 1.0, 1e-13, 10);
}

TransformResult kappa_gaussian_transform(double zeta, double alpha2_tau) {
  if (!(zeta > 0.0) || !std::isfinite(zeta)) {
    throw DomainError("kappa_gaussian_transform: zeta must be finite and > 0");
  }
  if (!(alpha2_tau >= 0.0)) throw DomainError("kappa_gaussian_transform: alpha^2 tau must be >= 0");
  const double f0 = specfun::kummer_1f1(-0.5, 0.5, zeta).value;
  if (alpha2_tau == 0.0) {
    const double v = transform_kernel(zeta, zeta);
    return {v, 1e-13 * (std::abs(f0) + std::abs(v - f0)) + 4.0 * kEps * std::abs(f0)};
  }
  const double s = std::sqrt(alpha2_tau);
  auto outer = [&](double g) {
    const double phi = std::exp(-0.5 * g * g) / std::sqrt(2.0 * std::numbers::pi);
    return phi * std::exp(-0.5 * s * g) * (transform_kernel(zeta * std::exp(2.0 * s * g), zeta) - f0);
  };
  double err = 0.0;
  double l1 = 0.0;
  const double integral = integrate(outer, -10.0, 10.0 + 2.0 * s, 1e-11, 12, &err, &l1);
  const double damp = std::exp(-alpha2_tau / 8.0);
  TransformResult r;
  r.value = f0 + damp * integral;
  r.error_estimate = damp * (err + 1e-12 * l1) + 8.0 * kEps * (std::abs(f0) + damp * l1);
  return r;
}

KappaSeries kappa_series(const MarketState& state, const SabrParams& params,
                         const SwapContract& contract, const SeriesConfig& config) {
  config.validate();
  for (StateViolation v : validate_state(state, params, contract)) {
    if (v == StateViolation::nu_zero_series_singular) continue;
    throw DomainError("kappa_series: invalid state (" + std::string(to_string(v)) + ")");
  }
  const SeriesVariables vars = series_variables(state, params, contract);
  const double a2t = params.alpha() * params.alpha() * vars.tau;
  const double scale = std::sqrt(state.nu) / contract.tenor();

  NormalizedSum direct = sum_normalized_series(vars.zeta, a2t, config);
  KappaSeries out;
  out.diagnostics = direct.diagnostics;
  double value = direct.value;
  double error = direct.diagnostics.error_estimate;

  if (config.mode == SeriesMode::adaptive_asymptotic && config.resummation &&
      !direct.diagnostics.converged) {
    const TransformResult tr = kappa_gaussian_transform(vars.zeta, a2t);
    value = tr.value;
    error = tr.error_estimate;
    out.diagnostics.summation = Summation::gaussian_transform;
  }
  out.kappa = scale * value;
  out.diagnostics.error_estimate = scale * error;
  return out;
}

PricingResult fair_value(double kappa, const SwapContract& contract, double df,
                         const SeriesDiagnostics& diagnostics) {
  if (!(df > 0.0 && df <= 1.0)) throw DomainError("fair_value: discount factor must lie in (0, 1]");
  if (!(kappa >= 0.0)) throw DomainError("fair_value: kappa must be >= 0");
  PricingResult r;
  r.kappa = kappa;
  r.discount_factor = df;
  r.fair_value = contract.notional() * df * (kappa - contract.strike());
  r.diagnostics = diagnostics;
  return r;
}

double j0_closed_form(double z) {
  require_positive_z(z, "j0_closed_form");
  const double root = std::sqrt(z);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  return -0.5 * sqrt_pi *
         (sqrt_pi * specfun::erfi(0.5 * root) - (2.0 / root) * std::expm1(0.25 * z));
}

double j0_hypergeometric_form(double z) {
  require_positive_z(z, "j0_hypergeometric_form");
  const double x = 0.25 * z;
  double f_minus_one = 0.0;
  if (x <= specfun::kKummerAsymptoticThreshold) {
    // sum_{m>=1} (-1/2)_m / ((1/2)_m m!) x^m without the leading 1.
    double term = 1.0;
    int small_in_a_row = 0;
    for (int m = 0; m < 10000 && small_in_a_row < 2; ++m) {
      term *= (m - 0.5) / (m + 0.5) * x / (m + 1.0);
      f_minus_one += term;
      small_in_a_row = std::abs(term) <= 1e-17 * std::abs(f_minus_one) ? small_in_a_row + 1 : 0;
    }
  } else {
    f_minus_one = specfun::kummer_1f1(-0.5, 0.5, x).value - 1.0;
  }
  return 0.5 * std::sqrt(std::numbers::pi) / std::sqrt(x) * f_minus_one;
}

JInfinity j_infinity(double z, double tau, double alpha, std::size_t n_max) {
  require_positive_z(z, "j_infinity");
  if (!(tau >= 0.0)) throw DomainError("j_infinity: tau must be >= 0");
  if (!(alpha > 0.0)) throw DomainError("j_infinity: alpha must be > 0");
  JInfinity out;
  const double x = 0.25 * z;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const long k = static_cast<long>(n);
    // Gamma(n-1/2)^2 / (4 n! Gamma(2n-1/2)) = sqrt(pi) g1^2 / (4 n! g2)
    const ExactRational g1 = gamma_half_integer_over_sqrt_pi(2 * k - 1);
    const ExactRational g2 = gamma_half_integer_over_sqrt_pi(4 * k - 1);
    const double coeff = std::sqrt(std::numbers::pi) * to_double(g1 * g1 / (4 * factorial(n) * g2));
    const double m = static_cast<double>(n);
    const double f = specfun::kummer_1f1(m - 0.5, 2.0 * m + 0.5, x).value;
    const double mag =
        std::exp(std::log(coeff) + energy_e(n, alpha) * tau + (m - 0.5) * std::log(x) + std::log(f));
    if (!std::isfinite(mag)) {
      out.diverging = true;
      break;
    }
    out.value += n % 2 == 1 ? mag : -mag;
  }
  return out;
}

PsiSeries psi_series(double y, double tau, double alpha, std::size_t max_terms) {
  if (!(y >= 0.0) || !std::isfinite(y)) throw DomainError("psi_series: y must be >= 0");
  if (!(tau >= 0.0)) throw DomainError("psi_series: tau must be >= 0");
  if (!(alpha > 0.0)) throw DomainError("psi_series: alpha must be > 0");
  PsiSeries out;
  if (y == 0.0) {
    out.value = 1.0;
    out.diagnostics.terms_used = 1;
    out.diagnostics.converged = true;
    return out;
  }
  const double log_half_root = 0.5 * std::log(0.5 * y);
  auto term = [&](std::size_t n) {
    const double order = 2.0 * static_cast<double>(n) - 0.5;
    const double i = specfun::bessel_i(order, y).value;
    if (i == 0.0) return 0.0;
    return coeff_a(n) * std::exp(energy_e(n, alpha) * tau + log_half_root) * i;
  };
  auto tr = truncate_series(term, max_terms, 1e-16, true);
  out.value = tr.value;
  out.diagnostics = tr.diagnostics;
  return out;
}

}  // namespace volswap::series
