#pragma once

// Special functions used by the volatility-swap series and its checks.
//
// Everything here is a pure function of its arguments. Series are summed by
// term recurrence and stop once two consecutive terms fall below
// rel_tol * |partial sum|.

#include <cstddef>

#include "volswap/exact.hpp"

namespace volswap::specfun {

/// Outcome of a series evaluation.
struct SeriesEvalReport {
  double value = 0.0;
  std::size_t terms_used = 0;
  double last_term_abs = 0.0;
  bool converged = false;
};

/// Exact value of Gamma(k/2) for odd k, stored as coefficient * sqrt(pi).
class HalfIntegerGamma {
 public:
  HalfIntegerGamma(ExactRational coefficient, int sqrt_pi_power);

  const ExactRational& coefficient() const { return coefficient_; }
  BigInt numerator() const;
  BigInt denominator() const;
  int sqrt_pi_power() const { return sqrt_pi_power_; }

  double to_double() const;

 private:
  ExactRational coefficient_;
  int sqrt_pi_power_;
};

/// Gamma(k/2) for odd k via Gamma(1/2) = sqrt(pi) and Gamma(x+1) = x Gamma(x).
/// Throws DomainError for even k.
HalfIntegerGamma gamma_half_integer(long k);

/// Gamma(k/2) / sqrt(pi) as an exact rational (odd k).
ExactRational gamma_half_integer_over_sqrt_pi(long k);

/// log|Gamma(x)| and the sign of Gamma(x). Thin wrappers over the C library.
double log_gamma(double x);
int gamma_sign(double x);

/// 1/Gamma(x), returning 0 at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x);

/// Switch-over from the direct Kummer series to the large-z asymptotic form.
inline constexpr double kKummerAsymptoticThreshold = 40.0;

/// Confluent hypergeometric 1F1(a; b; z) for z >= 0.
SeriesEvalReport kummer_1f1(double a, double b, double z, double rel_tol = 1e-15);

/// Imaginary error function (2/sqrt(pi)) int_0^x exp(s^2) ds.
double erfi(double x);

/// Modified Bessel function of the first kind I_order(y), y >= 0, by its
/// power series.
SeriesEvalReport bessel_i(double order, double y, double rel_tol = 1e-15);

/// exp(-y) I_order(y). Uses the power series for moderate y and the Hankel
/// expansion for large y, so it never overflows.
double bessel_i_scaled(double order, double y);

}  // namespace volswap::specfun
