#include "volswap/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "volswap/errors.hpp"

namespace volswap::specfun {

namespace {

constexpr std::size_t kMaxSeriesTerms = 200000;

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + ": non-finite argument");
  }
}

// Sums sum_m term_m with term_{m+1} = term_m * ratio(m), starting at `first`.
template <typename Ratio>
SeriesEvalReport sum_recurrence(double first, double rel_tol, Ratio ratio) {
  SeriesEvalReport r;
  double term = first;
  double sum = first;
  std::size_t n = 1;
  int small_in_a_row = std::abs(term) <= rel_tol * std::abs(sum) ? 1 : 0;
  while (n < kMaxSeriesTerms && small_in_a_row < 2) {
    term *= ratio(n - 1);
    sum += term;
    ++n;
    if (!std::isfinite(sum)) break;
    small_in_a_row = std::abs(term) <= rel_tol * std::abs(sum) ? small_in_a_row + 1 : 0;
  }
  r.value = sum;
  r.terms_used = n;
  r.last_term_abs = std::abs(term);
  r.converged = small_in_a_row >= 2 && std::isfinite(sum);
  return r;
}

// Large-z form Gamma(b)/Gamma(a) e^z z^(a-b) sum_k (b-a)_k (1-a)_k / (k! z^k),
// truncated at its smallest term.
SeriesEvalReport kummer_asymptotic(double a, double b, double z, double rel_tol) {
  SeriesEvalReport r;
  const double log_prefactor = log_gamma(b) - log_gamma(a) + z + (a - b) * std::log(z);
  const double prefactor = gamma_sign(b) * gamma_sign(a) * std::exp(log_prefactor);
  double term = 1.0;
  double sum = 1.0;
  std::size_t k = 0;
  int small_in_a_row = 0;
  while (k < 500 && small_in_a_row < 2) {
    const double next = term * (b - a + k) * (1.0 - a + k) / ((k + 1.0) * z);
    if (std::abs(next) > std::abs(term)) break;  // optimal truncation
    term = next;
    sum += term;
    ++k;
    small_in_a_row = std::abs(term) <= rel_tol * std::abs(sum) ? small_in_a_row + 1 : 0;
  }
  r.value = prefactor * sum;
  r.terms_used = k + 1;
  r.last_term_abs = std::abs(prefactor * term);
  r.converged = std::isfinite(r.value) && std::abs(term) <= rel_tol * std::abs(sum);
  return r;
}

}  // namespace

HalfIntegerGamma::HalfIntegerGamma(ExactRational coefficient, int sqrt_pi_power)
    : coefficient_(std::move(coefficient)), sqrt_pi_power_(sqrt_pi_power) {}

BigInt HalfIntegerGamma::numerator() const {
  return boost::multiprecision::numerator(coefficient_);
}

BigInt HalfIntegerGamma::denominator() const {
  return boost::multiprecision::denominator(coefficient_);
}

double HalfIntegerGamma::to_double() const {
  const double c = volswap::to_double(coefficient_);
  return sqrt_pi_power_ == 1 ? c * std::sqrt(std::numbers::pi) : c;
}

ExactRational gamma_half_integer_over_sqrt_pi(long k) {
  if (k % 2 == 0) {
    throw DomainError("gamma_half_integer: k must be odd, got " + std::to_string(k));
  }
  ExactRational c(1);
  if (k >= 1) {
    for (long j = 1; j < k; j += 2) c *= ExactRational(j, 2);
  } else {
    for (long j = 1; j > k; j -= 2) c /= ExactRational(j - 2, 2);
  }
  return c;
}

HalfIntegerGamma gamma_half_integer(long k) {
  return HalfIntegerGamma(gamma_half_integer_over_sqrt_pi(k), 1);
}

double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

int gamma_sign(double x) {
  if (x > 0.0) return 1;
  int sign = 0;
  ::lgamma_r(x, &sign);
  return sign < 0 ? -1 : 1;
}

double reciprocal_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  int sign = 0;
  const double lg = ::lgamma_r(x, &sign);
  return (sign < 0 ? -1.0 : 1.0) * std::exp(-lg);
}

SeriesEvalReport kummer_1f1(double a, double b, double z, double rel_tol) {
  require_finite(a, "kummer_1f1");
  require_finite(b, "kummer_1f1");
  require_finite(z, "kummer_1f1");
  if (is_nonpositive_integer(b)) {
    throw DomainError("kummer_1f1: b must not be a non-positive integer");
  }
  if (z < 0.0) throw DomainError("kummer_1f1: z must be >= 0");
  if (!(rel_tol > 0.0)) throw DomainError("kummer_1f1: rel_tol must be > 0");

  if (z == 0.0) return {1.0, 1, 0.0, true};

  if (z > kKummerAsymptoticThreshold && !is_nonpositive_integer(a)) {
    SeriesEvalReport asym = kummer_asymptotic(a, b, z, rel_tol);
    if (asym.converged) return asym;
    // Parameters comparable to z: the direct series is the accurate route.
  }
  return sum_recurrence(1.0, rel_tol, [&](std::size_t m) {
    return (a + m) / (b + m) * z / (m + 1.0);
  });
}

double erfi(double x) {
  require_finite(x, "erfi");
  if (x == 0.0) return 0.0;
  const double ax = std::abs(x);
  const double sign = x < 0.0 ? -1.0 : 1.0;
  const double x2 = ax * ax;
  if (ax <= 10.0) {
    // (2/sqrt(pi)) sum_k x^(2k+1) / (k! (2k+1)); all terms positive.
    double power = ax;
    double sum = ax;
    int small_in_a_row = 0;
    for (int k = 1; k < 2000 && small_in_a_row < 2; ++k) {
      power *= x2 / k;
      const double term = power / (2.0 * k + 1.0);
      sum += term;
      small_in_a_row = term <= 1e-17 * sum ? small_in_a_row + 1 : 0;
    }
    return sign * 2.0 * std::numbers::inv_sqrtpi * sum;
  }
  // exp(x^2) / (sqrt(pi) x) sum_k (2k-1)!! / (2x^2)^k
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double next = term * (2.0 * k + 1.0) / (2.0 * x2);
    if (next > term || next <= 1e-17 * sum) break;
    term = next;
    sum += term;
  }
  return sign * std::exp(x2) * std::numbers::inv_sqrtpi / ax * sum;
}

SeriesEvalReport bessel_i(double order, double y, double rel_tol) {
  require_finite(order, "bessel_i");
  require_finite(y, "bessel_i");
  if (y < 0.0) throw DomainError("bessel_i: y must be >= 0");
  if (!(rel_tol > 0.0)) throw DomainError("bessel_i: rel_tol must be > 0");
  if (is_nonpositive_integer(order)) order = -order;  // I_{-n} = I_n
  if (y == 0.0) {
    if (order == 0.0) return {1.0, 1, 0.0, true};
    if (order > 0.0) return {0.0, 1, 0.0, true};
    throw DomainError("bessel_i: I_order(0) is unbounded for negative non-integer order");
  }
  const double half_y = 0.5 * y;
  const double first =
      gamma_sign(order + 1.0) * std::exp(order * std::log(half_y) - log_gamma(order + 1.0));
  const double q = half_y * half_y;
  return sum_recurrence(first, rel_tol, [&](std::size_t m) {
    return q / ((m + 1.0) * (order + m + 1.0));
  });
}

double bessel_i_scaled(double order, double y) {
  require_finite(order, "bessel_i_scaled");
  require_finite(y, "bessel_i_scaled");
  if (y < 0.0) throw DomainError("bessel_i_scaled: y must be >= 0");
  if (is_nonpositive_integer(order)) order = -order;
  if (y == 0.0) return bessel_i(order, 0.0).value;

  if (y >= 30.0 && y >= 2.0 * order * order) {
    // Hankel expansion, truncated at its smallest term.
    const double mu = 4.0 * order * order;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double next = -term * (mu - odd * odd) / (8.0 * k * y);
      if (std::abs(next) > std::abs(term) || std::abs(next) <= 1e-17 * std::abs(sum)) break;
      term = next;
      sum += term;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * y);
  }
  const double half_y = 0.5 * y;
  const double first =
      gamma_sign(order + 1.0) *
      std::exp(order * std::log(half_y) - log_gamma(order + 1.0) - y);
  const double q = half_y * half_y;
  return sum_recurrence(first, 1e-16, [&](std::size_t m) {
           return q / ((m + 1.0) * (order + m + 1.0));
         }).value;
}

}  // namespace volswap::specfun
