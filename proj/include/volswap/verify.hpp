#pragma once

// Numerical and exact checks of the identities behind the series solution.

#include <cstddef>
#include <string>
#include <vector>

#include "volswap/exact.hpp"
#include "volswap/model.hpp"

namespace volswap::verify {

struct ResidualReport {
  std::string point;
  double residual = 0.0;
  double scale = 1.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Set when the check ran past the blow-up index of an asymptotic sum.
  bool inconclusive = false;
};

/// pass = |residual| / scale <= tolerance.
ResidualReport make_report(std::string point, double residual, double scale, double tolerance);

/// Partial sum (1/sqrt(2)) sum_{n<n_terms} a_n I_{2n-1/2}(y) against y^(-1/2).
ResidualReport check_bessel_sqrt_expansion(double y, std::size_t n_terms,
                                           double tolerance = 1e-6);

/// Residual of d psi/d tau = (alpha^2/2)(y^2 psi_yy - y^2 psi) for the
/// truncated Bessel series of psi, differentiated term by term. Throws
/// InconclusiveError when the terms have started to grow before n_terms.
ResidualReport check_psi_pde_residual(double tau, double y, double alpha, std::size_t n_terms,
                                      double tolerance = 1e-6);

struct FunctionalReport {
  /// Per term n: D_t K_n + (alpha^2 sigma^2 / 2) d^2 K_n / d sigma^2.
  std::vector<ResidualReport> per_term;
  /// The same for the truncated sums.
  ResidualReport combined;
  /// Analytic D_t kappa_N against central differences along
  /// (t + h, nu + sigma^2 h).
  ResidualReport fd_time;
  /// Analytic (alpha^2 sigma^2 / 2) d^2 kappa_N / d sigma^2 against central
  /// differences in sigma at fixed nu.
  ResidualReport fd_sigma;
};

/// Horizontal-plus-vertical derivative equation for the truncated kappa
/// series. The vertical term uses 1F1'' from the contiguous relations; the
/// horizontal term uses the closed form obtained with the Kummer equation.
FunctionalReport check_functional_residual(const MarketState& state, const SabrParams& params,
                                           const SwapContract& contract, std::size_t n_terms,
                                           double tolerance = 1e-9, double fd_step = 1e-4,
                                           double fd_tolerance = 1e-5);

/// sum_{0<=n<=s} (-1)^(n+1) (2n-1/2) Gamma(n-1/2) / (n! (s-n)! Gamma(s+n+1/2)), exact.
ExactRational terminal_identity_sum(std::size_t s);

/// Same sum for s >= 1, where it must vanish.
ExactRational check_terminal_identity(std::size_t s);

/// The s = 0 sum times Gamma(-1/2) / (2 sqrt(pi)): the leading coefficient of
/// kappa at maturity, which must be 1.
ExactRational terminal_leading_coefficient();

/// z F'' - (z - b) F' - a F for F = 1F1(a; b; z), derivatives from
/// contiguous relations; scale max(1, |F|).
ResidualReport check_kummer_ode(double a, double b, double z, double tolerance = 1e-9);

/// Relative gap between the erfi and 1F1 forms of J0.
ResidualReport check_j0_forms(double z, double tolerance = 1e-10);

struct SuiteEntry {
  std::string check;
  ResidualReport report;
  /// Exact value for the terminal-identity checks, as "p/q".
  std::string exact;
};

/// Every check on its default grid, or only the named one ("terminal",
/// "bessel", "psi_pde", "functional", "kummer", "j0").
std::vector<SuiteEntry> run_suite(const std::string& only = "", std::size_t n_terms = 10);

}  // namespace volswap::verify
