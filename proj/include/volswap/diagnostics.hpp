#pragma once

#include <cstddef>
#include <string_view>

namespace volswap {

/// How the raw kappa series behaved in n.
///  - convergent_like: terms kept shrinking (tolerance met, or max_terms hit
///    while still shrinking);
///  - asymptotic_truncated: terms started growing, but the smallest one was
///    below rel_tol * |sum|;
///  - diverging: terms started growing before getting that small.
enum class Regime { convergent_like, asymptotic_truncated, diverging };

/// Which value the pricer returned: the direct partial sum of the series, or
/// its Gaussian-transform summation.
enum class Summation { direct, gaussian_transform };

struct SeriesDiagnostics {
  std::size_t terms_used = 0;
  std::size_t min_term_index = 0;
  double min_term_abs = 0.0;
  bool converged = false;
  Regime regime = Regime::convergent_like;
  Summation summation = Summation::direct;
  /// Absolute error estimate on the returned kappa.
  double error_estimate = 0.0;
};

std::string_view to_string(Regime r);
std::string_view to_string(Summation s);

}  // namespace volswap
