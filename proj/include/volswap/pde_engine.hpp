#pragma once

// Reference pricer through the Laplace transform of the integrated variance.
//
// psi(tau, y) = E[ exp(-(alpha^2 y^2 / 2) int_0^tau (sigma_s/sigma_0)^2 ds) ] solves
//
//   d psi / d tau = (alpha^2 / 2) (y^2 psi_yy - y^2 psi),   psi(0, y) = 1,
//
// and kappa follows from sqrt(v) = (1/sqrt(pi)) int_0^inf (1 - e^{-v x^2}) / x^2 dx
// with y = sqrt(2) x sigma / alpha.
//
// The solver works in u = log y, where the equation has constant diffusion,
// on [y_min, y_max] with y_min far inside the region where
// 1 - psi = y^2 (e^{alpha^2 tau} - 1) / 2 + O(y^4). Time steps are graded as
// tau_i = tau (i / n_t)^2.

#include <cstddef>
#include <string>
#include <vector>

#include <boost/math/special_functions/fpclassify.hpp>  // pchip.hpp uses unqualified isnan
#include <boost/math/interpolators/pchip.hpp>

#include "volswap/model.hpp"

namespace volswap::pde {

enum class Scheme { crank_nicolson };

struct GridSpec {
  /// 0 picks y_max from the decay of psi and doubles it until the boundary
  /// check passes.
  double y_max = 0.0;
  std::size_t n_y = 400;
  std::size_t n_t = 400;
  Scheme scheme = Scheme::crank_nicolson;
  double boundary_tol = 1e-8;

  void validate() const;
};

/// psi on the (tau, y) grid. Time index 0 is maturity (tau = 0), the last
/// index is the valuation time. y index 0 is y = 0; indices 1..n_y are the
/// log-spaced nodes from y_min to y_max.
class PsiSolution {
 public:
  PsiSolution(double alpha, double tau, std::vector<double> y, std::vector<double> taus,
              double boundary_tol, std::vector<double> w);

  double alpha() const { return alpha_; }
  double tau() const { return tau_; }
  double y_min() const { return y_[1]; }
  double y_max() const { return y_.back(); }
  std::size_t n_y() const { return y_.size() - 1; }
  std::size_t n_t() const { return taus_.size() - 1; }
  double boundary_tol() const { return boundary_tol_; }

  double y(std::size_t j) const { return y_[j]; }
  double tau_at(std::size_t i) const { return taus_[i]; }
  double psi(std::size_t i, std::size_t j) const { return 1.0 - w_[i * y_.size() + j]; }

  /// psi at the valuation time, interpolated; 0 beyond y_max.
  double psi_at(double y) const;
  /// (1 - psi) / y^2 at the valuation time, interpolated; q(0) is exact.
  double q_at(double y) const;

  /// psi at the valuation time at the last node below y_max / 2, the quantity
  /// the boundary check compares with boundary_tol.
  double boundary_psi() const;
  bool boundary_ok() const { return boundary_psi() <= boundary_tol_; }

 private:
  double alpha_;
  double tau_;
  std::vector<double> y_;
  std::vector<double> taus_;
  double boundary_tol_;
  std::vector<double> w_;  // 1 - psi, row-major (n_t + 1) x (n_y + 1)
  std::size_t boundary_index_;
  boost::math::interpolators::pchip<std::vector<double>> q_;
};

/// Decay scale sqrt(2 / (e^{alpha^2 tau} - 1)) of psi in y.
double psi_scale(double alpha, double tau);
/// Lower end of the log grid, 1e-3 * psi_scale.
double grid_y_min(double alpha, double tau);
/// Starting y_max for the automatic grid, 16 * psi_scale.
double auto_y_max(double alpha, double tau);

/// Crank-Nicolson march with a Rannacher start. Throws InstabilityError when
/// psi leaves [-1e-6, 1 + 1e-6].
PsiSolution solve_psi(double alpha, double tau, const GridSpec& grid);

struct QuadratureResult {
  double kappa = 0.0;
  /// Bound on the truncated part of the x-integral, in kappa units.
  double tail_bound = 0.0;
  double quad_error = 0.0;
  double x_cut = 0.0;
  double y_max = 0.0;
  std::size_t n_y = 0;
  std::size_t n_t = 0;
  std::vector<std::string> warnings;
};

/// kappa = (1 / (T sqrt(pi))) int_0^inf [1 - e^{-x^2 nu} psi(tau, sqrt(2) x sigma / alpha)] / x^2 dx.
/// Handles nu = 0. Throws AccuracyError when the tail bound exceeds quad_tol.
QuadratureResult kappa_quadrature(const MarketState& state, const SabrParams& params,
                                  const SwapContract& contract, const GridSpec& grid = {},
                                  double quad_tol = 1e-8);

/// Same, on an already solved surface (its tau must match the state).
QuadratureResult kappa_quadrature(const PsiSolution& solution, const MarketState& state,
                                  const SabrParams& params, const SwapContract& contract,
                                  double quad_tol = 1e-8);

struct RefinementReport {
  std::vector<std::size_t> n_y;
  std::vector<std::size_t> n_t;
  std::vector<double> kappa;
  /// (k_i - k_{i-1}) / (k_{i+1} - k_i); about 4 for a second-order scheme.
  std::vector<double> ratios;
  double y_max = 0.0;
};

/// Prices on `levels` + 1 grids, doubling n_y and n_t each time, with y_max
/// frozen at the base grid's value.
RefinementReport refine_kappa(const MarketState& state, const SabrParams& params,
                              const SwapContract& contract, const GridSpec& base,
                              std::size_t levels, double quad_tol = 1e-10);

}  // namespace volswap::pde
