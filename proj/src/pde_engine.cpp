#include "volswap/pde_engine.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "volswap/errors.hpp"

namespace volswap::pde {

namespace {

constexpr double kMaxPrincipleSlack = 1e-6;
constexpr int kMaxWidenings = 6;

// Solves the tridiagonal system in place (Thomas algorithm). `lower[0]` and
// `upper[n-1]` are ignored.
void thomas(std::vector<double>& lower, std::vector<double>& diag, std::vector<double>& upper,
            std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

struct Operator {
  double lower = 0.0;  // coefficient of w_{j-1}
  double upper = 0.0;  // coefficient of w_{j+1}
  std::vector<double> b;  // alpha^2 y_j^2 / 2
};

// One theta-step of w_tau = lower w_{j-1} - (lower + upper + b_j) w_j + upper w_{j+1} + b_j
// on the log nodes 1..n (w[0] is y = 0 and stays 0), Dirichlet at both ends.
void theta_step(const Operator& op, double k, double theta, double edge_lo, double edge_hi,
                const std::vector<double>& w_old, std::vector<double>& w_new) {
  const std::size_t n = w_old.size() - 1;
  const std::size_t m = n - 2;  // unknowns at nodes 2..n-1
  std::vector<double> lower(m), diag(m), upper(m), rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + 2;
    const double b = op.b[j];
    const double lw = op.lower * w_old[j - 1] - (op.lower + op.upper + b) * w_old[j] +
                      op.upper * w_old[j + 1] + b;
    lower[i] = -theta * k * op.lower;
    upper[i] = -theta * k * op.upper;
    diag[i] = 1.0 + theta * k * (op.lower + op.upper + b);
    rhs[i] = w_old[j] + (1.0 - theta) * k * lw + theta * k * b;
  }
  rhs[0] += theta * k * op.lower * edge_lo;
  rhs[m - 1] += theta * k * op.upper * edge_hi;
  thomas(lower, diag, upper, rhs);
  w_new[0] = 0.0;
  w_new[1] = edge_lo;
  for (std::size_t i = 0; i < m; ++i) w_new[i + 2] = rhs[i];
  w_new[n] = edge_hi;
}

// 1 - psi near y = 0.
double edge_low(double alpha, double tau, double y) {
  return 0.5 * y * y * std::expm1(alpha * alpha * tau);
}

// 1 - psi at y_max from the lower bound psi >= exp(-y^2 (e^{alpha^2 tau} - 1) / 2).
double edge_high(double alpha, double tau, double y) {
  return -std::expm1(-0.5 * y * y * std::expm1(alpha * alpha * tau));
}

PsiSolution solve_fixed(double alpha, double tau, double y_max, const GridSpec& grid) {
  const std::size_t n_y = grid.n_y;
  const std::size_t n_t = grid.n_t;
  const std::size_t stride = n_y + 1;
  const double y_min = grid_y_min(alpha, tau);
  if (!(y_max > 10.0 * y_min)) {
    throw DomainError("solve_psi: y_max must exceed 10 * y_min = " + std::to_string(10.0 * y_min));
  }

  std::vector<double> y(stride, 0.0);
  const double u0 = std::log(y_min);
  const double du = (std::log(y_max) - u0) / static_cast<double>(n_y - 1);
  for (std::size_t j = 1; j <= n_y; ++j) y[j] = std::exp(u0 + du * static_cast<double>(j - 1));
  y[n_y] = y_max;

  std::vector<double> taus(n_t + 1);
  for (std::size_t i = 0; i <= n_t; ++i) {
    const double r = static_cast<double>(i) / n_t;
    taus[i] = tau * r * r;
  }

  std::vector<double> w(stride * (n_t + 1), 0.0);
  if (tau > 0.0) {
    // y^2 w_yy = w_uu - w_u in u = log y.
    const double half_a2 = 0.5 * alpha * alpha;
    Operator op;
    op.lower = half_a2 * (1.0 / (du * du) + 0.5 / du);
    op.upper = half_a2 * (1.0 / (du * du) - 0.5 / du);
    op.b.resize(stride);
    for (std::size_t j = 0; j <= n_y; ++j) op.b[j] = half_a2 * y[j] * y[j];

    std::vector<double> cur(stride, 0.0), next(stride), half(stride);
    for (std::size_t i = 1; i <= n_t; ++i) {
      const double dt = taus[i] - taus[i - 1];
      const double lo = edge_low(alpha, taus[i], y_min);
      const double hi = edge_high(alpha, taus[i], y_max);
      if (i == 1) {
        const double mid = taus[0] + 0.5 * dt;
        theta_step(op, 0.5 * dt, 1.0, edge_low(alpha, mid, y_min), edge_high(alpha, mid, y_max),
                   cur, half);
        theta_step(op, 0.5 * dt, 1.0, lo, hi, half, next);
      } else {
        theta_step(op, dt, 0.5, lo, hi, cur, next);
      }
      std::copy(next.begin(), next.end(), w.begin() + i * stride);
      cur.swap(next);
    }
  }

  for (std::size_t k = 0; k < w.size(); ++k) {
    const double psi = 1.0 - w[k];
    if (!(psi >= -kMaxPrincipleSlack && psi <= 1.0 + kMaxPrincipleSlack)) {
      std::ostringstream msg;
      msg << "solve_psi: psi = " << psi << " at time index " << k / stride << ", y index "
          << k % stride << " leaves [0, 1]; use a finer grid";
      throw InstabilityError(msg.str());
    }
  }
  return PsiSolution(alpha, tau, std::move(y), std::move(taus), grid.boundary_tol, std::move(w));
}

boost::math::interpolators::pchip<std::vector<double>> make_q(double alpha, double tau,
                                                                std::vector<double> y,
                                                                const double* w_last) {
  std::vector<double> q(y.size());
  q[0] = 0.5 * std::expm1(alpha * alpha * tau);
  for (std::size_t j = 1; j < y.size(); ++j) q[j] = w_last[j] / (y[j] * y[j]);
  // q is even in y.
  return {std::move(y), std::move(q), 0.0};
}

}  // namespace

void GridSpec::validate() const {
  if (n_y < 16 || n_t < 16) throw DomainError("GridSpec: n_y and n_t must be >= 16");
  if (!(y_max >= 0.0) || !std::isfinite(y_max)) throw DomainError("GridSpec: y_max must be >= 0");
  if (!(boundary_tol > 0.0 && boundary_tol < 1.0)) {
    throw DomainError("GridSpec: boundary_tol must lie in (0, 1)");
  }
}

PsiSolution::PsiSolution(double alpha, double tau, std::vector<double> y,
                         std::vector<double> taus, double boundary_tol, std::vector<double> w)
    : alpha_(alpha),
      tau_(tau),
      y_(std::move(y)),
      taus_(std::move(taus)),
      boundary_tol_(boundary_tol),
      w_(std::move(w)),
      q_(make_q(alpha, tau, y_, w_.data() + (taus_.size() - 1) * y_.size())) {
  const auto it = std::upper_bound(y_.begin(), y_.end(), 0.5 * y_.back());
  boundary_index_ = static_cast<std::size_t>(it - y_.begin()) - 1;
}

double PsiSolution::q_at(double y) const {
  y = std::abs(y);
  if (y >= y_max()) return 1.0 / (y * y);
  return q_(y);
}

double PsiSolution::psi_at(double y) const {
  y = std::abs(y);
  if (y >= y_max()) return 0.0;
  return 1.0 - y * y * q_(y);
}

double PsiSolution::boundary_psi() const { return psi(n_t(), boundary_index_); }

double psi_scale(double alpha, double tau) {
  const double m = std::expm1(alpha * alpha * tau);
  if (!(m > 0.0)) return 1.0;
  return std::sqrt(2.0 / m);
}

double grid_y_min(double alpha, double tau) { return 1e-3 * psi_scale(alpha, tau); }

double auto_y_max(double alpha, double tau) { return 16.0 * psi_scale(alpha, tau); }

PsiSolution solve_psi(double alpha, double tau, const GridSpec& grid) {
  grid.validate();
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("solve_psi: alpha must be > 0");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("solve_psi: tau must be >= 0");
  if (grid.y_max > 0.0) return solve_fixed(alpha, tau, grid.y_max, grid);

  double y_max = auto_y_max(alpha, tau);
  PsiSolution sol = solve_fixed(alpha, tau, y_max, grid);
  for (int k = 0; k < kMaxWidenings && !sol.boundary_ok(); ++k) {
    y_max *= 2.0;
    sol = solve_fixed(alpha, tau, y_max, grid);
  }
  return sol;
}

QuadratureResult kappa_quadrature(const PsiSolution& solution, const MarketState& state,
                                  const SabrParams& params, const SwapContract& contract,
                                  double quad_tol) {
  for (StateViolation v : validate_state(state, params, contract)) {
    if (v == StateViolation::nu_zero_series_singular) continue;
    throw DomainError("kappa_quadrature: invalid state (" + std::string(to_string(v)) + ")");
  }
  if (!(quad_tol > 0.0)) throw DomainError("kappa_quadrature: quad_tol must be > 0");
  const double tau = contract.maturity() - state.t;
  if (std::abs(solution.tau() - tau) > 1e-12 * std::max(1.0, tau) ||
      solution.alpha() != params.alpha()) {
    throw DomainError("kappa_quadrature: psi surface was solved for a different (alpha, tau)");
  }

  QuadratureResult r;
  r.y_max = solution.y_max();
  r.n_y = solution.n_y();
  r.n_t = solution.n_t();
  const double T = contract.tenor();
  const double nu = state.nu;
  if (tau == 0.0) {
    r.kappa = std::sqrt(nu) / T;
    return r;
  }
  if (!solution.boundary_ok()) r.warnings.push_back("PDE_BOUNDARY_TOLERANCE_NOT_MET");

  const double norm = 1.0 / (T * std::sqrt(std::numbers::pi));
  const double c = std::sqrt(2.0) * state.sigma / params.alpha();
  double x_cut = 0.5 * solution.y_max() / c;
  if (nu > 0.0 && quad_tol * T < 1.0) {
    x_cut = std::min(x_cut, std::sqrt(std::log(1.0 / (quad_tol * T)) / nu));
  }
  r.x_cut = x_cut;
  const double psi_cut = std::min(1.0, std::abs(solution.psi_at(c * x_cut)));
  r.tail_bound = norm * std::exp(-x_cut * x_cut * nu) * psi_cut / x_cut;

  auto integrand = [&](double x) {
    if (x == 0.0) return nu + c * c * solution.q_at(0.0);
    const double x2 = x * x;
    return -std::expm1(-x2 * nu) / x2 + std::exp(-x2 * nu) * c * c * solution.q_at(c * x);
  };

  // Integrate between interpolation nodes, where the integrand is smooth.
  double integral = 0.0;
  double error = 0.0;
  for (std::size_t j = 0; j < solution.n_y() && solution.y(j) / c < x_cut; ++j) {
    const double lo = solution.y(j) / c;
    const double hi = std::min(solution.y(j + 1) / c, x_cut);
    double err = 0.0;
    integral += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, lo, hi, 8,
                                                                              1e-13, &err);
    error += err;
  }
  integral += 1.0 / x_cut;

  r.kappa = norm * integral;
  r.quad_error = norm * error;
  if (r.tail_bound > quad_tol) {
    std::ostringstream msg;
    msg << "kappa_quadrature: tail bound " << r.tail_bound << " exceeds " << quad_tol
        << " at x_cut = " << x_cut << "; widen y_max or tighten boundary_tol";
    throw AccuracyError(msg.str());
  }
  return r;
}

QuadratureResult kappa_quadrature(const MarketState& state, const SabrParams& params,
                                  const SwapContract& contract, const GridSpec& grid,
                                  double quad_tol) {
  const double tau = contract.maturity() - state.t;
  if (!(tau >= 0.0)) throw DomainError("kappa_quadrature: valuation time is beyond maturity");
  const PsiSolution sol = solve_psi(params.alpha(), tau, grid);
  return kappa_quadrature(sol, state, params, contract, quad_tol);
}

RefinementReport refine_kappa(const MarketState& state, const SabrParams& params,
                              const SwapContract& contract, const GridSpec& base,
                              std::size_t levels, double quad_tol) {
  const double tau = contract.maturity() - state.t;
  if (!(tau >= 0.0)) throw DomainError("refine_kappa: valuation time is beyond maturity");
  RefinementReport rep;
  GridSpec grid = base;
  if (grid.y_max == 0.0) grid.y_max = solve_psi(params.alpha(), tau, base).y_max();
  rep.y_max = grid.y_max;
  for (std::size_t level = 0; level <= levels; ++level) {
    const QuadratureResult q = kappa_quadrature(state, params, contract, grid, quad_tol);
    rep.n_y.push_back(grid.n_y);
    rep.n_t.push_back(grid.n_t);
    rep.kappa.push_back(q.kappa);
    grid.n_y *= 2;
    grid.n_t *= 2;
  }
  for (std::size_t i = 1; i + 1 < rep.kappa.size(); ++i) {
    rep.ratios.push_back((rep.kappa[i] - rep.kappa[i - 1]) / (rep.kappa[i + 1] - rep.kappa[i]));
  }
  return rep;
}

}  // namespace volswap::pde
