#include "volswap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "volswap/errors.hpp"
#include "volswap/series_pricer.hpp"
#include "volswap/specfun.hpp"

namespace volswap::verify {

namespace {

using specfun::gamma_half_integer_over_sqrt_pi;
using specfun::kummer_1f1;

std::string fmt(const char* name, double v) {
  std::ostringstream s;
  s << name << "=" << v;
  return s.str();
}

ExactRational factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return ExactRational(f);
}

std::string to_fraction(const ExactRational& q) {
  std::ostringstream s;
  s << boost::multiprecision::numerator(q) << "/" << boost::multiprecision::denominator(q);
  return s.str();
}

// Index of the smallest |t|, and whether the terms after it grow again.
bool terms_grow(const std::vector<double>& t) {
  if (t.size() < 2) return false;
  std::size_t m = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs(t[i]) < std::abs(t[m])) m = i;
  }
  return m + 1 < t.size() && std::abs(t.back()) > std::abs(t[m]);
}

// sign(b_n) exp(log|b_n| + E_n tau + n log zeta), the zeta-polynomial part of
// the n-th kappa term without 1F1.
double term_weight(std::size_t n, double zeta, double alpha2_tau) {
  const double b = series::coeff_b(n);
  const double m = static_cast<double>(n);
  const double log_mag =
      std::log(std::abs(b)) + alpha2_tau * m * (2.0 * m - 1.0) + (n > 0 ? m * std::log(zeta) : 0.0);
  return std::copysign(std::exp(log_mag), b);
}

// Truncated kappa at (tau, sigma, nu), n < n_terms.
double kappa_truncated(double tau, double sigma, double nu, double alpha, double tenor,
                       std::size_t n_terms) {
  const double zeta = sigma * sigma / (2.0 * alpha * alpha * nu);
  double sum = 0.0;
  for (std::size_t n = 0; n < n_terms; ++n) sum += series::series_term(n, zeta, alpha * alpha * tau);
  return std::sqrt(nu) / tenor * sum;
}

}  // namespace

ResidualReport make_report(std::string point, double residual, double scale, double tolerance) {
  ResidualReport r;
  r.point = std::move(point);
  r.residual = residual;
  r.scale = scale > 0.0 ? scale : 1.0;
  r.tolerance = tolerance;
  r.pass = std::isfinite(residual) && std::abs(residual) / r.scale <= tolerance;
  return r;
}

ResidualReport check_bessel_sqrt_expansion(double y, std::size_t n_terms, double tolerance) {
  if (!(y > 0.0)) throw DomainError("check_bessel_sqrt_expansion: y must be > 0");
  double sum = 0.0;
  for (std::size_t n = 0; n < n_terms; ++n) {
    const double order = 2.0 * static_cast<double>(n) - 0.5;
    sum += series::coeff_a(n) * specfun::bessel_i(order, y).value;
  }
  sum /= std::sqrt(2.0);
  const double target = 1.0 / std::sqrt(y);
  return make_report(fmt("y", y) + " " + fmt("n_terms", static_cast<double>(n_terms)),
                     sum - target, target, tolerance);
}

ResidualReport check_psi_pde_residual(double tau, double y, double alpha, std::size_t n_terms,
                                      double tolerance) {
  if (!(tau >= 0.0)) throw DomainError("check_psi_pde_residual: tau must be >= 0");
  if (!(y > 0.0)) throw DomainError("check_psi_pde_residual: y must be > 0");
  if (!(alpha > 0.0)) throw DomainError("check_psi_pde_residual: alpha must be > 0");
  const double half_a2 = 0.5 * alpha * alpha;
  const double root = std::sqrt(y);
  double residual = 0.0;
  double scale = 0.0;
  std::vector<double> magnitudes;
  for (std::size_t n = 0; n < n_terms; ++n) {
    const double nu = 2.0 * static_cast<double>(n) - 0.5;
    const double e = series::energy_e(n, alpha);
    const double A = series::coeff_a(n) * std::exp(e * tau) / std::sqrt(2.0);
    const double i0 = specfun::bessel_i(nu, y).value;
    const double im1 = specfun::bessel_i(nu - 1.0, y).value;
    const double ip1 = specfun::bessel_i(nu + 1.0, y).value;
    const double im2 = specfun::bessel_i(nu - 2.0, y).value;
    const double ip2 = specfun::bessel_i(nu + 2.0, y).value;
    const double d1 = 0.5 * (im1 + ip1);
    const double d2 = 0.25 * (im2 + 2.0 * i0 + ip2);
    // F = sqrt(y) I_nu(y) and its second derivative.
    const double f = root * i0;
    const double f2 = -0.25 * i0 / (y * root) + d1 / root + root * d2;
    const double lhs = A * e * f;
    const double rhs = half_a2 * A * y * y * (f2 - f);
    residual += lhs - rhs;
    scale += std::abs(lhs) + half_a2 * std::abs(A) * y * y * (std::abs(f2) + std::abs(f));
    magnitudes.push_back(A * f);
  }
  if (terms_grow(magnitudes)) {
    throw InconclusiveError("check_psi_pde_residual: terms grow before n_terms = " +
                            std::to_string(n_terms) + "; the truncated series is past its blow-up index");
  }
  return make_report(fmt("tau", tau) + " " + fmt("y", y) + " " + fmt("alpha", alpha) + " " +
                         fmt("n_terms", static_cast<double>(n_terms)),
                     residual, scale, tolerance);
}

FunctionalReport check_functional_residual(const MarketState& state, const SabrParams& params,
                                           const SwapContract& contract, std::size_t n_terms,
                                           double tolerance, double fd_step,
                                           double fd_tolerance) {
  const series::SeriesVariables v = series::series_variables(state, params, contract);
  const double alpha = params.alpha();
  const double a2 = alpha * alpha;
  const double zeta = v.zeta;
  const double pre = std::sqrt(state.nu) / contract.tenor();
  std::ostringstream where;
  where << "alpha=" << alpha << " sigma=" << state.sigma << " nu=" << state.nu
        << " tau=" << v.tau << " zeta=" << zeta;

  FunctionalReport out;
  double d_sum = 0.0, v_sum = 0.0, d_abs = 0.0, v_abs = 0.0;
  std::vector<double> magnitudes;
  for (std::size_t n = 0; n < n_terms; ++n) {
    const double m = static_cast<double>(n);
    const double a = m - 0.5;
    const double b = 2.0 * m + 0.5;
    const double f = kummer_1f1(a, b, zeta).value;
    const double f1 = a / b * kummer_1f1(a + 1.0, b + 1.0, zeta).value;
    const double f2 = a * (a + 1.0) / (b * (b + 1.0)) * kummer_1f1(a + 2.0, b + 2.0, zeta).value;
    const double w = pre * term_weight(n, zeta, a2 * v.tau);

    // D_t K_n = -E_n K_n + sigma^2 dK_n/dnu with d zeta / d nu = -zeta / nu.
    const double d_parts[] = {f * (0.5 * zeta - zeta * m), -f * m * (m - 0.5), -zeta * zeta * f1};
    // (alpha^2 sigma^2 / 2) d^2 K_n / d sigma^2 with d zeta / d sigma = 2 zeta / sigma.
    const double v_parts[] = {(2.0 * m * m - m) * f, (4.0 * m + 1.0) * zeta * f1,
                              2.0 * zeta * zeta * f2};
    double dn = 0.0, vn = 0.0, dn_abs = 0.0, vn_abs = 0.0;
    for (double p : d_parts) {
      dn += 2.0 * a2 * w * p;
      dn_abs += 2.0 * a2 * std::abs(w * p);
    }
    for (double p : v_parts) {
      vn += a2 * w * p;
      vn_abs += a2 * std::abs(w * p);
    }
    out.per_term.push_back(make_report(where.str() + " n=" + std::to_string(n), dn + vn,
                                       dn_abs + vn_abs, tolerance));
    d_sum += dn;
    v_sum += vn;
    d_abs += dn_abs;
    v_abs += vn_abs;
    magnitudes.push_back(w * f);
  }
  out.combined = make_report(where.str() + " sum n<" + std::to_string(n_terms), d_sum + v_sum,
                             d_abs + v_abs, tolerance);
  out.combined.inconclusive = terms_grow(magnitudes);

  // Finite differences on the same truncated sum.
  const double h = fd_step;
  const double s = state.sigma;
  const double T = contract.tenor();
  // Fourth-order central stencils: the high modes carry rates up to E_n, so
  // second-order differences lose accuracy when alpha^2 tau is not small.
  auto along_t = [&](double k) {
    return kappa_truncated(v.tau - k * h, s, state.nu + s * s * k * h, alpha, T, n_terms);
  };
  const double dt_fd =
      (8.0 * (along_t(1.0) - along_t(-1.0)) - (along_t(2.0) - along_t(-2.0))) / (12.0 * h);
  out.fd_time = make_report(where.str() + " D_t", d_sum - dt_fd, std::max(d_abs, std::abs(dt_fd)),
                            fd_tolerance);

  auto along_s = [&](double k) {
    return kappa_truncated(v.tau, s + k * h, state.nu, alpha, T, n_terms);
  };
  const double d2 = (16.0 * (along_s(1.0) + along_s(-1.0)) - (along_s(2.0) + along_s(-2.0)) -
                     30.0 * along_s(0.0)) /
                    (12.0 * h * h);
  const double vert_fd = 0.5 * a2 * s * s * d2;
  out.fd_sigma = make_report(where.str() + " vertical", v_sum - vert_fd,
                             std::max(v_abs, std::abs(vert_fd)), fd_tolerance);
  out.fd_time.inconclusive = out.combined.inconclusive;
  out.fd_sigma.inconclusive = out.combined.inconclusive;
  return out;
}

ExactRational terminal_identity_sum(std::size_t s) {
  ExactRational sum = 0;
  const long sl = static_cast<long>(s);
  for (long n = 0; n <= sl; ++n) {
    ExactRational term = ExactRational(4 * n - 1, 2) * gamma_half_integer_over_sqrt_pi(2 * n - 1) /
                         (factorial(static_cast<std::size_t>(n)) *
                          factorial(static_cast<std::size_t>(sl - n)) *
                          gamma_half_integer_over_sqrt_pi(2 * sl + 2 * n + 1));
    if (n % 2 == 0) term = -term;
    sum += term;
  }
  return sum;
}

ExactRational check_terminal_identity(std::size_t s) {
  if (s < 1) throw DomainError("check_terminal_identity: s must be >= 1");
  return terminal_identity_sum(s);
}

ExactRational terminal_leading_coefficient() {
  // Gamma(-1/2) / (2 sqrt(pi)) = -1.
  const ExactRational norm = gamma_half_integer_over_sqrt_pi(-1) / 2;
  return terminal_identity_sum(0) * norm;
}

ResidualReport check_kummer_ode(double a, double b, double z, double tolerance) {
  if (b <= 0.0 && std::floor(b) == b) throw DomainError("check_kummer_ode: b is a non-positive integer");
  if (!(z >= 0.0)) throw DomainError("check_kummer_ode: z must be >= 0");
  const double f = kummer_1f1(a, b, z).value;
  const double f1 = a / b * kummer_1f1(a + 1.0, b + 1.0, z).value;
  const double f2 = a * (a + 1.0) / (b * (b + 1.0)) * kummer_1f1(a + 2.0, b + 2.0, z).value;
  const double residual = z * f2 - (z - b) * f1 - a * f;
  return make_report(fmt("a", a) + " " + fmt("b", b) + " " + fmt("z", z), residual,
                     std::max(1.0, std::abs(f)), tolerance);
}

ResidualReport check_j0_forms(double z, double tolerance) {
  const double closed = series::j0_closed_form(z);
  const double hyper = series::j0_hypergeometric_form(z);
  return make_report(fmt("z", z), closed - hyper, std::abs(hyper), tolerance);
}

std::vector<SuiteEntry> run_suite(const std::string& only, std::size_t n_terms) {
  static const char* kChecks[] = {"terminal", "bessel", "psi_pde", "functional", "kummer", "j0"};
  if (!only.empty() && std::find(std::begin(kChecks), std::end(kChecks), only) == std::end(kChecks)) {
    throw DomainError("run_suite: unknown check '" + only + "'");
  }
  auto wanted = [&](const char* name) { return only.empty() || only == name; };
  std::vector<SuiteEntry> out;

  if (wanted("terminal")) {
    const ExactRational lead = terminal_leading_coefficient();
    ResidualReport r = make_report("s=0 leading coefficient", to_double(lead - 1), 1.0, 0.0);
    r.pass = lead == 1;
    out.push_back({"terminal", r, to_fraction(lead)});
    for (std::size_t s = 1; s <= 40; ++s) {
      const ExactRational v = check_terminal_identity(s);
      ResidualReport rs = make_report("s=" + std::to_string(s), to_double(v), 1.0, 0.0);
      rs.pass = v == 0;
      out.push_back({"terminal", rs, to_fraction(v)});
    }
  }
  if (wanted("bessel")) {
    for (double y : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      out.push_back({"bessel", check_bessel_sqrt_expansion(y, 60), ""});
    }
  }
  if (wanted("psi_pde")) {
    for (double tau : {0.0, 0.1, 0.25}) {
      for (double y : {0.5, 1.0, 3.0}) {
        try {
          out.push_back({"psi_pde", check_psi_pde_residual(tau, y, 0.3, 20), ""});
        } catch (const InconclusiveError& e) {
          ResidualReport r = make_report(e.what(), 0.0, 1.0, 1e-6);
          r.pass = false;
          r.inconclusive = true;
          out.push_back({"psi_pde", r, ""});
        }
      }
    }
  }
  if (wanted("functional")) {
    const double nu = 0.04;
    const SwapContract contract(0.0, 1.0, 0.0);
    for (double alpha : {0.2, 0.5}) {
      for (double tau : {0.1, 0.5}) {
        for (double zeta : {0.5, 2.0, 8.0}) {
          const MarketState st{1.0 - tau, std::sqrt(2.0 * alpha * alpha * nu * zeta), nu};
          FunctionalReport f = check_functional_residual(st, SabrParams(alpha), contract, n_terms);
          for (auto& r : f.per_term) out.push_back({"functional", r, ""});
          out.push_back({"functional", f.combined, ""});
          out.push_back({"functional", f.fd_time, ""});
          out.push_back({"functional", f.fd_sigma, ""});
        }
      }
    }
    const MarketState st{0.5, 0.25, 0.03};
    FunctionalReport f = check_functional_residual(st, SabrParams(0.4), contract, n_terms);
    out.push_back({"functional", f.fd_time, ""});
    out.push_back({"functional", f.fd_sigma, ""});
  }
  if (wanted("kummer")) {
    const double cases[][3] = {{-0.5, 0.5, 1.0},  {1.5, 4.5, 4.0},   {1.5, 4.5, 0.25},
                               {-0.5, 0.5, 20.0}, {4.5, 10.5, 8.0},  {9.5, 20.5, 2.0},
                               {-0.5, 0.5, 45.0}, {2.5, 6.5, 60.0},  {0.5, 2.5, 1e-6}};
    for (const auto& c : cases) out.push_back({"kummer", check_kummer_ode(c[0], c[1], c[2]), ""});
  }
  if (wanted("j0")) {
    for (int i = 0; i < 50; ++i) {
      const double z = 1e-2 * std::pow(5000.0, static_cast<double>(i) / 49.0);
      out.push_back({"j0", check_j0_forms(z), ""});
    }
  }
  return out;
}

}  // namespace volswap::verify
