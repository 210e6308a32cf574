#include "volswap/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "volswap/errors.hpp"
#include "volswap/mc_engine.hpp"
#include "volswap/model.hpp"
#include "volswap/pde_engine.hpp"
#include "volswap/series_pricer.hpp"
#include "volswap/verify.hpp"

#ifndef VOLSWAP_VERSION
#define VOLSWAP_VERSION "unknown"
#endif

namespace volswap::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct StateArgs {
  double alpha = 0.0;
  double rho = 0.0;
  double sigma = 0.0;
  double nu = 0.0;
  double t0 = 0.0;
  double tenor = 0.0;
  double t = 0.0;
  double strike = 0.0;
  double notional = 1.0;
  std::optional<double> rate;
  std::optional<double> discount;
  std::string annualization = "paper";
};

struct SeriesArgs {
  std::size_t max_terms = 64;
  double rel_tol = 1e-10;
  std::string mode = "adaptive";
  bool no_resummation = false;
};

struct McArgs {
  std::size_t paths = 100000;
  std::size_t steps = 500;
  std::uint64_t seed = 0;
  bool antithetic = false;
  unsigned threads = 0;
};

struct PdeArgs {
  std::size_t ny = 400;
  std::size_t nt = 400;
  double y_max = 0.0;
  double boundary_tol = 1e-8;
  double quad_tol = 1e-8;
  std::size_t refine = 0;
};

struct CompareArgs {
  std::vector<double> alphas;
  std::vector<double> taus;
  std::vector<double> zetas;
  double nu = 0.04;
  double t0 = 0.0;
  double tenor = 1.0;
  bool no_pde = false;
  bool count_resummed = false;
  std::string annualization = "paper";
};

void add_annualization(CLI::App* app, std::string& target) {
  app->add_option("--annualization", target, "paper: sqrt(int)/T, market: sqrt(int/T)")
      ->check(CLI::IsMember({"paper", "market"}));
}

void add_state(CLI::App* app, StateArgs& a) {
  app->add_option("--alpha", a.alpha, "Vol of vol")->required();
  app->add_option("--rho", a.rho, "Correlation (not used by any pricer)");
  app->add_option("--sigma", a.sigma, "Spot volatility at t")->required();
  app->add_option("--nu", a.nu, "Realized variance accrued since t0")->required();
  app->add_option("--t0", a.t0, "Accrual start");
  app->add_option("--tenor", a.tenor, "Accrual length T")->required();
  app->add_option("--t", a.t, "Valuation time")->required();
  app->add_option("--strike", a.strike, "Volatility strike");
  app->add_option("--notional", a.notional, "Notional per volatility point");
  auto* rate = app->add_option("--rate", a.rate, "Flat continuously compounded rate (default 0)");
  auto* df = app->add_option("--discount-factor", a.discount, "Explicit discount factor to settlement");
  rate->excludes(df);
  add_annualization(app, a.annualization);
}

void add_series(CLI::App* app, SeriesArgs& a) {
  app->add_option("--max-terms", a.max_terms, "Series term cap");
  app->add_option("--rel-tol", a.rel_tol, "Series relative tolerance");
  app->add_option("--mode", a.mode, "adaptive or fixed")->check(CLI::IsMember({"adaptive", "fixed"}));
  app->add_flag("--no-resummation", a.no_resummation,
                "Return the direct partial sum even when it does not converge");
}

void add_mc(CLI::App* app, McArgs& a, bool seed_required) {
  app->add_option("--paths", a.paths, "Monte Carlo paths");
  app->add_option("--steps", a.steps, "Time steps per path");
  auto* seed = app->add_option("--seed", a.seed, "RNG seed");
  if (seed_required) seed->required();
  app->add_flag("--antithetic", a.antithetic, "Antithetic pairs");
  app->add_option("--threads", a.threads, "Worker threads, 0 = all cores")->envname("VOLSWAP_THREADS");
}

void add_pde(CLI::App* app, PdeArgs& a) {
  app->add_option("--ny", a.ny, "Grid nodes in y");
  app->add_option("--nt", a.nt, "Time steps");
  app->add_option("--y-max", a.y_max, "Upper y boundary, 0 = automatic");
  app->add_option("--boundary-tol", a.boundary_tol, "Tolerance of the far-boundary check");
  app->add_option("--quad-tol", a.quad_tol, "Tail bound of the x-quadrature");
  app->add_option("--refine", a.refine, "Extra grid levels, each doubling ny and nt");
}

DiscountCurve curve_of(const StateArgs& a) {
  if (a.discount) return DiscountCurve::explicit_factor(*a.discount);
  return DiscountCurve::flat(a.rate.value_or(0.0));
}

series::SeriesConfig series_config(const SeriesArgs& a) {
  series::SeriesConfig c;
  c.max_terms = a.max_terms;
  c.rel_tol = a.rel_tol;
  c.mode = a.mode == "fixed" ? series::SeriesMode::fixed_n : series::SeriesMode::adaptive_asymptotic;
  c.resummation = !a.no_resummation;
  c.validate();
  return c;
}

mc::McConfig mc_config(const McArgs& a) {
  mc::McConfig c;
  c.n_paths = a.paths;
  c.n_steps = a.steps;
  c.seed = a.seed;
  c.antithetic = a.antithetic;
  c.threads = a.threads;
  c.validate();
  return c;
}

pde::GridSpec grid_spec(const PdeArgs& a) {
  pde::GridSpec g;
  g.n_y = a.ny;
  g.n_t = a.nt;
  g.y_max = a.y_max;
  g.boundary_tol = a.boundary_tol;
  g.validate();
  return g;
}

// kappa in the requested display convention.
double annualize(double kappa, double tenor, const std::string& convention) {
  return convention == "market" ? std::sqrt(tenor) * kappa : kappa;
}

json state_params(const StateArgs& a) {
  json p;
  p["alpha"] = a.alpha;
  p["rho"] = a.rho;
  p["sigma"] = a.sigma;
  p["nu"] = a.nu;
  p["t0"] = a.t0;
  p["tenor"] = a.tenor;
  p["t"] = a.t;
  p["strike"] = a.strike;
  p["notional"] = a.notional;
  if (a.discount) {
    p["discount_factor"] = *a.discount;
  } else {
    p["rate"] = a.rate.value_or(0.0);
  }
  p["annualization"] = a.annualization;
  return p;
}

void add_series_params(json& p, const SeriesArgs& a) {
  p["max_terms"] = a.max_terms;
  p["rel_tol"] = a.rel_tol;
  p["mode"] = a.mode;
  p["resummation"] = !a.no_resummation;
}

void add_mc_params(json& p, const McArgs& a) {
  p["paths"] = a.paths;
  p["steps"] = a.steps;
  p["seed"] = a.seed;
  p["antithetic"] = a.antithetic;
}

void add_pde_params(json& p, const PdeArgs& a) {
  p["ny"] = a.ny;
  p["nt"] = a.nt;
  p["y_max"] = a.y_max;
  p["boundary_tol"] = a.boundary_tol;
  p["quad_tol"] = a.quad_tol;
  p["refine"] = a.refine;
}

json manifest(const std::string& command, json params, std::optional<std::uint64_t> seed,
              Clock::time_point start) {
  json m;
  m["command"] = command;
  m["params"] = std::move(params);
  m["seed"] = seed ? json(*seed) : json(nullptr);
  m["version"] = VOLSWAP_VERSION;
  m["duration_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  return m;
}

std::vector<std::string> series_warnings(const SeriesDiagnostics& d) {
  std::vector<std::string> w;
  if (d.regime == Regime::diverging) {
    w.push_back(d.summation == Summation::gaussian_transform
                    ? "SERIES_DIVERGING: kappa is the Gaussian-transform summation"
                    : "SERIES_DIVERGING: kappa is an unreliable partial sum");
  } else if (d.regime == Regime::asymptotic_truncated) {
    w.push_back("SERIES_ASYMPTOTIC_TRUNCATED");
  }
  if (d.regime == Regime::convergent_like && !d.converged) w.push_back("SERIES_MAX_TERMS_REACHED");
  return w;
}

struct Sink {
  std::ostream& out;
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file " + path);
    f << text;
  }
};

int cmd_price(const StateArgs& s, const SeriesArgs& sa, const Sink& sink, Clock::time_point start) {
  const SabrParams params(s.alpha, s.rho);
  const SwapContract contract(s.t0, s.tenor, s.strike, s.notional);
  const MarketState state{s.t, s.sigma, s.nu};
  const series::KappaSeries k = series::kappa_series(state, params, contract, series_config(sa));
  const double df = discount_factor(curve_of(s), s.t, contract);
  const double kappa = annualize(k.kappa, s.tenor, s.annualization);
  std::vector<std::string> warnings = series_warnings(k.diagnostics);
  if (!(k.diagnostics.error_estimate <= sa.rel_tol * std::abs(k.kappa))) {
    warnings.push_back("SERIES_INACCURATE: error estimate exceeds rel_tol; use an oracle");
  }
  json fv = nullptr;
  if (std::isfinite(kappa) && kappa >= 0.0) {
    fv = series::fair_value(kappa, contract, df, k.diagnostics).fair_value;
  } else {
    warnings.push_back("KAPPA_OUT_OF_RANGE: no fair value for a negative or non-finite partial sum");
  }

  json doc;
  doc["kappa"] = kappa;
  doc["fair_value"] = fv;
  doc["discount_factor"] = df;
  doc["annualization"] = s.annualization;
  doc["terms_used"] = k.diagnostics.terms_used;
  doc["min_term_index"] = k.diagnostics.min_term_index;
  doc["min_term_abs"] = k.diagnostics.min_term_abs;
  doc["regime"] = std::string(to_string(k.diagnostics.regime));
  doc["summation"] = std::string(to_string(k.diagnostics.summation));
  doc["converged"] = k.diagnostics.converged;
  doc["error_estimate"] = annualize(k.diagnostics.error_estimate, s.tenor, s.annualization);
  doc["warnings"] = warnings;
  json p = state_params(s);
  add_series_params(p, sa);
  doc["manifest"] = manifest("price", std::move(p), std::nullopt, start);
  sink.write(doc.dump(2) + "\n");
  return k.diagnostics.regime == Regime::diverging ? exit_diverging : exit_ok;
}

int cmd_oracle_mc(const StateArgs& s, const McArgs& ma, const Sink& sink, Clock::time_point start) {
  const SabrParams params(s.alpha, s.rho);
  const SwapContract contract(s.t0, s.tenor, s.strike, s.notional);
  const MarketState state{s.t, s.sigma, s.nu};
  const mc::McEstimate e = mc::kappa_mc(state, params, contract, mc_config(ma));
  const double df = discount_factor(curve_of(s), s.t, contract);
  const double kappa = annualize(e.mean, s.tenor, s.annualization);
  const PricingResult r = series::fair_value(kappa, contract, df);

  json doc;
  doc["mode"] = "mc";
  doc["kappa"] = kappa;
  doc["std_error"] = annualize(e.std_error, s.tenor, s.annualization);
  doc["fair_value"] = r.fair_value;
  doc["discount_factor"] = df;
  doc["annualization"] = s.annualization;
  doc["n_paths"] = e.n_paths;
  doc["n_draws"] = e.n_draws;
  doc["n_steps"] = ma.steps;
  doc["warnings"] = json::array();
  json p = state_params(s);
  add_mc_params(p, ma);
  doc["manifest"] = manifest("oracle mc", std::move(p), ma.seed, start);
  sink.write(doc.dump(2) + "\n");
  return exit_ok;
}

int cmd_oracle_pde(const StateArgs& s, const PdeArgs& pa, const Sink& sink, Clock::time_point start) {
  const SabrParams params(s.alpha, s.rho);
  const SwapContract contract(s.t0, s.tenor, s.strike, s.notional);
  const MarketState state{s.t, s.sigma, s.nu};
  const pde::GridSpec grid = grid_spec(pa);
  const double df = discount_factor(curve_of(s), s.t, contract);

  json doc;
  doc["mode"] = "pde";
  json report;
  double raw = 0.0;
  std::vector<std::string> warnings;
  if (pa.refine > 0) {
    const pde::RefinementReport rr = pde::refine_kappa(state, params, contract, grid, pa.refine, pa.quad_tol);
    raw = rr.kappa.back();
    report["y_max"] = rr.y_max;
    json levels = json::array();
    for (std::size_t i = 0; i < rr.kappa.size(); ++i) {
      levels.push_back({{"n_y", rr.n_y[i]},
                        {"n_t", rr.n_t[i]},
                        {"kappa", annualize(rr.kappa[i], s.tenor, s.annualization)}});
    }
    report["levels"] = levels;
    report["ratios"] = rr.ratios;
    if (rr.ratios.empty()) warnings.push_back("PDE_REFINE_NEEDS_TWO_LEVELS_FOR_A_RATIO");
  } else {
    const pde::QuadratureResult q = pde::kappa_quadrature(state, params, contract, grid, pa.quad_tol);
    raw = q.kappa;
    report["y_max"] = q.y_max;
    report["n_y"] = q.n_y;
    report["n_t"] = q.n_t;
    report["x_cut"] = q.x_cut;
    report["tail_bound"] = q.tail_bound;
    report["quad_error"] = q.quad_error;
    warnings = q.warnings;
  }
  const double kappa = annualize(raw, s.tenor, s.annualization);
  doc["kappa"] = kappa;
  doc["fair_value"] = series::fair_value(kappa, contract, df).fair_value;
  doc["discount_factor"] = df;
  doc["annualization"] = s.annualization;
  doc["grid_report"] = report;
  doc["warnings"] = warnings;
  json p = state_params(s);
  add_pde_params(p, pa);
  doc["manifest"] = manifest("oracle pde", std::move(p), std::nullopt, start);
  sink.write(doc.dump(2) + "\n");
  return exit_ok;
}

std::string csv_field(double x) { return std::isfinite(x) ? format_number(x) : ""; }

int cmd_compare(const CompareArgs& ca, const SeriesArgs& sa, const McArgs& ma, const PdeArgs& pa,
                const Sink& sink, Clock::time_point start) {
  if (ca.alphas.empty() || ca.taus.empty() || ca.zetas.empty()) {
    throw DomainError("compare: --alpha, --tau and --zeta need at least one value each");
  }
  for (double tau : ca.taus) {
    if (!(tau >= 0.0 && tau <= ca.tenor)) throw DomainError("compare: every tau must lie in [0, tenor]");
  }
  for (double z : ca.zetas) {
    if (!(z > 0.0)) throw DomainError("compare: every zeta must be > 0");
  }
  if (!(ca.nu > 0.0)) throw DomainError("compare: nu must be > 0");
  const series::SeriesConfig scfg = series_config(sa);
  const mc::McConfig mcfg = mc_config(ma);
  const pde::GridSpec grid = grid_spec(pa);

  std::ostringstream rows;
  rows << "alpha,tau,zeta,kappa_series,regime,summation,kappa_mc,mc_se,kappa_pde,abs_diff_mc_sigmas,"
          "included\n";
  bool ok = true;
  const SwapContract contract(ca.t0, ca.tenor, 0.0);
  for (double alpha : ca.alphas) {
    const SabrParams params(alpha);
    for (double tau : ca.taus) {
      for (double zeta : ca.zetas) {
        const MarketState state{ca.t0 + ca.tenor - tau, std::sqrt(2.0 * alpha * alpha * ca.nu * zeta),
                                ca.nu};
        const series::KappaSeries ks = series::kappa_series(state, params, contract, scfg);
        const mc::McEstimate me = mc::kappa_mc(state, params, contract, mcfg);
        double kpde = std::nan("");
        if (!ca.no_pde) {
          try {
            kpde = pde::kappa_quadrature(state, params, contract, grid, pa.quad_tol).kappa;
          } catch (const AccuracyError&) {
          } catch (const InstabilityError&) {
          }
        }
        const double ks_d = annualize(ks.kappa, ca.tenor, ca.annualization);
        const double mc_d = annualize(me.mean, ca.tenor, ca.annualization);
        const double se_d = annualize(me.std_error, ca.tenor, ca.annualization);
        const double diff = std::abs(ks_d - mc_d);
        // MC error and series error combined; the floor keeps tau = 0 rows,
        // where the MC error is exactly 0, from dividing rounding by zero.
        const double err_d = annualize(ks.diagnostics.error_estimate, ca.tenor, ca.annualization);
        const double spread = std::max(std::hypot(se_d, err_d), 1e-12 * std::abs(ks_d));
        const double sigmas = diff == 0.0 ? 0.0 : diff / spread;
        const bool included =
            ks.diagnostics.regime != Regime::diverging ||
            (ca.count_resummed && ks.diagnostics.summation == Summation::gaussian_transform);
        if (included && !(sigmas <= 3.0)) ok = false;
        rows << format_number(alpha) << ',' << format_number(tau) << ',' << format_number(zeta) << ','
             << csv_field(ks_d) << ',' << to_string(ks.diagnostics.regime) << ','
             << to_string(ks.diagnostics.summation) << ',' << csv_field(mc_d) << ',' << csv_field(se_d)
             << ',' << csv_field(annualize(kpde, ca.tenor, ca.annualization)) << ','
             << csv_field(sigmas) << ',' << (included ? "true" : "false") << '\n';
      }
    }
  }

  json p;
  p["alpha"] = ca.alphas;
  p["tau"] = ca.taus;
  p["zeta"] = ca.zetas;
  p["nu"] = ca.nu;
  p["t0"] = ca.t0;
  p["tenor"] = ca.tenor;
  p["pde"] = !ca.no_pde;
  p["count_resummed"] = ca.count_resummed;
  p["annualization"] = ca.annualization;
  add_series_params(p, sa);
  add_mc_params(p, ma);
  add_pde_params(p, pa);
  const json m = manifest("compare", std::move(p), ma.seed, start);
  std::ostringstream doc;
  doc << "# manifest: " << m.dump() << '\n';
  doc << "# passed: " << (ok ? "true" : "false") << '\n';
  doc << rows.str();
  sink.write(doc.str());
  return ok ? exit_ok : exit_compare_failed;
}

int cmd_verify(const std::string& check, std::size_t n_terms, const Sink& sink,
               Clock::time_point start) {
  const std::vector<verify::SuiteEntry> entries = verify::run_suite(check, n_terms);
  json reports = json::array();
  std::size_t n_pass = 0, n_fail = 0, n_inconclusive = 0;
  for (const auto& e : entries) {
    const verify::ResidualReport& r = e.report;
    const char* verdict = r.inconclusive ? "inconclusive" : (r.pass ? "pass" : "fail");
    if (r.inconclusive) {
      ++n_inconclusive;
    } else if (r.pass) {
      ++n_pass;
    } else {
      ++n_fail;
    }
    json j;
    j["check"] = e.check;
    j["point"] = r.point;
    j["residual"] = r.residual;
    j["scale"] = r.scale;
    j["relative"] = std::abs(r.residual) / r.scale;
    j["tolerance"] = r.tolerance;
    j["verdict"] = verdict;
    if (!e.exact.empty()) j["exact"] = e.exact;
    reports.push_back(std::move(j));
  }
  json doc;
  doc["reports"] = std::move(reports);
  doc["summary"] = {{"pass", n_pass}, {"fail", n_fail}, {"inconclusive", n_inconclusive}};
  json p;
  p["check"] = check.empty() ? json("all") : json(check);
  p["n_terms"] = n_terms;
  doc["manifest"] = manifest("verify", std::move(p), std::nullopt, start);
  sink.write(doc.dump(2) + "\n");
  return n_fail == 0 ? exit_ok : exit_numerical;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--config", "cannot read " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--config", path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    if (starts_with(key, "--")) key = key.substr(2);
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ValidationError("--config", "needs a path");
      path = args[++i];
    } else if (starts_with(args[i], "--config=")) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;

  std::size_t head = 0;
  while (head < rest.size() && !starts_with(rest[head], "-")) ++head;
  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config(path)) {
    const std::string flag = "--" + key;
    bool explicit_flag = false;
    for (const auto& a : rest) {
      if (a == flag || starts_with(a, flag + "=")) explicit_flag = true;
    }
    if (!explicit_flag) injected.push_back(flag + "=" + value);
  }
  std::vector<std::string> out(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(head));
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), rest.begin() + static_cast<std::ptrdiff_t>(head), rest.end());
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  CLI::App app{"Volatility swap pricing under lognormal SABR", "volswap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", VOLSWAP_VERSION);
  app.add_option("--config", "key=value file; explicit flags take precedence");
  std::string output;
  app.add_option("--output", output, "Write the document here instead of standard output");

  StateArgs state;
  SeriesArgs series_args;
  McArgs mc_args;
  PdeArgs pde_args;
  CompareArgs compare_args;
  std::string check;
  std::size_t n_terms = 10;

  auto* price = app.add_subcommand("price", "Series price of the swap");
  add_state(price, state);
  add_series(price, series_args);
  price->add_option("--output", output, "Output path");

  auto* oracle = app.add_subcommand("oracle", "Monte Carlo or PDE benchmark for kappa");
  oracle->require_subcommand(1);
  auto* omc = oracle->add_subcommand("mc", "Monte Carlo");
  add_state(omc, state);
  add_mc(omc, mc_args, true);
  omc->add_option("--output", output, "Output path");
  auto* opde = oracle->add_subcommand("pde", "PDE for the Laplace transform plus quadrature");
  add_state(opde, state);
  add_pde(opde, pde_args);
  opde->add_option("--output", output, "Output path");

  auto* compare = app.add_subcommand("compare", "Series against MC and PDE on an (alpha, tau, zeta) grid");
  compare->add_option("--alpha", compare_args.alphas, "Vol-of-vol values")->required()->delimiter(',');
  compare->add_option("--tau", compare_args.taus, "Remaining times")->required()->delimiter(',');
  compare->add_option("--zeta", compare_args.zetas, "zeta = sigma^2 / (2 alpha^2 nu) values")
      ->required()
      ->delimiter(',');
  compare->add_option("--nu", compare_args.nu, "Accrued variance");
  compare->add_option("--t0", compare_args.t0, "Accrual start");
  compare->add_option("--tenor", compare_args.tenor, "Accrual length T");
  compare->add_flag("--no-pde", compare_args.no_pde, "Skip the PDE column");
  compare->add_flag("--count-resummed", compare_args.count_resummed,
                    "Also hold rows whose raw series diverges but was resummed to the 3 sigma test");
  add_annualization(compare, compare_args.annualization);
  add_series(compare, series_args);
  add_mc(compare, mc_args, false);
  add_pde(compare, pde_args);
  compare->add_option("--output", output, "Output path");

  auto* verify_cmd = app.add_subcommand("verify", "Identity and residual checks");
  verify_cmd->add_option("--check", check, "Run one check only")
      ->check(CLI::IsMember({"terminal", "bessel", "psi_pde", "functional", "kummer", "j0"}));
  verify_cmd->add_option("--n-terms", n_terms, "Terms in the functional check")
      ->check(CLI::Range(std::size_t{1}, std::size_t{60}));
  verify_cmd->add_option("--output", output, "Output path");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  }

  const Sink sink{out, output};
  try {
    if (price->parsed()) return cmd_price(state, series_args, sink, start);
    if (omc->parsed()) return cmd_oracle_mc(state, mc_args, sink, start);
    if (opde->parsed()) return cmd_oracle_pde(state, pde_args, sink, start);
    if (compare->parsed()) return cmd_compare(compare_args, series_args, mc_args, pde_args, sink, start);
    if (verify_cmd->parsed()) return cmd_verify(check, n_terms, sink, start);
  } catch (const DomainError& e) {
    err << "volswap: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "volswap: " << e.what() << "\n";
    return exit_numerical;
  }
  return exit_usage;
}

}  // namespace volswap::cli
