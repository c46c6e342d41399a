#pragma once

// Command line front end. Kept in a header so the test suite can drive it
// in-process through zpf::cli::run.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zpf/zpf.hpp"

namespace zpf::cli {

enum ExitCode : int { ok = 0, validation = 2, numeric = 3 };

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

inline double parse_real(const std::string& s, const char* what) {
  const auto v = zpf::detail::parse_double(zpf::detail::trim(s));
  if (!v) throw InvalidParameter(std::string("bad number for ") + what + ": '" + s + "'");
  return *v;
}

inline CosmologyContext load_context(const std::string& config_path) {
  if (config_path.empty()) return CosmologyContext(load_registry());
  std::ifstream in(config_path);
  if (!in) throw InvalidParameter("cannot open config file '" + config_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return CosmologyContext(load_registry(parse_config(buf.str())));
}

inline const char* method_name(TransitionMethod m) {
  return m == TransitionMethod::closed_form ? "closed_form" : "numeric_root";
}

} // namespace detail

struct GlobalOptions {
  std::string config;
  std::string format = "table";
  int sigfigs = 3;
  std::uint64_t seed = 20080101;
};

inline void print_constants(const CosmologyContext& ctx, OutputFormat fmt, int sig, std::ostream& out) {
  const auto& entries = ctx.registry().entries();
  if (fmt == OutputFormat::csv) {
    out << "name,value,unit,rel_sigma,source\n";
    for (const auto& e : entries)
      out << e.name << ',' << format_shortest(e.quantity.value()) << ',' << e.unit << ','
          << format_shortest(e.quantity.rel_sigma()) << ',' << e.source << '\n';
    return;
  }
  std::size_t wn = 4, wv = 5, wu = 4;
  for (const auto& e : entries) {
    wn = std::max(wn, e.name.size());
    wv = std::max(wv, format_sig(e.quantity.value(), sig).size());
    wu = std::max(wu, e.unit.size());
  }
  auto col = [](std::string s, std::size_t w) { return s + std::string(w - std::min(w, s.size()), ' '); };
  out << col("name", wn) << "  " << col("value", wv) << "  " << col("unit", wu) << "  "
      << col("rel_sigma", 9) << "  source\n";
  for (const auto& e : entries)
    out << col(e.name, wn) << "  " << col(format_sig(e.quantity.value(), sig), wv) << "  "
        << col(e.unit, wu) << "  " << col(format_sig(e.quantity.rel_sigma(), sig), 9) << "  "
        << e.source << '\n';
  const auto rho = ctx.critical_density();
  const auto R = ctx.hubble_radius();
  out << "derived: rho_crit = " << format_sig(rho.value(), sig) << " kg m^-3 (rel_sigma "
      << format_sig(rho.rel_sigma(), sig) << "), R = " << format_sig(R.value(), sig)
      << " m (rel_sigma " << format_sig(R.rel_sigma(), sig) << ")\n";
}

inline void print_transition(const TransitionResult& r, const Rational& a, double kappa,
                             const std::optional<MonteCarloResult>& mc, std::uint64_t seed,
                             OutputFormat fmt, int sig, std::ostream& out) {
  const auto& b = r.breakdown;
  if (fmt == OutputFormat::csv) {
    out << "a,kappa,lambda0_m,sigma_m,k0_per_m,rel_sigma,sigma_G,sigma_c,sigma_hbar,sigma_H,"
           "sigma_kappa,method";
    if (mc) out << ",mc_samples,mc_seed,mc_mean_m,mc_rel_sigma,mc_rejected";
    out << '\n';
    out << format_slope(a) << ',' << format_shortest(kappa) << ',' << format_sig(r.lambda0.value(), sig)
        << ',' << format_sig(r.abs_sigma(), sig) << ',' << format_sig(r.k0.value(), sig) << ','
        << format_sig(r.rel_sigma, sig) << ',' << format_sig(b.G, sig) << ',' << format_sig(b.c, sig)
        << ',' << format_sig(b.hbar, sig) << ',' << format_sig(b.H, sig) << ','
        << format_sig(b.kappa, sig) << ',' << detail::method_name(r.method);
    if (mc)
      out << ',' << mc->samples << ',' << seed << ',' << format_sig(mc->mean.value(), sig) << ','
          << format_sig(mc->rel_sigma, sig) << ',' << mc->rejected;
    out << '\n';
    return;
  }
  out << "a = " << format_slope(a) << ", kappa = " << format_shortest(kappa) << " ("
      << detail::method_name(r.method) << ")\n";
  out << "lambda0 = " << format_sig(r.lambda0.value(), sig) << " +- " << format_sig(r.abs_sigma(), sig)
      << " m   (rel " << format_sig(r.rel_sigma, sig) << ")\n";
  out << "k0      = " << format_sig(r.k0.value(), sig) << " 1/m\n";
  out << "relative sigma contributions:\n";
  const std::pair<const char*, double> parts[] = {
      {"G", b.G}, {"c", b.c}, {"hbar", b.hbar}, {"H", b.H}, {"kappa", b.kappa}};
  for (const auto& [name, v] : parts) out << "  " << name << std::string(7 - std::strlen(name), ' ')
                                            << format_sig(v, sig) << '\n';
  if (mc)
    out << "monte carlo: n = " << mc->samples << ", seed = " << seed
        << ", mean = " << format_sig(mc->mean.value(), sig) << " m, rel_sigma = "
        << format_sig(mc->rel_sigma, sig) << ", central 68% half width = "
        << format_sig(mc->central68_rel_half_width, sig) << ", rejected = " << mc->rejected << '\n';
}

//! Runs the CLI. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-point-field turbulence transition scale calculator", "zpf"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--config", g.config, "Constants override file (name = value [unit])");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"table", "csv"}));
  app.add_option("--sigfigs", g.sigfigs, "Significant figures in printed results")
      ->check(CLI::Range(1, 17));
  app.add_option("--seed", g.seed, "Monte Carlo seed");

  auto* constants = app.add_subcommand("constants", "Print the constant registry");

  auto* transition = app.add_subcommand("transition", "Transition scale lambda0 +- sigma");
  std::string t_slope;
  double t_kappa = 1.0, t_ekappa = 0.0;
  std::size_t t_mc = 0;
  bool t_numeric = false;
  transition->add_option("--slope", t_slope, "Spectral slope a (decimal or p/q)")->required();
  transition->add_option("--kappa", t_kappa, "Turbulence degree kappa in (0, 1]")->required();
  transition->add_option("--ekappa", t_ekappa, "Relative uncertainty of kappa");
  transition->add_option("--mc", t_mc, "Monte Carlo sample count (>= 1000)");
  transition->add_flag("--numeric", t_numeric, "Locate k0 by bisection instead of the closed form");

  auto* sweep = app.add_subcommand("sweep", "Grid of transition scales");
  std::string s_slopes, s_kappas, s_outputs, s_n0 = "paper";
  double s_ekappa = 0.0;
  sweep->add_option("--slopes", s_slopes, "Comma separated slopes")->required();
  sweep->add_option("--kappas", s_kappas, "Comma separated kappas")->required();
  sweep->add_option("--outputs", s_outputs, "Extra columns: epsilon,N,Ns");
  sweep->add_option("--ekappa", s_ekappa, "Relative uncertainty of kappa");
  sweep->add_option("--n0", s_n0, "N0 source for N/Ns columns")->check(CLI::IsMember({"paper", "computed"}));

  auto* dissipation = app.add_subcommand("dissipation", "Dissipation rate and solar-mass counts");
  std::string d_slope, d_n0 = "paper";
  double d_kappa = 1.0, d_days = 1.0, d_radius_lmin = 8.0;
  dissipation->add_option("--slope", d_slope, "Spectral slope a")->required();
  dissipation->add_option("--kappa", d_kappa, "Turbulence degree kappa")->required();
  dissipation->add_option("--window-days", d_days, "Budget window in days");
  dissipation->add_option("--radius-lightminutes", d_radius_lmin, "Rescaling radius in lightminutes");
  dissipation->add_option("--n0", d_n0, "N0 source")->check(CLI::IsMember({"paper", "computed"}));

  auto* bound = app.add_subcommand("bound", "kappa and lambda0 from a dissipation ceiling");
  std::string b_slope, b_n0 = "paper";
  double b_ns = 1e-12, b_days = 1.0, b_radius_lmin = 8.0;
  bound->add_option("--ns", b_ns, "Allowed solar masses per window inside the radius");
  bound->add_option("--slope", b_slope, "Spectral slope a")->required();
  bound->add_option("--window-days", b_days, "Budget window in days");
  bound->add_option("--radius-lightminutes", b_radius_lmin, "Radius in lightminutes");
  bound->add_option("--n0", b_n0, "N0 source")->check(CLI::IsMember({"paper", "computed"}));

  auto* spectrum = app.add_subcommand("spectrum", "Tabulate E(k) as CSV");
  std::string p_model, p_slope = "1.8", p_gamma = "2";
  double p_kappa = 1.0, p_kconst = 1.0;
  std::optional<double> p_kmin, p_kmax;
  std::optional<double> p_cutoff, p_amplitude, p_epsilon, p_rho;
  std::size_t p_points = 50;
  spectrum->add_option("--model", p_model, "Spectrum model")
      ->required()
      ->check(CLI::IsMember({"boyer", "truncated", "powerlaw", "ms"}));
  spectrum->add_option("--slope", p_slope, "powerlaw: slope a");
  spectrum->add_option("--kappa", p_kappa, "powerlaw: turbulence degree calibrating A");
  spectrum->add_option("--amplitude", p_amplitude, "powerlaw: explicit amplitude A in SI");
  spectrum->add_option("--cutoff", p_cutoff, "truncated: cutoff wavenumber (default 2 pi / r_p)");
  spectrum->add_option("--gamma", p_gamma, "ms: adiabatic index");
  spectrum->add_option("--epsilon", p_epsilon, "ms: injection rate W/m^3 (default 3 rho c^3 / R)");
  spectrum->add_option("--rho", p_rho, "ms: density kg/m^3 (default rho_crit)");
  spectrum->add_option("--kolmogorov-constant", p_kconst, "ms: constant C");
  spectrum->add_option("--kmin", p_kmin, "Lowest wavenumber (default 1/R)");
  spectrum->add_option("--kmax", p_kmax, "Highest wavenumber (default 2 pi / r_p)");
  spectrum->add_option("--points", p_points, "Number of log-spaced points")->check(CLI::Range(2, 1000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::validation;
  }

  try {
    const auto ctx = detail::load_context(g.config);
    const auto fmt = parse_format(g.format);
    const int sig = g.sigfigs;

    if (*constants) {
      print_constants(ctx, fmt, sig, out);
    } else if (*transition) {
      const auto a = Rational::parse(t_slope);
      const auto r = t_numeric ? transition_scale_numeric(a, t_kappa, ctx, t_ekappa)
                               : transition_scale(a, t_kappa, ctx, t_ekappa);
      std::optional<MonteCarloResult> mc;
      if (t_mc > 0) mc = monte_carlo_scale(a, t_kappa, t_mc, g.seed, ctx, t_ekappa);
      print_transition(r, a, t_kappa, mc, g.seed, fmt, sig, out);
    } else if (*sweep) {
      SweepSpec spec;
      for (const auto& s : detail::split(s_slopes)) spec.slopes.push_back(Rational::parse(s));
      for (const auto& s : detail::split(s_kappas)) spec.kappas.push_back(detail::parse_real(s, "kappa"));
      for (const auto& s : detail::split(s_outputs)) {
        if (s == "epsilon") spec.extras.epsilon = true;
        else if (s == "N") spec.extras.N = true;
        else if (s == "Ns") spec.extras.Ns = true;
        else if (s != "lambda0" && s != "sigma" && s != "k0")
          throw InvalidParameter("unknown output column '" + s + "'");
      }
      spec.e_kappa = s_ekappa;
      spec.n0_mode = parse_n0_mode(s_n0);
      const auto rows = run_sweep(spec, ctx);
      out << render(rows, fmt, spec.extras, sig);
      if (spec.extras.N || spec.extras.Ns) {
        (fmt == OutputFormat::csv ? err : out)
            << "# " << n0_provenance_note(ctx, ctx.window().quantity(), spec.n0_mode) << '\n';
      }
      const bool any_error = std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.transition; });
      if (any_error) return ExitCode::validation;
    } else if (*dissipation) {
      const auto a = Rational::parse(d_slope);
      const Quantity t(d_days * units::day, dim::time());
      const Quantity ell(d_radius_lmin * units::lightminute, dim::length());
      const auto mode = parse_n0_mode(d_n0);
      const auto b = solar_budget(d_kappa, a, ctx, t, mode, ell);
      const auto note = n0_provenance_note(ctx, t, mode);
      if (fmt == OutputFormat::csv) {
        out << "a,kappa,epsilon_W_per_m3,N0,N,Ns,window_s,ell_m,n0_mode\n"
            << format_slope(a) << ',' << format_shortest(d_kappa) << ','
            << format_sig(b.epsilon.value(), sig) << ',' << format_sig(b.N0, sig) << ','
            << format_sig(b.N, sig) << ',' << format_sig(b.Ns, sig) << ','
            << format_sig(t.value(), sig) << ',' << format_sig(ell.value(), sig) << ','
            << to_string(mode) << '\n';
        err << "# " << note << '\n';
      } else {
        out << "a = " << format_slope(a) << ", kappa = " << format_shortest(d_kappa) << '\n'
            << "epsilon = " << format_sig(b.epsilon.value(), sig) << " W/m^3\n"
            << "N0      = " << format_sig(b.N0, sig) << '\n'
            << "N       = " << format_sig(b.N, sig) << " solar masses per " << format_shortest(d_days)
            << " day(s) over R^3\n"
            << "Ns      = " << format_sig(b.Ns, sig) << " solar masses per " << format_shortest(d_days)
            << " day(s) within " << format_shortest(d_radius_lmin) << " lightminutes\n"
            << "# " << note << '\n';
      }
    } else if (*bound) {
      const auto a = Rational::parse(b_slope);
      const Quantity t(b_days * units::day, dim::time());
      const Quantity ell(b_radius_lmin * units::lightminute, dim::length());
      const auto mode = parse_n0_mode(b_n0);
      const auto res = kappa_from_solar_bound(b_ns, a, ctx, mode, t, ell);
      const auto note = n0_provenance_note(ctx, t, mode);
      const auto& r = res.transition;
      if (fmt == OutputFormat::csv) {
        out << "a,ns,kappa,lambda0_m,sigma_m,k0_per_m,N0,n0_mode\n"
            << format_slope(a) << ',' << format_shortest(b_ns) << ',' << format_sig(res.kappa, sig) << ','
            << format_sig(r.lambda0.value(), sig) << ',' << format_sig(r.abs_sigma(), sig) << ','
            << format_sig(r.k0.value(), sig) << ',' << format_sig(res.N0, sig) << ',' << to_string(mode)
            << '\n';
        err << "# " << note << '\n';
      } else {
        out << "a = " << format_slope(a) << ", Ns bound = " << format_shortest(b_ns) << '\n'
            << "kappa   = " << format_sig(res.kappa, sig) << '\n'
            << "lambda0 = " << format_sig(r.lambda0.value(), sig) << " +- "
            << format_sig(r.abs_sigma(), sig) << " m\n"
            << "# " << note << '\n';
      }
    } else if (*spectrum) {
      SpectrumModel model;
      if (p_model == "boyer") {
        model = make_boyer(ctx);
      } else if (p_model == "truncated") {
        std::optional<Quantity> cut;
        if (p_cutoff) cut = Quantity(*p_cutoff, dim::wavenumber());
        model = make_truncated_boyer(ctx, cut);
      } else if (p_model == "powerlaw") {
        const auto a = Rational::parse(p_slope);
        const Quantity amp = p_amplitude ? Quantity(*p_amplitude, power_law_amplitude_dim(a))
                                         : amplitude_from_kappa(p_kappa, a, ctx).quantity();
        model = make_power_law(amp, a);
      } else {
        const Quantity eps = p_epsilon ? Quantity(*p_epsilon, dim::power_density())
                                       : horizon_injection_rate(ctx).quantity();
        const Quantity rho = p_rho ? Quantity(*p_rho, dim::density()) : ctx.critical_density().quantity();
        model = make_moisseev_shivamoggi(Rational::parse(p_gamma), eps, rho, ctx, p_kconst);
      }
      const auto bracket = default_bracket(ctx);
      const double kmin = p_kmin.value_or(bracket.k_min);
      const double kmax = p_kmax.value_or(bracket.k_max);
      if (!(kmin > 0.0) || !(kmin < kmax)) throw InvalidBracket("need 0 < --kmin < --kmax");
      out << "k,E\n";
      const double step = std::log(kmax / kmin) / static_cast<double>(p_points - 1);
      for (std::size_t i = 0; i < p_points; ++i) {
        const double k = i + 1 == p_points ? kmax : kmin * std::exp(step * static_cast<double>(i));
        out << format_sig(k, sig) << ',' << format_sig(evaluate(model, k).value(), sig) << '\n';
      }
    }
  } catch (const ValidationError& e) {
    err << "error [" << e.kind() << "]: " << e.what() << '\n';
    return ExitCode::validation;
  } catch (const NumericError& e) {
    err << "error [" << e.kind() << "]: " << e.what() << '\n';
    return ExitCode::numeric;
  }
  return ExitCode::ok;
}

} // namespace zpf::cli
