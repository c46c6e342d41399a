#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "zpf/constants.hpp"
#include "zpf/errors.hpp"
#include "zpf/quantity.hpp"
#include "zpf/spectra.hpp"
#include "zpf/transition.hpp"

namespace zpf {

//! Source of the solar-mass count prefactor N0 = rho c R^2 t / M.
//! `published` is the literature value 1e57; `computed` evaluates the
//! expression from the registry (about 2e9 with the default constants).
enum class N0Mode { published, computed };

inline constexpr double published_n0 = 1e57;

inline const char* to_string(N0Mode m) { return m == N0Mode::published ? "paper" : "computed"; }

inline N0Mode parse_n0_mode(std::string_view s) {
  if (s == "paper") return N0Mode::published;
  if (s == "computed") return N0Mode::computed;
  throw InvalidParameter("n0 mode must be 'paper' or 'computed', got '" + std::string(s) + "'");
}

struct DissipationBudget {
  Quantity epsilon;  // W m^-3
  double N = 0.0;    // solar masses annihilated per window over R^3
  double N0 = 0.0;
  double Ns = 0.0;   // N rescaled to a sphere of radius ell
  Quantity window_t; // s
  Quantity ell;      // m
  N0Mode n0_mode = N0Mode::published;
};

//! eps = rho c^3 R^-1 [(a-1) kappa]^(1/(a-1))
//!     = 3/(8 pi) G^-1 H^3 c^2 [(a-1) kappa]^(1/(a-1)).
inline UncertainQuantity dissipation_rate(double kappa, const Rational& a, const CosmologyContext& ctx) {
  validate_slope(a);
  validate_kappa(kappa);
  const Rational am1 = a - Rational(1);
  return propagate({{UncertainQuantity::exact(3.0 / (8.0 * std::numbers::pi)), 1},
                    {ctx.G(), -1},
                    {ctx.H(), 3},
                    {ctx.c(), 2},
                    {UncertainQuantity::exact(am1.to_double() * kappa), Rational(1) / am1}});
}

//! rho c R^2 t / M with rho = 3 H^2 / (8 pi G) and R = c / H. H cancels.
inline double computed_n0(const CosmologyContext& ctx, const Quantity& window_t) {
  detail::expect_dim(window_t, dim::time(), "budget window");
  const Quantity n0 = ctx.critical_density().quantity() * ctx.c().quantity() *
                      power(ctx.hubble_radius().quantity(), 2) * window_t /
                      ctx.solar_mass().quantity();
  detail::expect_dim(n0, dim::none(), "N0");
  return n0.value();
}

inline double n0_value(const CosmologyContext& ctx, const Quantity& window_t, N0Mode mode) {
  return mode == N0Mode::published ? published_n0 : computed_n0(ctx, window_t);
}

//! N_s = N (ell / R)^3
inline double rescaled_count(double N, const Quantity& ell, const CosmologyContext& ctx) {
  detail::expect_dim(ell, dim::length(), "radius");
  if (!(ell.value() > 0.0)) throw InvalidParameter("radius must be positive");
  return N * std::pow(ell.value() / ctx.hubble_radius().value(), 3);
}

//! kappa = (N / N0)^(a-1) / (a-1), the inverse of N = N0 [(a-1) kappa]^(1/(a-1)).
inline double kappa_from_count(double N, double N0, const Rational& a) {
  validate_slope(a);
  if (!(N > 0.0) || !(N0 > 0.0)) throw InvalidParameter("counts must be positive");
  const double am1 = (a - Rational(1)).to_double();
  return std::pow(N / N0, am1) / am1;
}

inline double count_from_kappa(double kappa, double N0, const Rational& a) {
  validate_slope(a);
  validate_kappa(kappa);
  const double am1 = (a - Rational(1)).to_double();
  return N0 * std::pow(am1 * kappa, 1.0 / am1);
}

inline DissipationBudget solar_budget(double kappa, const Rational& a, const CosmologyContext& ctx,
                                      std::optional<Quantity> window_t = std::nullopt,
                                      N0Mode mode = N0Mode::published,
                                      std::optional<Quantity> ell = std::nullopt) {
  DissipationBudget b;
  b.window_t = window_t.value_or(ctx.window().quantity());
  b.ell = ell.value_or(ctx.reference_radius().quantity());
  if (!(b.window_t.value() > 0.0)) throw InvalidParameter("budget window must be positive");
  b.epsilon = dissipation_rate(kappa, a, ctx).quantity();
  b.N0 = n0_value(ctx, b.window_t, mode);
  b.N = count_from_kappa(kappa, b.N0, a);
  b.Ns = rescaled_count(b.N, b.ell, ctx);
  b.n0_mode = mode;
  return b;
}

struct SolarBound {
  double kappa = 0.0;
  double N0 = 0.0;
  N0Mode n0_mode = N0Mode::published;
  TransitionResult transition;
};

//! Turbulence degree for which the dissipation inside radius ell equals
//! `ns_bound` solar masses per window:
//!   kappa = (1/(a-1)) (N_s / N0 (c / (ell H))^3)^(a-1),
//! followed by the transition scale at that kappa.
inline SolarBound kappa_from_solar_bound(double ns_bound, const Rational& a, const CosmologyContext& ctx,
                                         N0Mode mode = N0Mode::published,
                                         std::optional<Quantity> window_t = std::nullopt,
                                         std::optional<Quantity> ell = std::nullopt) {
  validate_slope(a);
  if (!(ns_bound > 0.0)) throw InvalidParameter("N_s bound must be positive");
  const Quantity t = window_t.value_or(ctx.window().quantity());
  const Quantity radius = ell.value_or(ctx.reference_radius().quantity());
  if (!(t.value() > 0.0)) throw InvalidParameter("budget window must be positive");
  SolarBound out;
  out.n0_mode = mode;
  out.N0 = n0_value(ctx, t, mode);
  // Undo the rescaling to the sphere of radius ell: N = N_s / (ell/R)^3.
  const double N = ns_bound / rescaled_count(1.0, radius, ctx);
  out.kappa = kappa_from_count(N, out.N0, a);
  out.transition = transition_scale(a, out.kappa, ctx);
  return out;
}

//! One-line note stating which N0 was used and what the other mode gives.
inline std::string n0_provenance_note(const CosmologyContext& ctx, const Quantity& window_t, N0Mode mode) {
  const double computed = computed_n0(ctx, window_t);
  std::string note = "N0 mode: ";
  note += to_string(mode);
  if (mode == N0Mode::published)
    note += " (published N0 = 1e57; evaluating rho*c*R^2*t/M from the constants gives " +
            detail::num(computed) + ")";
  else
    note += " (rho*c*R^2*t/M = " + detail::num(computed) +
            " from the constants; the published value is 1e57)";
  return note;
}

} // namespace zpf
