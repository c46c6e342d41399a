#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>

#include "zpf/constants.hpp"
#include "zpf/errors.hpp"
#include "zpf/quantity.hpp"

namespace zpf {

//! Slopes of the turbulence spectrum are restricted to the open interval
//! (1, 3): a <= 1 makes the energy integral from 1/R diverge and a >= 3
//! is steeper than a local cascade allows.
inline void validate_slope(const Rational& a) {
  if (!(a > Rational(1) && a < Rational(3)))
    throw SlopeOutOfRange("spectral slope a = " + a.str() + " outside (1, 3)");
}

inline void validate_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw KappaOutOfRange("turbulence degree kappa = " + detail::num(kappa) + " outside (0, 1]");
}

// ---------------------------------------------------------------------------
// Spectrum models. Every variant evaluates to a spectral energy density
// E(k) in J m^-2 (energy per volume per wavenumber).

//! Lorentz invariant zero-point spectrum E = hbar c k^3.
struct Boyer {
  Quantity hbar;
  Quantity c;
};

//! Boyer spectrum cut off above `cutoff_k` (2 pi / r_p by default).
struct TruncatedBoyer {
  Quantity hbar;
  Quantity c;
  Quantity cutoff_k;
};

//! E = A k^-a. The amplitude carries dimension kg s^-2 m^-a.
struct PowerLawTurbulence {
  Quantity amplitude;
  Rational slope;
};

//! Compressible turbulence spectrum
//!   E = C [rho^(gamma-1) eps^(2 gamma) c^-2 k^-(5 gamma - 1)]^(1/(3 gamma - 1)).
struct MoisseevShivamoggi {
  Rational gamma;
  Quantity epsilon; // energy injection rate, W m^-3
  Quantity rho;     // kg m^-3
  Quantity c;
  double kolmogorov_constant = 1.0;
};

using SpectrumModel = std::variant<Boyer, TruncatedBoyer, PowerLawTurbulence, MoisseevShivamoggi>;

inline Dimension power_law_amplitude_dim(const Rational& a) {
  return dim::spectral_density() * dim::length().pow(-a);
}

namespace detail {
inline void expect_dim(const Quantity& q, const Dimension& d, const char* what) {
  if (q.dim() != d)
    throw DimensionMismatch(std::string(what) + " has dimension [" + q.dim().str() + "], expected [" +
                            d.str() + "]");
}
} // namespace detail

inline Boyer make_boyer(const CosmologyContext& ctx) {
  return {ctx.hbar().quantity(), ctx.c().quantity()};
}

inline TruncatedBoyer make_truncated_boyer(const CosmologyContext& ctx,
                                           std::optional<Quantity> cutoff_k = std::nullopt) {
  const Quantity cutoff =
      cutoff_k.value_or(Quantity(2.0 * std::numbers::pi / ctx.planck_length().value(), dim::wavenumber()));
  detail::expect_dim(cutoff, dim::wavenumber(), "cutoff wavenumber");
  if (!(cutoff.value() > 0.0)) throw InvalidParameter("truncation wavenumber must be positive");
  return {ctx.hbar().quantity(), ctx.c().quantity(), cutoff};
}

inline PowerLawTurbulence make_power_law(const Quantity& amplitude, const Rational& slope) {
  validate_slope(slope);
  detail::expect_dim(amplitude, power_law_amplitude_dim(slope), "power-law amplitude");
  if (amplitude.value() < 0.0) throw InvalidParameter("power-law amplitude must be >= 0");
  return {amplitude, slope};
}

inline void validate_gamma(const Rational& gamma) {
  if (gamma == Rational(1, 3)) throw PoleGamma("gamma = 1/3 is a pole of the slope relation");
  if (!(gamma > Rational(1, 3)))
    throw GammaOutOfRange("adiabatic index gamma = " + gamma.str() + " must exceed 1/3");
}

inline MoisseevShivamoggi make_moisseev_shivamoggi(const Rational& gamma, const Quantity& epsilon,
                                                   const Quantity& rho, const CosmologyContext& ctx,
                                                   double kolmogorov_constant = 1.0) {
  validate_gamma(gamma);
  detail::expect_dim(epsilon, dim::power_density(), "dissipation rate");
  detail::expect_dim(rho, dim::density(), "density");
  if (!(epsilon.value() > 0.0) || !(rho.value() > 0.0))
    throw InvalidParameter("energy rate and density must be positive");
  if (!(kolmogorov_constant > 0.0)) throw InvalidParameter("Kolmogorov constant must be positive");
  return {gamma, epsilon, rho, ctx.c().quantity(), kolmogorov_constant};
}

inline Quantity evaluate(const SpectrumModel& model, const Quantity& k) {
  detail::expect_dim(k, dim::wavenumber(), "wavenumber");
  if (!(k.value() > 0.0)) throw NonPositiveWavenumber("wavenumber must be positive");

  const Quantity e = std::visit(
      [&k](const auto& m) -> Quantity {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Boyer>) {
          return m.hbar * m.c * power(k, 3);
        } else if constexpr (std::is_same_v<T, TruncatedBoyer>) {
          if (k.value() > m.cutoff_k.value()) return {0.0, dim::spectral_density()};
          return m.hbar * m.c * power(k, 3);
        } else if constexpr (std::is_same_v<T, PowerLawTurbulence>) {
          return m.amplitude * power(k, -m.slope);
        } else {
          // Each factor is raised separately so that large gamma does not
          // under/overflow the bracket before the outer root is taken.
          const Rational s = Rational(1) / (Rational(3) * m.gamma - Rational(1));
          return m.kolmogorov_constant *
                 (power(m.rho, (m.gamma - Rational(1)) * s) *
                  power(m.epsilon, Rational(2) * m.gamma * s) * power(m.c, Rational(-2) * s) *
                  power(k, -(Rational(5) * m.gamma - Rational(1)) * s));
        }
      },
      model);
  detail::expect_dim(e, dim::spectral_density(), "spectrum value");
  return e;
}

inline Quantity evaluate(const SpectrumModel& model, double k_per_m) {
  return evaluate(model, Quantity(k_per_m, dim::wavenumber()));
}

// ---------------------------------------------------------------------------
// Slope / adiabatic index relations.

// a = (5 gamma - 1) / (3 gamma - 1)
inline Rational slope_from_gamma(const Rational& gamma) {
  validate_gamma(gamma);
  return (Rational(5) * gamma - Rational(1)) / (Rational(3) * gamma - Rational(1));
}

// gamma = (1 - a) / (5 - 3a). Negative for 1 < a < 5/3.
inline Rational gamma_from_slope(const Rational& a) {
  validate_slope(a);
  if (a == Rational(5, 3))
    throw KolmogorovPole("a = 5/3 is the Kolmogorov limit gamma -> infinity");
  return (Rational(1) - a) / (Rational(5) - Rational(3) * a);
}

// ---------------------------------------------------------------------------
// Amplitude calibration from the cosmological energy budget.

//! Fraction kappa of the critical energy density held by turbulence.
struct EnergyBudget {
  double kappa;
  UncertainQuantity total; // kappa rho c^2, J m^-3
};

inline EnergyBudget energy_budget(double kappa, const CosmologyContext& ctx) {
  validate_kappa(kappa);
  // kappa * 3 H^2 / (8 pi G) * c^2
  return {kappa, propagate({{UncertainQuantity::exact(kappa * 3.0 / (8.0 * std::numbers::pi)), 1},
                            {ctx.H(), 2},
                            {ctx.G(), -1},
                            {ctx.c(), 2}})};
}

//! A = (a-1) kappa rho c^2 R^(1-a), chosen so that the integral of A k^-a
//! from 1/R to infinity equals kappa rho c^2. Expanded over the primitive
//! constants so that the H dependence of rho and R is counted once:
//! A = (a-1) kappa 3/(8 pi) G^-1 H^(1+a) c^(3-a).
inline UncertainQuantity amplitude_from_kappa(double kappa, const Rational& a,
                                              const CosmologyContext& ctx) {
  validate_slope(a);
  validate_kappa(kappa);
  const double pre = (a - Rational(1)).to_double() * kappa * 3.0 / (8.0 * std::numbers::pi);
  return propagate({{UncertainQuantity::exact(pre), 1},
                    {ctx.G(), -1},
                    {ctx.H(), Rational(1) + a},
                    {ctx.c(), Rational(3) - a}});
}

//! Closed form of the integral of A k^-a over [1/R, inf): A R^(a-1) / (a-1).
inline Quantity budget_roundtrip(const Quantity& amplitude, const Rational& a,
                                 const CosmologyContext& ctx) {
  validate_slope(a);
  detail::expect_dim(amplitude, power_law_amplitude_dim(a), "power-law amplitude");
  const Quantity r = ctx.hubble_radius().quantity();
  return (1.0 / (a - Rational(1)).to_double()) * (amplitude * power(r, a - Rational(1)));
}

//! Rate at which horizon growth adds energy per unit volume,
//! eps = rho c^2 (4 pi R^2 c) / (4/3 pi R^3) = 3 rho c^3 / R = 9/(8 pi) G^-1 H^3 c^2.
inline UncertainQuantity horizon_injection_rate(const CosmologyContext& ctx) {
  return propagate({{UncertainQuantity::exact(9.0 / (8.0 * std::numbers::pi)), 1},
                    {ctx.G(), -1},
                    {ctx.H(), 3},
                    {ctx.c(), 2}});
}

//! Amplitude of E(k) ~ rho c^2 R^(1-a) k^-a obtained by feeding the horizon
//! injection rate into the Moisseev-Shivamoggi spectrum.
struct HorizonAmplitude {
  UncertainQuantity reduced; // rho c^2 R^(1-a)
  double prefactor;          // C 3^(2 gamma/(3 gamma - 1)) = C 3^(a-1), dropped by `reduced`

  UncertainQuantity exact() const {
    return {prefactor * reduced.value(), reduced.rel_sigma(), reduced.dim()};
  }
};

inline HorizonAmplitude horizon_spectrum_amplitude(const Rational& a, const CosmologyContext& ctx,
                                                   double kolmogorov_constant = 1.0) {
  validate_slope(a);
  // 2 gamma / (3 gamma - 1) == a - 1 for every gamma, including the
  // Kolmogorov limit a = 5/3 where gamma itself is unbounded.
  const double prefactor = kolmogorov_constant * std::pow(3.0, (a - Rational(1)).to_double());
  const auto reduced = propagate({{UncertainQuantity::exact(3.0 / (8.0 * std::numbers::pi)), 1},
                                  {ctx.G(), -1},
                                  {ctx.H(), Rational(1) + a},
                                  {ctx.c(), Rational(3) - a}});
  return {reduced, prefactor};
}

} // namespace zpf
