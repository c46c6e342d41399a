#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "zpf/constants.hpp"
#include "zpf/errors.hpp"
#include "zpf/quantity.hpp"
#include "zpf/spectra.hpp"

namespace zpf {

enum class TransitionMethod { closed_form, numeric_root };

//! Contribution |d ln lambda0 / d ln X| e_X of each input to the relative
//! uncertainty of the transition scale.
struct SigmaBreakdown {
  double G = 0.0;
  double c = 0.0;
  double hbar = 0.0;
  double H = 0.0;
  double kappa = 0.0;

  double total() const { return std::sqrt(G * G + c * c + hbar * hbar + H * H + kappa * kappa); }
};

struct TransitionResult {
  Quantity k0;      // m^-1
  Quantity lambda0; // m, 2 pi / k0
  double rel_sigma = 0.0;
  SigmaBreakdown breakdown;
  TransitionMethod method = TransitionMethod::closed_form;

  double abs_sigma() const { return rel_sigma * lambda0.value(); }
};

namespace detail {

// lambda0 = 2 pi [8 pi G hbar / (3 (a-1) kappa c^2 H) (c/H)^a]^(1/(3+a)),
// written as a product of powers of the inputs. Term order is fixed:
// numeric prefactor, G, c, hbar, H, kappa.
inline std::array<PowerTerm, 6> transition_terms(const Rational& a, const UncertainQuantity& kappa,
                                                 const UncertainQuantity& G,
                                                 const UncertainQuantity& c,
                                                 const UncertainQuantity& hbar,
                                                 const UncertainQuantity& H) {
  const Rational inv = Rational(1) / (Rational(3) + a);
  const double numeric = 2.0 * std::numbers::pi *
                         std::pow(8.0 * std::numbers::pi / (3.0 * (a - Rational(1)).to_double()),
                                  inv.to_double());
  return {{{UncertainQuantity::exact(numeric), 1},
           {G, inv},
           {c, (a - Rational(2)) * inv},
           {hbar, inv},
           {H, -(Rational(1) + a) * inv},
           {kappa, -inv}}};
}

inline TransitionResult result_from_lambda(const UncertainQuantity& lambda,
                                           std::span<const PowerTerm> terms,
                                           TransitionMethod method) {
  const auto parts = contributions(terms);
  TransitionResult r;
  r.lambda0 = lambda.quantity();
  r.k0 = Quantity(2.0 * std::numbers::pi, dim::none()) / r.lambda0;
  r.rel_sigma = lambda.rel_sigma();
  r.breakdown = {parts[1], parts[2], parts[3], parts[4], parts[5]};
  r.method = method;
  return r;
}

} // namespace detail

//! Scale at which the turbulence spectrum A k^-a (A calibrated from kappa)
//! overtakes the Boyer spectrum, with first-order uncertainty
//!   (sigma/lambda0)^2 = [e_G^2 + (a-2)^2 e_c^2 + e_hbar^2 + (a+1)^2 e_H^2 + e_kappa^2] / (3+a)^2.
inline TransitionResult transition_scale(const Rational& a, double kappa, const CosmologyContext& ctx,
                                         double e_kappa = 0.0) {
  validate_slope(a);
  validate_kappa(kappa);
  const auto terms = detail::transition_terms(a, UncertainQuantity(kappa, e_kappa, dim::none()),
                                              ctx.G(), ctx.c(), ctx.hbar(), ctx.H());
  const auto lambda = propagate(terms);
  detail::expect_dim(lambda.quantity(), dim::length(), "transition scale");
  return detail::result_from_lambda(lambda, terms, TransitionMethod::closed_form);
}

// ---------------------------------------------------------------------------
// Numeric crossover.

struct WavenumberBracket {
  double k_min; // m^-1
  double k_max;
};

//! Default search interval [1/R, 2 pi / r_p].
inline WavenumberBracket default_bracket(const CosmologyContext& ctx) {
  return {1.0 / ctx.hubble_radius().value(), 2.0 * std::numbers::pi / ctx.planck_length().value()};
}

//! Root of ln E_vac(k) - ln E_turb(k), bisected in ln k. Requires E_vac
//! increasing and E_turb decreasing over the bracket; the result is
//! converged to ~1e-13 relative in k.
inline Quantity numeric_crossover(const SpectrumModel& vac, const SpectrumModel& turb,
                                  const WavenumberBracket& bracket) {
  if (!(bracket.k_min > 0.0) || !std::isfinite(bracket.k_max) || !(bracket.k_min < bracket.k_max))
    throw InvalidBracket("wavenumber bracket must satisfy 0 < k_min < k_max");

  auto gap = [&](double log_k) {
    // Clamp so that exp(log(k_max)) cannot overshoot a hard cutoff at k_max.
    const Quantity k(std::clamp(std::exp(log_k), bracket.k_min, bracket.k_max), dim::wavenumber());
    return std::log(evaluate(vac, k).value()) - std::log(evaluate(turb, k).value());
  };
  const double lo = std::log(bracket.k_min);
  const double hi = std::log(bracket.k_max);
  const double g_lo = gap(lo);
  const double g_hi = gap(hi);
  if (std::isnan(g_lo) || std::isnan(g_hi) || !(g_lo < 0.0 && g_hi > 0.0)) {
    if (g_lo == 0.0) return {bracket.k_min, dim::wavenumber()};
    if (g_hi == 0.0) return {bracket.k_max, dim::wavenumber()};
    throw NoCrossing("vacuum and turbulence spectra do not cross inside the bracket");
  }

  auto converged = [](double x0, double x1) { return std::abs(x1 - x0) <= 1e-13; };
  std::uintmax_t max_iter = 400;
  const auto [a, b] = boost::math::tools::bisect(gap, lo, hi, converged, max_iter);
  if (max_iter >= 400) throw NoCrossing("bisection did not converge");
  return {std::exp(0.5 * (a + b)), dim::wavenumber()};
}

inline Quantity numeric_crossover(const SpectrumModel& vac, const SpectrumModel& turb,
                                  const CosmologyContext& ctx) {
  return numeric_crossover(vac, turb, default_bracket(ctx));
}

//! transition_scale with k0 located by bisection between the Boyer and the
//! calibrated power-law spectra instead of the closed form.
inline TransitionResult transition_scale_numeric(const Rational& a, double kappa,
                                                 const CosmologyContext& ctx, double e_kappa = 0.0) {
  TransitionResult r = transition_scale(a, kappa, ctx, e_kappa);
  const auto turb = make_power_law(amplitude_from_kappa(kappa, a, ctx).quantity(), a);
  r.k0 = numeric_crossover(make_boyer(ctx), turb, ctx);
  r.lambda0 = Quantity(2.0 * std::numbers::pi, dim::none()) / r.k0;
  r.method = TransitionMethod::numeric_root;
  return r;
}

// ---------------------------------------------------------------------------
// Shortcuts and cross-checks.

//! sigma/lambda0 ~ (a+1) e_H / (a+3), keeping only the Hubble constant.
inline double sigma_approximation(const Rational& a, double e_H) {
  validate_slope(a);
  if (!(e_H >= 0.0)) throw InvalidParameter("e_H must be >= 0");
  const double ad = a.to_double();
  return (ad + 1.0) * e_H / (ad + 3.0);
}

//! Constants of the logarithmic form of the transition scale (natural logs,
//! SI units): C1 = ln(3 c^2 H / (8 pi G hbar)), C2 = ln(H / c).
struct LogFormConstants {
  double C1;
  double C2;
};

inline LogFormConstants log_form_constants(const CosmologyContext& ctx) {
  const Quantity inner = (3.0 / (8.0 * std::numbers::pi)) *
                         (power(ctx.c().quantity(), 2) * ctx.H().quantity() /
                          (ctx.G().quantity() * ctx.hbar().quantity()));
  const Quantity ratio = ctx.H().quantity() / ctx.c().quantity();
  detail::expect_dim(inner, dim::length().pow(-3), "C1 argument");
  detail::expect_dim(ratio, dim::wavenumber(), "C2 argument");
  return {std::log(inner.value()), std::log(ratio.value())};
}

//! ln lambda0 = ln 2 pi - [C1 + ln kappa + ln(a-1) + a C2] / (3+a).
inline Quantity log_form_scale(const Rational& a, double kappa, const CosmologyContext& ctx) {
  validate_slope(a);
  validate_kappa(kappa);
  const auto [c1, c2] = log_form_constants(ctx);
  const double ad = a.to_double();
  const double ln_lambda = std::log(2.0 * std::numbers::pi) -
                           (c1 + std::log(kappa) + std::log(ad - 1.0) + ad * c2) / (3.0 + ad);
  return {std::exp(ln_lambda), dim::length()};
}

//! Historical Kolmogorov-slope estimate lambda0 = 12 kappa^(-3/14) m.
inline Quantity winterberg_estimate(double kappa) {
  validate_kappa(kappa);
  return {12.0 * std::pow(kappa, -3.0 / 14.0), dim::length()};
}

// ---------------------------------------------------------------------------
// Monte Carlo propagation.

struct MonteCarloResult {
  Quantity mean;                    // sample mean of lambda0
  double rel_sigma = 0.0;           // sample standard deviation / mean
  double central68_rel_half_width = 0.0; // (q84 - q16) / (2 median)
  std::size_t samples = 0;
  std::size_t rejected = 0;         // redrawn non-positive constants
};

namespace detail {

// splitmix64: per-sample streams are seeded from (seed, index) so that the
// result does not depend on how samples are scheduled.
class SplitMix64 {
public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (index * 0xD1B54A32D192ED03ULL));
  mix();
  return mix();
}

} // namespace detail

//! Draws G, c, hbar, H and kappa independently from Gaussians with their
//! relative uncertainties and evaluates the closed-form transition scale per
//! draw. A non-positive draw is redrawn from the same stream; more than
//! 1000 consecutive redraws raise DegenerateSamples.
inline MonteCarloResult monte_carlo_scale(const Rational& a, double kappa, std::size_t n,
                                          std::uint64_t seed, const CosmologyContext& ctx,
                                          double e_kappa = 0.0) {
  validate_slope(a);
  validate_kappa(kappa);
  if (n < 1000) throw InvalidParameter("Monte Carlo needs at least 1000 samples");
  if (!(e_kappa >= 0.0)) throw InvalidParameter("e_kappa must be >= 0");

  const std::array<UncertainQuantity, 5> inputs = {
      ctx.G(), ctx.c(), ctx.hbar(), ctx.H(), UncertainQuantity(kappa, e_kappa, dim::none())};

  std::vector<double> values(n);
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < n; ++i) {
    detail::SplitMix64 rng(detail::sample_seed(seed, i));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::array<UncertainQuantity, 5> drawn;
    for (std::size_t j = 0; j < inputs.size(); ++j) {
      const auto& in = inputs[j];
      double x = 0.0;
      for (int attempt = 0;; ++attempt) {
        x = in.value() * (1.0 + in.rel_sigma() * normal(rng));
        if (x > 0.0) break;
        if (attempt == 1000) throw DegenerateSamples("could not draw a positive value");
        ++rejected;
      }
      drawn[j] = UncertainQuantity(x, 0.0, in.dim());
    }
    const auto terms = detail::transition_terms(a, drawn[4], drawn[0], drawn[1], drawn[2], drawn[3]);
    values[i] = propagate(terms).value();
  }

  std::sort(values.begin(), values.end());
  double mean = values.front();
  double sd = 0.0;
  if (values.front() != values.back()) {
    mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    sd = std::sqrt(ss / static_cast<double>(n - 1));
  }

  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, n - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  const double q16 = quantile(0.15865525393145707);
  const double q84 = quantile(0.8413447460685429);
  const double median = quantile(0.5);

  MonteCarloResult r;
  r.mean = Quantity(mean, dim::length());
  r.rel_sigma = sd / mean;
  r.central68_rel_half_width = (q84 - q16) / (2.0 * median);
  r.samples = n;
  r.rejected = rejected;
  return r;
}

} // namespace zpf
