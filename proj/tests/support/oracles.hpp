#pragma once

// Reference computations used only by the tests. Nothing here calls into
// the closed forms under test except through their public value functions.

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

namespace zpf::testing {

//! First-order standard deviation sqrt(sum (df/dx_i sigma_i)^2) with the
//! partial derivatives taken by central differences of relative step h.
inline double fd_sigma(const std::function<double(const std::vector<double>&)>& f,
                       const std::vector<double>& x, const std::vector<double>& sigma,
                       double h = 1e-6) {
  double var = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sigma[i] == 0.0) continue;
    auto up = x, down = x;
    const double step = h * std::abs(x[i]);
    up[i] += step;
    down[i] -= step;
    const double d = (f(up) - f(down)) / (2.0 * step);
    var += d * sigma[i] * d * sigma[i];
  }
  return std::sqrt(var);
}

//! Integral of g(k) over [k_lo, inf) after substituting k = k_lo e^u, which
//! turns a power-law tail into an exponential one.
inline double integrate_from(double k_lo, const std::function<double(double)>& g) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto integrand = [&](double u) {
    const double k = k_lo * std::exp(u);
    if (!(k < 1e250)) return 0.0; // far tail, beyond any power-law contribution
    return g(k) * k;
  };
  double err = 0.0;
  return integrator.integrate(integrand, 0.0, std::numeric_limits<double>::infinity(),
                              std::sqrt(std::numeric_limits<double>::epsilon()) * 1e-3, &err);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace zpf::testing
