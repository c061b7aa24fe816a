#pragma once

// Fresnel integrals by adaptive Gauss-Kronrod quadrature of their definitions.

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

struct Fresnel {
  double c;
  double s;
};

inline Fresnel fresnel_quadrature(double x) {
  using boost::math::quadrature::gauss_kronrod;
  // split into unit pieces so each panel has a bounded number of oscillations
  long double c = 0.0L, s = 0.0L;
  const double sign = x < 0.0 ? -1.0 : 1.0;
  const double ax = std::abs(x);
  for (double a = 0.0; a < ax; a += 0.25) {
    const double b = std::min(ax, a + 0.25);
    c += gauss_kronrod<long double, 61>::integrate(
        [](long double u) { return std::cos(std::numbers::pi_v<long double> * u * u / 2.0L); },
        a, b, 10, 1e-16L);
    s += gauss_kronrod<long double, 61>::integrate(
        [](long double u) { return std::sin(std::numbers::pi_v<long double> * u * u / 2.0L); },
        a, b, 10, 1e-16L);
  }
  return {sign * static_cast<double>(c), sign * static_cast<double>(s)};
}

}  // namespace oracle
