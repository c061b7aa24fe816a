#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cldecohere/numerics.hpp"

namespace cldecohere {

namespace {

constexpr double kTwoOverSqrtPi = 1.12837916709551257390;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Maclaurin series of erf; only used for |z| < 1 where it converges quickly
// and loses no digits to cancellation.
Complex erf_series(Complex z) {
  const Complex z2 = z * z;
  Complex term = z;  // (-1)^n z^(2n+1) / n!
  Complex sum = z;
  for (int n = 1; n < 60; ++n) {
    term *= -z2 / static_cast<double>(n);
    const Complex add = term / static_cast<double>(2 * n + 1);
    sum += add;
    if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
  }
  return kTwoOverSqrtPi * sum;
}

}  // namespace

Complex faddeeva(Complex z) {
  const double xi = z.real();
  const double yi = z.imag();
  if (!finite(z)) throw std::domain_error("faddeeva: non-finite argument");

  const double xabs = std::abs(xi);
  const double yabs = std::abs(yi);
  const double xs = xabs / 6.3;
  const double ys = yabs / 4.4;
  double qrho = xs * xs + ys * ys;
  double xquad = xabs * xabs - yabs * yabs;
  const double yquad = 2.0 * xabs * yabs;

  double u = 0.0, v = 0.0, u2 = 0.0, v2 = 0.0;
  const bool near_origin = qrho < 0.085264;

  if (near_origin) {
    // w(z) = exp(-z^2) (1 + i erfi(z) ) with the erfi series in z^2
    qrho = (1.0 - 0.85 * ys) * std::sqrt(qrho);
    const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
    int j = 2 * n + 1;
    double xsum = 1.0 / j;
    double ysum = 0.0;
    for (int i = n; i >= 1; --i) {
      j -= 2;
      const double xaux = (xsum * xquad - ysum * yquad) / i;
      ysum = (xsum * yquad + ysum * xquad) / i;
      xsum = xaux + 1.0 / j;
    }
    const double u1 = -kTwoOverSqrtPi * (xsum * yabs + ysum * xabs) + 1.0;
    const double v1 = kTwoOverSqrtPi * (xsum * xabs - ysum * yabs);
    const double daux = std::exp(-xquad);
    u2 = daux * std::cos(yquad);
    v2 = -daux * std::sin(yquad);
    u = u1 * u2 - v1 * v2;
    v = u1 * v2 + v1 * u2;
  } else {
    double h = 0.0;
    double h2 = 0.0;
    int kapn = 0;
    int nu = 0;
    if (qrho > 1.0) {
      qrho = std::sqrt(qrho);
      nu = static_cast<int>(3.0 + 1442.0 / (26.0 * qrho + 77.0));
    } else {
      qrho = (1.0 - ys) * std::sqrt(1.0 - qrho);
      h = 1.88 * qrho;
      h2 = 2.0 * h;
      kapn = static_cast<int>(std::lround(7.0 + 34.0 * qrho));
      nu = static_cast<int>(std::lround(16.0 + 26.0 * qrho));
    }
    double qlambda = h > 0.0 ? std::pow(h2, kapn) : 0.0;
    double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
    for (int n = nu; n >= 0; --n) {
      const double np1 = n + 1.0;
      double tx = yabs + h + np1 * rx;
      const double ty = xabs - np1 * ry;
      const double c = 0.5 / (tx * tx + ty * ty);
      rx = c * tx;
      ry = c * ty;
      if (h > 0.0 && n <= kapn) {
        tx = qlambda + sx;
        sx = rx * tx - ry * sy;
        sy = ry * tx + rx * sy;
        qlambda /= h2;
      }
    }
    if (h == 0.0) {
      u = kTwoOverSqrtPi * rx;
      v = kTwoOverSqrtPi * ry;
    } else {
      u = kTwoOverSqrtPi * sx;
      v = kTwoOverSqrtPi * sy;
    }
    if (yabs == 0.0) u = std::exp(-xabs * xabs);
  }

  if (yi < 0.0) {
    // reflection w(z) = 2 exp(-z^2) - w(-z)
    if (near_origin) {
      u2 *= 2.0;
      v2 *= 2.0;
    } else {
      xquad = -xquad;
      if (xquad > std::log(std::numeric_limits<double>::max() / 2.0)) {
        const double inf = std::numeric_limits<double>::infinity();
        return {inf, inf};
      }
      const double w1 = 2.0 * std::exp(xquad);
      u2 = w1 * std::cos(yquad);
      v2 = -w1 * std::sin(yquad);
    }
    u = u2 - u;
    v = v2 - v;
    if (xi > 0.0) v = -v;
  } else if (xi < 0.0) {
    v = -v;
  }
  return {u, v};
}

Complex erf_complex(Complex z) {
  if (!finite(z)) throw std::domain_error("erf_complex: non-finite argument");
  if (std::abs(z) < 1.0) return erf_series(z);
  // odd symmetry keeps iz in the upper half plane, where w is well conditioned
  if (z.real() < 0.0) return -erf_complex(-z);
  return 1.0 - std::exp(-z * z) * faddeeva(Complex(-z.imag(), z.real()));
}

Complex erf_damped(Complex z) {
  if (!finite(z)) throw std::domain_error("erf_damped: non-finite argument");
  const double x = z.real();
  const double y = z.imag();
  if (std::abs(z) < 1.0) return std::exp(-y * y) * erf_series(z);
  if (x < 0.0) return -erf_damped(-z);
  // exp(-y^2) erf(z) = exp(-y^2) - exp(-x^2) exp(-2ixy) w(iz)
  const Complex phase = std::polar(std::exp(-x * x), -2.0 * x * y);
  return std::exp(-y * y) - phase * faddeeva(Complex(-y, x));
}

FresnelPair fresnel(double x) {
  if (!std::isfinite(x)) throw std::domain_error("fresnel: non-finite argument");
  const double ax = std::abs(x);
  FresnelPair out;
  if (ax > 1e5) {
    // leading asymptotic terms; the neglected O(x^-3) part is below 1e-16
    const double arg = 0.5 * std::numbers::pi * ax * ax;
    out.c = 0.5 + std::sin(arg) / (std::numbers::pi * ax);
    out.s = 0.5 - std::cos(arg) / (std::numbers::pi * ax);
  } else {
    // C + iS = (1 + i)/2 * erf(sqrt(pi)/2 * (1 - i) x)
    const double scale = 0.5 * std::sqrt(std::numbers::pi) * ax;
    const Complex e = erf_complex(Complex(scale, -scale));
    const Complex cs = Complex(0.5, 0.5) * e;
    out.c = cs.real();
    out.s = cs.imag();
  }
  if (x < 0.0) {
    out.c = -out.c;
    out.s = -out.s;
  }
  return out;
}

}  // namespace cldecohere
