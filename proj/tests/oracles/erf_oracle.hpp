#pragma once

// Reference values for the complex error function, computed independently of
// the library: a 50-digit Maclaurin series for moderate |z| and the
// asymptotic erfc expansion for large |z|.

#include <complex>
#include <cmath>

#include <boost/multiprecision/cpp_complex.hpp>

namespace oracle {

inline std::complex<double> erf_series(std::complex<double> z) {
  using Big = boost::multiprecision::cpp_complex_50;
  using Real = boost::multiprecision::cpp_bin_float_50;
  const Big zz(Real(z.real()), Real(z.imag()));
  const Big z2 = zz * zz;
  Big term = zz;  // (-1)^n z^(2n+1) / n!
  Big sum = zz;
  for (int n = 1; n < 400; ++n) {
    term *= -z2 / Real(n);
    const Big add = term / Real(2 * n + 1);
    sum += add;
    if (abs(add) < Real("1e-45") * abs(sum)) break;
  }
  const Big out = sum * Real(2) / sqrt(boost::math::constants::pi<Real>());
  return {static_cast<double>(out.real()), static_cast<double>(out.imag())};
}

/// erfc(z) ~ exp(-z^2)/(z sqrt(pi)) sum (-1)^n (2n-1)!! / (2 z^2)^n, truncated at
/// the smallest term. Valid for Re z >= 0 and |z| >~ 5; odd symmetry covers Re z < 0.
inline std::complex<double> erf_asymptotic(std::complex<double> z) {
  using C = std::complex<long double>;
  if (z.real() < 0.0) return -erf_asymptotic(-z);
  const C zz(z.real(), z.imag());
  const C inv = 1.0L / (2.0L * zz * zz);
  C term = 1.0L, sum = 1.0L;
  long double last = 1.0L;
  for (int n = 1; n < 200; ++n) {
    const C next = term * (-(2.0L * n - 1.0L)) * inv;
    if (std::abs(next) >= last) break;
    term = next;
    last = std::abs(term);
    sum += term;
  }
  const long double sqrt_pi = std::sqrt(3.14159265358979323846264338327950288L);
  const C erfc = std::exp(-zz * zz) / (zz * sqrt_pi) * sum;
  const C e = 1.0L - erfc;
  return {static_cast<double>(e.real()), static_cast<double>(e.imag())};
}

}  // namespace oracle
