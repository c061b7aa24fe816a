#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include "cldecohere/model.hpp"

namespace cldecohere {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
///
/// Power series near the origin, Laplace continued fraction far from it and a
/// Taylor-shifted continued fraction in between (Poppe and Wijers). Relative
/// accuracy is about 1e-14 in the upper half plane; the lower half plane uses
/// w(z) = 2 exp(-z^2) - w(-z) and overflows to infinity where exp(-z^2) does.
Complex faddeeva(Complex z);

/// Entire error function of a complex argument. Throws std::domain_error for
/// non-finite input.
Complex erf_complex(Complex z);

/// exp(-Im(z)^2) * erf(z), bounded for any finite z. Lets callers combine erf
/// with a Gaussian factor without overflowing at large imaginary parts.
Complex erf_damped(Complex z);

struct FresnelPair {
  double c = 0.0;
  double s = 0.0;
};

/// C(x) = int_0^x cos(pi u^2 / 2) du and S(x) = int_0^x sin(pi u^2 / 2) du.
FresnelPair fresnel(double x);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct SemiInfiniteResult : QuadratureResult {
  double cutoff = 0.0;  ///< upper limit actually integrated to
};

/// Thrown when an integrator exhausts its budget. Carries the partial result.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, QuadratureResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadratureResult& partial() const noexcept { return partial_; }

 private:
  QuadratureResult partial_;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_evaluations = 2'000'000;
};

using RealFunction = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) bisection. Stops when the summed
/// |K15 - G7| estimate is below max(abs_tol, rel_tol * |value|).
QuadratureResult integrate_adaptive(const RealFunction& f, double a, double b,
                                    const QuadratureOptions& options);

/// Same with a single tolerance used both absolutely and relatively.
QuadratureResult integrate_adaptive(const RealFunction& f, double a, double b, double tol);

/// Integral over [0, inf) of an eventually decaying f. The cutoff starts at
/// initial_cutoff and doubles until the last doubling adds less than
/// tol * |value|.
SemiInfiniteResult integrate_semi_infinite_time(const RealFunction& f, double tol,
                                                double initial_cutoff = 1.0,
                                                std::size_t max_doublings = 64);

// ---------------------------------------------------------------------------
// ODE stepping
// ---------------------------------------------------------------------------

/// Signals that a velocity field could not be evaluated (e.g. vanishing density).
class StepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using VelocityField = std::function<double(double x, double t)>;

/// Classical fourth-order Runge-Kutta step for dx/dt = v(x, t).
double rk4_step(const VelocityField& v, double x, double t, double h);

// ---------------------------------------------------------------------------
// Master-equation residual
// ---------------------------------------------------------------------------

using DensityMatrixFunction = std::function<Complex(double x, double xp, double t)>;

struct PhasePoint {
  double x = 0.0;
  double xp = 0.0;
  double t = 0.0;
};

/// Central-difference d rho / dt at a point.
Complex central_time_derivative(const DensityMatrixFunction& rho, const PhasePoint& p, double h);

/// d rho/dt minus the right-hand side of the high-temperature Caldeira-Leggett
/// equation with V(x) = m g x, all derivatives by second-order central
/// differences with step h.
Complex residual_cl(const DensityMatrixFunction& rho, const PhasePoint& p, double h,
                    const Environment& env, const ModelConstants& c);

}  // namespace cldecohere
