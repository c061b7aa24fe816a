#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "cldecohere/numerics.hpp"

namespace cldecohere {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const RealFunction& f, double a, double b,
                                    const QuadratureOptions& options) {
  if (!(options.abs_tol > 0.0) && !(options.rel_tol > 0.0))
    throw std::domain_error("integrate_adaptive: tolerance must be positive");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::domain_error("integrate_adaptive: limits must be finite");
  if (a == b) return {};
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }

  constexpr std::size_t kEvalsPerPanel = 15;
  std::priority_queue<Panel> panels;
  Panel first = gauss_kronrod(f, a, b);
  double value = first.value;
  double error = first.error;
  std::size_t evaluations = kEvalsPerPanel;
  panels.push(first);

  auto converged = [&] {
    return error <= std::max(options.abs_tol, options.rel_tol * std::abs(value));
  };

  while (!converged()) {
    if (evaluations + 2 * kEvalsPerPanel > options.max_evaluations) {
      throw ConvergenceError("integrate_adaptive: evaluation budget exhausted",
                             {sign * value, error, evaluations});
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      throw ConvergenceError("integrate_adaptive: interval too small to bisect",
                             {sign * value, error, evaluations});
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    evaluations += 2 * kEvalsPerPanel;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    // running sums drift; refresh them from the panel list now and then
    if (panels.size() % 64 == 0) {
      auto copy = panels;
      value = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        value += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  if (!std::isfinite(value))
    throw ConvergenceError("integrate_adaptive: non-finite integrand", {value, error, evaluations});
  return {sign * value, error, evaluations};
}

QuadratureResult integrate_adaptive(const RealFunction& f, double a, double b, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("integrate_adaptive: tolerance must be positive");
  QuadratureOptions options;
  options.abs_tol = tol;
  options.rel_tol = tol;
  return integrate_adaptive(f, a, b, options);
}

SemiInfiniteResult integrate_semi_infinite_time(const RealFunction& f, double tol,
                                                double initial_cutoff,
                                                std::size_t max_doublings) {
  if (!(tol > 0.0)) throw std::domain_error("integrate_semi_infinite_time: tolerance must be positive");
  if (!(initial_cutoff > 0.0))
    throw std::domain_error("integrate_semi_infinite_time: cutoff must be positive");

  QuadratureOptions options;
  options.abs_tol = 0.1 * tol;
  options.rel_tol = 0.1 * tol;

  SemiInfiniteResult out;
  const QuadratureResult head = integrate_adaptive(f, 0.0, initial_cutoff, options);
  out.value = head.value;
  out.error_estimate = head.error_estimate;
  out.evaluations = head.evaluations;
  out.cutoff = initial_cutoff;

  for (std::size_t i = 0; i < max_doublings; ++i) {
    options.abs_tol = 0.1 * tol * std::max(std::abs(out.value), 1e-300);
    const QuadratureResult panel = integrate_adaptive(f, out.cutoff, 2.0 * out.cutoff, options);
    out.value += panel.value;
    out.error_estimate += panel.error_estimate;
    out.evaluations += panel.evaluations;
    out.cutoff *= 2.0;
    if (out.value != 0.0 && std::abs(panel.value) < tol * std::abs(out.value)) return out;
  }
  throw ConvergenceError("integrate_semi_infinite_time: no decay detected", out);
}

}  // namespace cldecohere
