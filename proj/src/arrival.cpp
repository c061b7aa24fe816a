#include "cldecohere/arrival.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "cldecohere/parallel.hpp"

namespace cldecohere {

namespace {

// Sum of adaptive integrals over equal panels of [0, window]; sign changes of J
// make |J| kinked, and a fixed initial split keeps the bisection local.
double integrate_window(const RealFunction& f, double window, const ArrivalOptions& o,
                        double scale) {
  QuadratureOptions q;
  q.abs_tol = o.tol * scale / static_cast<double>(o.panels);
  q.rel_tol = o.tol;
  double sum = 0.0;
  const double width = window / static_cast<double>(o.panels);
  for (std::size_t i = 0; i < o.panels; ++i) {
    const double a = width * static_cast<double>(i);
    const double b = i + 1 == o.panels ? window : a + width;
    sum += integrate_adaptive(f, a, b, q).value;
  }
  return sum;
}

}  // namespace

ArrivalDistribution arrival_distribution(const CurrentField& current, double detector,
                                         const std::vector<double>& times,
                                         const ArrivalOptions& options) {
  if (!std::isfinite(detector)) throw std::domain_error("arrival_distribution: detector must be finite");
  if (!(options.tol > 0.0) || options.panels == 0)
    throw std::domain_error("arrival_distribution: bad options");
  const RealFunction flux = [&](double t) { return std::abs(current(detector, t)); };

  ArrivalDistribution d;
  d.detector = detector;
  d.times = times;

  double window = options.window;
  if (std::isinf(window)) {
    const SemiInfiniteResult r = integrate_semi_infinite_time(flux, options.tol);
    window = r.cutoff;
  }
  if (!(window > 0.0)) throw std::domain_error("arrival_distribution: window must be positive");
  d.window = window;

  // rough scale of the flux for absolute tolerances
  double peak = 0.0;
  for (int i = 0; i <= 256; ++i) peak = std::max(peak, flux(window * i / 256.0));
  if (!(peak > 0.0)) throw ScenarioError("arrival_distribution: no flux reaches the detector");

  d.flux = integrate_window(flux, window, options, peak);
  if (!(d.flux > 0.0)) throw ScenarioError("arrival_distribution: no flux reaches the detector");

  const RealFunction pi = [&](double t) { return flux(t) / d.flux; };
  d.normalization_check = integrate_window(pi, window, options, peak / d.flux);
  d.tau_a = integrate_window([&](double t) { return t * pi(t); }, window, options,
                             window * peak / d.flux);
  const double second = integrate_window(
      [&](double t) { return (t - d.tau_a) * (t - d.tau_a) * pi(t); }, window, options,
      window * window * peak / d.flux);
  d.sigma_a = std::sqrt(std::max(0.0, second));

  d.pi_values.reserve(times.size());
  for (double t : times) d.pi_values.push_back(t >= 0.0 && t <= window ? pi(t) : 0.0);
  return d;
}

ArrivalDistribution arrival_distribution(const EvolvedGaussian& packet, double detector,
                                         const std::vector<double>& times,
                                         const ArrivalOptions& options) {
  return arrival_distribution(
      [&](double x, double t) { return packet.probability_current(x, t); }, detector, times,
      options);
}

ArrivalDistribution arrival_distribution(const CatState& cat, const Environment& env,
                                         const ModelConstants& c, double detector,
                                         const std::vector<double>& times,
                                         const ArrivalOptions& options) {
  return arrival_distribution(
      [&](double x, double t) { return cat_current(cat, x, t, env, c); }, detector, times,
      options);
}

ArrivalMoments mean_and_rms(const std::vector<double>& times, const std::vector<double>& pi_values,
                            double norm_tol) {
  if (times.size() != pi_values.size() || times.size() < 2)
    throw std::domain_error("mean_and_rms: need matching samples");
  double n = 0.0;
  double m1 = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double h = times[i] - times[i - 1];
    n += 0.5 * h * (pi_values[i] + pi_values[i - 1]);
    m1 += 0.5 * h * (times[i] * pi_values[i] + times[i - 1] * pi_values[i - 1]);
  }
  if (!(std::abs(n - 1.0) <= norm_tol)) throw std::domain_error("mean_and_rms: distribution not normalized");
  m1 /= n;
  double m2 = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double h = times[i] - times[i - 1];
    const double a = times[i - 1] - m1;
    const double b = times[i] - m1;
    m2 += 0.5 * h * (b * b * pi_values[i] + a * a * pi_values[i - 1]);
  }
  return {m1, std::sqrt(std::max(0.0, m2 / n))};
}

std::vector<double> quantile_seeds(const GaussianPacket& p, std::size_t n) {
  p.validate();
  std::vector<double> out;
  out.reserve(n);
  const double spread = p.position_uncertainty() * std::numbers::sqrt2;
  for (std::size_t i = 0; i < n; ++i) {
    const double q = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    out.push_back(p.x0 + spread * boost::math::erf_inv(2.0 * q - 1.0));
  }
  return out;
}

void cat_seeds(const CatState& cat, std::size_t n_per_branch, std::vector<double>& seeds,
               std::vector<SeedLabel>& labels) {
  cat.validate();
  const bool a_left = cat.a.x0 <= cat.b.x0;
  const GaussianPacket& left = a_left ? cat.a : cat.b;
  const GaussianPacket& right = a_left ? cat.b : cat.a;
  seeds.clear();
  labels.clear();
  for (double s : quantile_seeds(left, n_per_branch)) {
    seeds.push_back(s);
    labels.push_back(SeedLabel::left);
  }
  for (double s : quantile_seeds(right, n_per_branch)) {
    seeds.push_back(s);
    labels.push_back(SeedLabel::right);
  }
  seeds.push_back(left.x0);
  labels.push_back(SeedLabel::center);
  seeds.push_back(right.x0);
  labels.push_back(SeedLabel::center);
}

TrajectoryBundle bohm_trajectories(const VelocityField& velocity, const std::vector<double>& seeds,
                                   const std::vector<SeedLabel>& labels,
                                   const std::vector<double>& times, double h, std::size_t jobs) {
  if (seeds.size() != labels.size()) throw std::domain_error("bohm_trajectories: label count mismatch");
  if (times.empty()) throw std::domain_error("bohm_trajectories: empty time grid");
  if (!(h >= 1e-6)) throw std::domain_error("bohm_trajectories: step below 1e-6");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw std::domain_error("bohm_trajectories: times must increase");

  TrajectoryBundle b;
  b.seeds = seeds;
  b.labels = labels;
  b.times = times;
  b.positions.assign(seeds.size(), std::vector<double>(times.size(), std::nan("")));
  b.terminated_at.assign(seeds.size(), std::nullopt);

  parallel_for(seeds.size(), jobs, [&](std::size_t i) {
    double x = seeds[i];
    b.positions[i][0] = x;
    for (std::size_t k = 1; k < times.size(); ++k) {
      const double span = times[k] - times[k - 1];
      const auto steps = static_cast<std::size_t>(std::ceil(span / h - 1e-9));
      const double dt = span / static_cast<double>(steps);
      try {
        for (std::size_t s = 0; s < steps; ++s) {
          x = rk4_step(velocity, x, times[k - 1] + dt * static_cast<double>(s), dt);
        }
      } catch (const StepError&) {
        b.terminated_at[i] = times[k - 1];
        return;
      }
      b.positions[i][k] = x;
    }
  });
  return b;
}

VelocityField cat_velocity(const CatState& cat, const Environment& env, const ModelConstants& c) {
  cat.validate();
  return [cat, env, c](double x, double t) {
    const double p = cat_density_kernel(cat, x, t, env, c);
    if (!(p >= 1e-300)) throw StepError("cat_velocity: density underflow");
    return cat_current(cat, x, t, env, c) / p;
  };
}

std::size_t count_clusters(std::vector<double> positions, double min_gap) {
  positions.erase(std::remove_if(positions.begin(), positions.end(),
                                 [](double v) { return !std::isfinite(v); }),
                  positions.end());
  if (positions.empty()) return 0;
  std::sort(positions.begin(), positions.end());
  std::size_t clusters = 1;
  for (std::size_t i = 1; i < positions.size(); ++i)
    if (positions[i] - positions[i - 1] > min_gap) ++clusters;
  return clusters;
}

}  // namespace cldecohere
