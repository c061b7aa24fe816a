#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "cldecohere/cat_state.hpp"
#include "cldecohere/gaussian.hpp"

namespace cldecohere {

/// J(x, t) of whatever is being detected.
using CurrentField = std::function<double(double x, double t)>;

/// Thrown when a scenario cannot produce a result (e.g. no flux reaches the detector).
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ArrivalOptions {
  /// Detection window [0, window]. Infinity switches to geometric cutoff
  /// doubling, which only converges when |J(X, t)| decays faster than 1/t^3.
  double window = 200.0;
  double tol = 1e-10;
  std::size_t panels = 64;  ///< initial split of the window for the quadratures
};

struct ArrivalDistribution {
  double detector = 0.0;
  std::vector<double> times;
  std::vector<double> pi_values;
  double flux = 0.0;  ///< int |J(X, t)| dt over the window
  double tau_a = 0.0;
  double sigma_a = 0.0;
  double normalization_check = 0.0;  ///< int Pi_a dt, independently integrated
  double window = 0.0;
};

/// Pi_a(X, t) = |J(X, t)| / int |J(X, t')| dt' sampled on `times`, with tau_a and
/// sigma_a from adaptive quadrature. Throws ScenarioError if no flux arrives.
ArrivalDistribution arrival_distribution(const CurrentField& current, double detector,
                                         const std::vector<double>& times,
                                         const ArrivalOptions& options = {});

ArrivalDistribution arrival_distribution(const EvolvedGaussian& packet, double detector,
                                         const std::vector<double>& times,
                                         const ArrivalOptions& options = {});

ArrivalDistribution arrival_distribution(const CatState& cat, const Environment& env,
                                         const ModelConstants& c, double detector,
                                         const std::vector<double>& times,
                                         const ArrivalOptions& options = {});

struct ArrivalMoments {
  double mean = 0.0;
  double rms = 0.0;
};

/// Trapezoid moments of a sampled distribution. Throws std::domain_error if
/// the samples do not integrate to 1 within norm_tol.
ArrivalMoments mean_and_rms(const std::vector<double>& times, const std::vector<double>& pi_values,
                            double norm_tol = 1e-3);

inline ArrivalMoments mean_and_rms(const ArrivalDistribution& d, double norm_tol = 1e-3) {
  return mean_and_rms(d.times, d.pi_values, norm_tol);
}

enum class SeedLabel { single, left, right, center };

struct TrajectoryBundle {
  std::vector<double> seeds;
  std::vector<SeedLabel> labels;
  std::vector<double> times;
  /// positions[i][k] is seed i at times[k]; NaN after termination.
  std::vector<std::vector<double>> positions;
  /// Time at which the velocity could not be evaluated, if it happened.
  std::vector<std::optional<double>> terminated_at;
};

/// n equispaced quantiles (i + 1/2)/n of the packet's initial |psi|^2.
std::vector<double> quantile_seeds(const GaussianPacket& p, std::size_t n);

/// n_per_branch quantile seeds for each branch plus one seed at each branch
/// centre, labelled left/right/center by branch position.
void cat_seeds(const CatState& cat, std::size_t n_per_branch, std::vector<double>& seeds,
               std::vector<SeedLabel>& labels);

/// RK4 integration of dx/dt = v(x, t) from times.front() through every sample
/// of `times`, with steps no longer than h.
TrajectoryBundle bohm_trajectories(const VelocityField& velocity, const std::vector<double>& seeds,
                                   const std::vector<SeedLabel>& labels,
                                   const std::vector<double>& times, double h = 1e-3,
                                   std::size_t jobs = 1);

/// Velocity J/P of a superposition; throws StepError where P < 1e-300.
VelocityField cat_velocity(const CatState& cat, const Environment& env, const ModelConstants& c);

/// Sorted-gap clustering: the number of groups separated by gaps wider than `min_gap`.
std::size_t count_clusters(std::vector<double> positions, double min_gap);

}  // namespace cldecohere
