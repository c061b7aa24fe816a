#include "cldecohere/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "cldecohere/arrival.hpp"
#include "cldecohere/cat_state.hpp"
#include "cldecohere/identical.hpp"
#include "cldecohere/shutter.hpp"

namespace cldecohere {

namespace {

struct Check {
  std::string name;
  std::function<double()> measure;  // returns the error being bounded
  double bound;
};

}  // namespace

std::vector<SelfTestResult> run_selftest() {
  const ModelConstants c;
  const CatState fig2 = CatState::symmetric(5.0, -2.0, 1.0);

  const std::vector<Check> checks{
      {"erf on the real axis",
       [] {
         double worst = 0.0;
         for (double x = -5.0; x <= 5.0; x += 0.25)
           worst = std::max(worst, std::abs(erf_complex({x, 0.0}) - Complex(std::erf(x), 0.0)));
         return worst;
       },
       1e-13},
      {"erf conjugate symmetry",
       [] {
         const Complex z(1.3, -2.7);
         return std::abs(erf_complex(std::conj(z)) - std::conj(erf_complex(z)));
       },
       1e-13},
      {"Fresnel limits",
       [] {
         const FresnelPair f0 = fresnel(0.0);
         const FresnelPair big = fresnel(1e6);
         return std::abs(f0.c) + std::abs(f0.s) + std::abs(big.c - 0.5) + std::abs(big.s - 0.5);
       },
       1e-6},
      {"master-equation residual of the closed form",
       [c] {
         ModelConstants cg = c;
         cg.g = 1.0;
         const EvolvedGaussian g({0.3, 0.7, 0.8, 1.5}, {0.2, 3.0}, cg);
         const DensityMatrixFunction rho = [&](double x, double xp, double t) {
           return g.density_matrix_xy(x, xp, t);
         };
         const PhasePoint p{0.4, -0.3, 1.2};
         const double scale = std::abs(central_time_derivative(rho, p, 1e-3)) + std::abs(rho(p.x, p.xp, p.t));
         return std::abs(residual_cl(rho, p, 1e-3, {0.2, 3.0}, cg)) / scale;
       },
       1e-5},
      {"single-packet continuity",
       [c] {
         const EvolvedGaussian g({-1.0, 0.5, 1.0, 0.5}, {0.1, 2.0}, c);
         const double x = 0.2, t = 1.5, h = 1e-4;
         const double dp = (g.probability_density(x, t + h) - g.probability_density(x, t - h)) / (2 * h);
         const double dj = (g.probability_current(x + h, t) - g.probability_current(x - h, t)) / (2 * h);
         return std::abs(dp + dj) / (std::abs(dp) + 1e-12);
       },
       1e-6},
      {"Gamma vanishes at D = 0 and t = 0",
       [&] {
         return std::abs(gamma_min(3.0, fig2, {0.05, 0.0}, c)) + std::abs(gamma_min(0.0, fig2, {0.05, 1.0}, c));
       },
       0.0},
      {"Gamma long-time limit -20.5",
       [&] { return std::abs(gamma_min(1e7, fig2, {0.05, 1.0}, c) + 20.5); },
       1e-3},
      {"closed-form cross term vs pair kernel",
       [&] {
         double worst = 0.0;
         for (double x = -10.0; x <= 10.0; x += 0.5) {
           const double closed = cat_cross_term_closed(fig2, x, 2.0, {0.01, 1.0}, c);
           const double kernel = 2.0 * cross_density(fig2.a, fig2.b, 2.0, {0.01, 1.0}, c).value(x).real();
           worst = std::max(worst, std::abs(closed - kernel));
         }
         return worst;
       },
       1e-9},
      {"arrival-time normalization",
       [c] {
         const EvolvedGaussian g({-5.0, 0.5, 1.0, 0.0}, {0.1, 5.0}, c);
         const ArrivalDistribution d = arrival_distribution(g, 0.0, {0.0, 10.0, 20.0});
         return std::abs(d.normalization_check - 1.0);
       },
       1e-6},
      {"Bohmian quantile invariance",
       [c] {
         const GaussianPacket p{5.0, -2.0, 1.0, 1.0};
         const EvolvedGaussian g(p, {0.05, 1.0}, c);
         const double q = 1.0;
         const TrajectoryBundle b = bohm_trajectories(
             [&](double x, double t) { return g.bohm_velocity(x, t); },
             {p.x0 + q * p.position_uncertainty()}, {SeedLabel::single}, {0.0, 1.0, 2.0}, 1e-3);
         return std::abs(b.positions[0].back() - (g.classical_center(2.0) + q * g.width(2.0)));
       },
       1e-5},
      {"identical-particle overlap is time independent",
       [c] {
         const TwoParticleSystem s(OneParticleState::cat(5, 0, 1), OneParticleState::cat(5, 0, 0.5),
                                   Statistics::fermion, {0.4, 10.0}, c);
         const PairKernel k({5, 0, 1, 0}, {5, 0, 0.5, 0}, {0.4, 10.0}, c);
         double worst = 0.0;
         for (double t : {0.0, 0.5, 2.0}) {
           const GaussianForm f = k.form(t);
           worst = std::max(worst, std::abs(f.weight - std::conj(k.overlap())));
         }
         return worst + std::abs(gamma12(1.0, PairKernel({0, 1, 1, 0}, {0, 1, 1, 0}, {0.4, 10.0}, c)));
       },
       1e-12},
      {"shutter density at the classical front (T = 0)",
       [c] { return std::abs(shutter_density_zeroT(5.0, 5.0, 1.0, c) - 0.25); },
       1e-15},
      {"shutter erf branch vs Fresnel at small D",
       [c] {
         ShutterConfig cfg;
         cfg.env = {1e-8 / 2.0, 1.0};
         return std::abs(shutter_density(10.0, 50.0, cfg, c) - shutter_density_zeroT(10.0, 50.0, 1.0, c));
       },
       1e-3},
  };

  std::vector<SelfTestResult> out;
  for (const Check& ch : checks) {
    SelfTestResult r;
    r.name = ch.name;
    try {
      const double err = ch.measure();
      r.passed = std::isfinite(err) && err <= ch.bound;
      std::ostringstream msg;
      msg << "error " << err << " (bound " << ch.bound << ")";
      r.detail = msg.str();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("threw: ") + e.what();
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace cldecohere
