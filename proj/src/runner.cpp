#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cldecohere/arrival.hpp"
#include "cldecohere/cat_state.hpp"
#include "cldecohere/identical.hpp"
#include "cldecohere/parallel.hpp"
#include "cldecohere/runner.hpp"
#include "cldecohere/shutter.hpp"
#include "run_context.hpp"

namespace cldecohere {

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["version"] = version;
  j["parameters"] = parameters;
  j["files"] = files;
  j["partial"] = partial;
  j["notes"] = notes;
  j["warnings"] = warnings;
  j["wall_time_s"] = wall_time_s;
  return j;
}

namespace detail {

RunContext::RunContext(const RunOptions& opts, RunManifest& manifest)
    : opts_(opts), manifest_(manifest), jobs_(resolve_jobs(opts.jobs)) {}

std::unique_ptr<CsvWriter> RunContext::open_csv(const std::string& name,
                                                const std::vector<std::string>& header) {
  auto w = std::make_unique<CsvWriter>(opts_.out_dir / name, header);
  std::lock_guard<std::mutex> lock(mutex_);
  manifest_.files.push_back(name);
  return w;
}

void RunContext::flag_partial(const std::string& message) {
  partial_.store(true);
  std::lock_guard<std::mutex> lock(mutex_);
  manifest_.partial = true;
  if (partial_messages_++ < 5) manifest_.notes.push_back("partial: " + message);
}

std::string tag(double v) {
  std::ostringstream s;
  s << v;
  std::string out = s.str();
  // 1e-04 style from operator<< is awkward in file names
  if (out.find('e') != std::string::npos) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    out = buf;
    while (!out.empty() && out.back() == '0') out.pop_back();
    if (!out.empty() && out.back() == '.') out.pop_back();
  }
  return out;
}

nlohmann::ordered_json to_json(const GaussianPacket& p) {
  return {{"x0", p.x0}, {"p0", p.p0}, {"sigma0", p.sigma0}, {"eta", p.eta}};
}

nlohmann::ordered_json to_json(const UniformGrid& g) {
  return {{"min", g.min}, {"max", g.max}, {"count", g.count}};
}

void write_arrival(RunContext& ctx, const Scenario& s, const std::string& dist_name,
                   CsvWriter& moments, double window) {
  ArrivalOptions opts;
  opts.window = window;
  opts.tol = ctx.tol(opts.tol);
  const std::vector<double> times = s.time->values();
  ArrivalDistribution d;
  if (s.packets.size() == 1) {
    d = arrival_distribution(EvolvedGaussian(s.packets[0], s.environment, s.constants), *s.detector,
                             times, opts);
  } else {
    d = arrival_distribution(CatState{s.packets[0], s.packets[1]}, s.environment, s.constants,
                             *s.detector, times, opts);
  }
  auto out = ctx.open_csv(dist_name, {"t(1/E_unit)", "Pi(E_unit)"});
  for (std::size_t i = 0; i < times.size(); ++i) out->row({times[i], d.pi_values[i]});
  out->close();
  moments.row({s.environment.kT, s.environment.gamma, d.tau_a, d.sigma_a});
  if (std::abs(d.normalization_check - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << dist_name << ": int Pi dt over the window = " << d.normalization_check;
    ctx.manifest().warnings.push_back(msg.str());
  }
}

void write_cat_density(RunContext& ctx, const CatState& cat, const Environment& env,
                       const ModelConstants& c, const UniformGrid& xs, const UniformGrid& ts,
                       const std::string& name) {
  const std::size_t nx = xs.count;
  std::vector<double> P(nx * ts.count), J(nx * ts.count);
  parallel_for(ts.count, ctx.jobs(), [&](std::size_t k) {
    const double t = ts.at(k);
    for (std::size_t i = 0; i < nx; ++i) {
      P[k * nx + i] = cat_density(cat, xs.at(i), t, env, c);
      J[k * nx + i] = cat_current(cat, xs.at(i), t, env, c);
    }
  });
  auto out = ctx.open_csv(name, {"x(L_unit)", "t(1/E_unit)", "P(1/L_unit)", "J(E_unit)"});
  for (std::size_t k = 0; k < ts.count; ++k)
    for (std::size_t i = 0; i < nx; ++i) out->row({xs.at(i), ts.at(k), P[k * nx + i], J[k * nx + i]});
  out->close();
}

void write_decoherence_rows(CsvWriter& out, const CatState& cat, const Environment& env,
                            const ModelConstants& c, const UniformGrid& ts,
                            const std::vector<double>& prefix, bool with_printed) {
  const DecoherenceCurve curve = decoherence_curve(cat, ts.values(), env, c);
  for (std::size_t k = 0; k < curve.times.size(); ++k) {
    std::vector<double> row = prefix;
    row.push_back(curve.times[k]);
    row.push_back(curve.gamma_values[k]);
    row.push_back(curve.attenuation[k]);
    if (with_printed) {
      const double printed = gamma_stretched_printed(curve.times[k], cat, env, c);
      row.push_back(printed);
      row.push_back(attenuation(printed));
    }
    out.row(row);
  }
}

TrajectoryBundle compute_trajectories(RunContext& ctx, const Scenario& s, std::size_t per_branch,
                                      double h) {
  std::vector<double> seeds;
  std::vector<SeedLabel> labels;
  VelocityField v;
  if (s.packets.size() == 1) {
    seeds = quantile_seeds(s.packets[0], per_branch);
    labels.assign(seeds.size(), SeedLabel::single);
    const EvolvedGaussian g(s.packets[0], s.environment, s.constants);
    v = [g](double x, double t) { return g.bohm_velocity(x, t); };
  } else {
    const CatState cat{s.packets[0], s.packets[1]};
    cat_seeds(cat, per_branch, seeds, labels);
    v = cat_velocity(cat, s.environment, s.constants);
  }
  TrajectoryBundle b = bohm_trajectories(v, seeds, labels, s.time->values(), h, ctx.jobs());
  for (std::size_t i = 0; i < b.terminated_at.size(); ++i) {
    if (b.terminated_at[i]) {
      std::ostringstream msg;
      msg << "trajectory " << i << " stopped at t = " << *b.terminated_at[i]
          << " (density underflow)";
      ctx.manifest().warnings.push_back(msg.str());
    }
  }
  return b;
}

namespace {

const char* label_name(SeedLabel l) {
  switch (l) {
    case SeedLabel::single: return "single";
    case SeedLabel::left: return "left";
    case SeedLabel::right: return "right";
    case SeedLabel::center: return "center";
  }
  return "?";
}

}  // namespace

void write_trajectories(RunContext& ctx, const TrajectoryBundle& b, const std::string& name) {
  auto out = ctx.open_csv(name, {"seed(1)", "branch", "t(1/E_unit)", "x(L_unit)"});
  for (std::size_t i = 0; i < b.seeds.size(); ++i)
    for (std::size_t k = 0; k < b.times.size(); ++k)
      out->row_cells({std::to_string(i), label_name(b.labels[i]), format_number(b.times[k]),
                      format_number(b.positions[i][k])});
  out->close();
}

double shutter_point(RunContext& ctx, double x, double t, double k, const Environment& env,
                     const ModelConstants& c, double r_min) {
  ShutterConfig cfg;
  cfg.k = k;
  cfg.env = env;
  cfg.r_min = r_min;
  cfg.tol = ctx.tol(cfg.tol);
  try {
    return shutter_density(x, t, cfg, c);
  } catch (const ConvergenceError& e) {
    std::ostringstream msg;
    msg << "shutter quadrature unconverged at x=" << x << ", t=" << t << " (kT=" << env.kT << ")";
    ctx.flag_partial(msg.str());
    return e.partial().value;
  }
}

}  // namespace detail

namespace {

using detail::RunContext;

void run_scenario(const Scenario& s, const ConfigMap& cfg, RunContext& ctx) {
  nlohmann::ordered_json& p = ctx.manifest().parameters;
  p["kind"] = std::string(to_string(s.kind));
  p["hbar"] = s.constants.hbar;
  p["mass"] = s.constants.mass;
  p["g"] = s.constants.g;
  p["gamma"] = s.environment.gamma;
  p["kT"] = s.environment.kT;
  p["D"] = diffusion_coefficient(s.environment, s.constants);
  p["packets"] = nlohmann::ordered_json::array();
  for (const auto& pk : s.packets) p["packets"].push_back(detail::to_json(pk));
  if (s.space) p["x"] = detail::to_json(*s.space);
  if (s.time) p["t"] = detail::to_json(*s.time);
  if (s.detector) p["detector"] = *s.detector;
  if (s.wavenumber) p["k"] = *s.wavenumber;
  if (s.statistics) p["statistics"] = std::string(to_string(*s.statistics));

  switch (s.kind) {
    case ScenarioKind::arrival: {
      const double window = config_number(cfg, "window", 200.0);
      p["window"] = window;
      p["tol"] = ctx.tol(1e-10);
      auto moments = ctx.open_csv("arrival_moments.csv",
                                  {"kT(E_unit)", "gamma(E_unit)", "tau_a(1/E_unit)", "sigma_a(1/E_unit)"});
      detail::write_arrival(ctx, s, "arrival_dist.csv", *moments, window);
      moments->close();
      break;
    }
    case ScenarioKind::cat: {
      const CatState cat{s.packets[0], s.packets[1]};
      detail::write_cat_density(ctx, cat, s.environment, s.constants, *s.space, *s.time, "cat_density.csv");
      if (cat.is_symmetric() && s.constants.g == 0.0) {
        auto out = ctx.open_csv("decoherence.csv", {"t(1/E_unit)", "Gamma(1)", "a(1)"});
        detail::write_decoherence_rows(*out, cat, s.environment, s.constants, *s.time, {}, false);
        out->close();
      }
      break;
    }
    case ScenarioKind::stretch_cat: {
      const CatState cat{s.packets[0], s.packets[1]};
      auto out = ctx.open_csv("attenuation.csv", {"t(1/E_unit)", "Gamma(1)", "a(1)"});
      detail::write_decoherence_rows(*out, cat, s.environment, s.constants, *s.time, {}, false);
      out->close();
      break;
    }
    case ScenarioKind::identical_single:
    case ScenarioKind::identical_joint: {
      auto state = [&](std::size_t first, std::size_t count) {
        OneParticleState st;
        for (std::size_t i = first; i < first + count; ++i) st.terms.push_back({Complex(1.0, 0.0), s.packets[i]});
        return st;
      };
      const std::size_t per = s.packets.size() / 2;
      const TwoParticleSystem sys(state(0, per), state(per, per), *s.statistics, s.environment, s.constants);
      p["overlap_abs"] = std::abs(sys.overlap());
      const UniformGrid& xs = *s.space;
      const UniformGrid& ts = *s.time;
      const bool joint = s.kind == ScenarioKind::identical_joint;
      std::vector<double> a(xs.count * ts.count), b(xs.count * ts.count);
      parallel_for(ts.count, ctx.jobs(), [&](std::size_t k) {
        const double t = ts.at(k);
        for (std::size_t i = 0; i < xs.count; ++i) {
          const double x = xs.at(i);
          if (joint) {
            a[k * xs.count + i] = sys.joint_density(*s.detector, x, t);
          } else {
            a[k * xs.count + i] = sys.single_particle_density(x, t);
            b[k * xs.count + i] = sys.single_particle_current(x, t);
          }
        }
      });
      auto out = joint ? ctx.open_csv("joint.csv", {"x2(L_unit)", "t(1/E_unit)", "P(1/L_unit^2)"})
                       : ctx.open_csv("single_particle.csv",
                                      {"x(L_unit)", "t(1/E_unit)", "P(1/L_unit)", "J(E_unit)"});
      for (std::size_t k = 0; k < ts.count; ++k) {
        for (std::size_t i = 0; i < xs.count; ++i) {
          const std::size_t n = k * xs.count + i;
          if (joint) out->row({xs.at(i), ts.at(k), a[n]});
          else out->row({xs.at(i), ts.at(k), a[n], b[n]});
        }
      }
      out->close();
      break;
    }
    case ScenarioKind::shutter: {
      const double r_min = config_number(cfg, "r_min", -200.0);
      p["r_min"] = r_min;
      p["tol"] = ctx.tol(1e-10);
      ShutterConfig sc;
      sc.k = *s.wavenumber;
      sc.env = s.environment;
      sc.r_min = r_min;
      sc.validate();
      for (const auto& w : shutter_warnings(sc, s.time->max)) ctx.manifest().warnings.push_back(w);
      const UniformGrid& xs = *s.space;
      const UniformGrid& ts = *s.time;
      std::vector<double> P(xs.count * ts.count);
      parallel_for(ts.count, ctx.jobs(), [&](std::size_t k) {
        for (std::size_t i = 0; i < xs.count; ++i)
          P[k * xs.count + i] =
              detail::shutter_point(ctx, xs.at(i), ts.at(k), sc.k, s.environment, s.constants, r_min);
      });
      auto out = ctx.open_csv("shutter_xt.csv", {"x(L_unit)", "t(1/E_unit)", "P(1)"});
      for (std::size_t k = 0; k < ts.count; ++k)
        for (std::size_t i = 0; i < xs.count; ++i) out->row({xs.at(i), ts.at(k), P[k * xs.count + i]});
      out->close();
      break;
    }
    case ScenarioKind::trajectories: {
      const double seeds = config_number(cfg, "seeds", 20.0);
      const double h = config_number(cfg, "step", 1e-3);
      if (!(seeds >= 1.0) || seeds != std::floor(seeds)) throw ConfigError("config: seeds must be a positive integer");
      p["seeds"] = seeds;
      p["step"] = h;
      const TrajectoryBundle b = detail::compute_trajectories(ctx, s, static_cast<std::size_t>(seeds), h);
      detail::write_trajectories(ctx, b, "trajectories.csv");
      break;
    }
    case ScenarioKind::residual_check: {
      const double h = config_number(cfg, "step", 1e-3);
      p["step"] = h;
      const EvolvedGaussian g(s.packets[0], s.environment, s.constants);
      const DensityMatrixFunction rho = [&](double x, double xp, double t) {
        return g.density_matrix_xy(x, xp, t);
      };
      const UniformGrid xs = s.space.value_or(UniformGrid{-2.0, 2.0, 5});
      const UniformGrid ts = s.time.value_or(UniformGrid{0.5, 2.0, 4});
      auto out = ctx.open_csv("residual.csv", {"x(L_unit)", "xp(L_unit)", "t(1/E_unit)",
                                               "residual_abs(E_unit)", "residual_rel(1)"});
      for (std::size_t k = 0; k < ts.count; ++k) {
        for (std::size_t i = 0; i < xs.count; ++i) {
          for (std::size_t j = 0; j < xs.count; ++j) {
            const PhasePoint pt{xs.at(i), xs.at(j), ts.at(k)};
            if (pt.t - 2.0 * h < 0.0) continue;
            const double res = std::abs(residual_cl(rho, pt, h, s.environment, s.constants));
            const double scale = std::abs(central_time_derivative(rho, pt, h)) + std::abs(rho(pt.x, pt.xp, pt.t));
            out->row({pt.x, pt.xp, pt.t, res, scale > 0.0 ? res / scale : res});
          }
        }
      }
      out->close();
      break;
    }
  }
}

template <class Body>
RunOutcome execute(const std::string& scenario, const RunOptions& opts, Body body) {
  RunOutcome outcome;
  RunManifest& m = outcome.manifest;
  m.scenario = scenario;
  m.version = CLDECOHERE_VERSION;
  const auto start = std::chrono::steady_clock::now();
  std::error_code ec;
  std::filesystem::create_directories(opts.out_dir, ec);
  if (ec) {
    outcome.exit_code = 2;
    outcome.message = "cannot create output directory " + opts.out_dir.string() + ": " + ec.message();
    return outcome;
  }
  RunContext ctx(opts, m);
  try {
    body(ctx);
    if (ctx.partial()) {
      outcome.exit_code = 3;
      outcome.message = "some points did not converge; outputs are partial";
    }
  } catch (const ConvergenceError& e) {
    m.partial = true;
    m.notes.push_back(std::string("partial: ") + e.what());
    outcome.exit_code = 3;
    outcome.message = e.what();
  } catch (const ConfigError& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
  } catch (const ScenarioError& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
  } catch (const std::domain_error& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
  }
  if (outcome.exit_code == 2) return outcome;  // nothing useful was produced
  m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ofstream out(opts.out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
  out << m.to_json().dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write manifest.json");
  return outcome;
}

}  // namespace

RunOutcome run_config(const ConfigMap& cfg, const RunOptions& opts) {
  std::string name = "run";
  if (auto it = cfg.find("name"); it != cfg.end()) name = it->second;
  RunOptions effective = opts;
  if (!effective.tol) {
    if (auto it = cfg.find("tol"); it != cfg.end()) effective.tol = config_number(cfg, "tol", 0.0);
  }
  if (effective.tol && !(*effective.tol > 0.0)) {
    RunOutcome bad;
    bad.exit_code = 2;
    bad.message = "tol must be positive";
    return bad;
  }
  return execute(name, effective, [&](RunContext& ctx) {
    const Scenario s = scenario_from_config(cfg);
    run_scenario(s, cfg, ctx);
  });
}

RunOutcome run_preset(const std::string& name, const RunOptions& opts) {
  if (!is_preset(name)) {
    RunOutcome bad;
    bad.exit_code = 2;
    bad.message = "unknown preset: " + name;
    return bad;
  }
  if (opts.tol && !(*opts.tol > 0.0)) {
    RunOutcome bad;
    bad.exit_code = 2;
    bad.message = "tol must be positive";
    return bad;
  }
  return execute(name, opts, [&](RunContext& ctx) { detail::run_preset_body(name, ctx); });
}

}  // namespace cldecohere
