#include <cmath>
#include <stdexcept>

#include "cldecohere/analysis.hpp"
#include "cldecohere/cat_state.hpp"
#include "cldecohere/identical.hpp"
#include "cldecohere/parallel.hpp"
#include "cldecohere/shutter.hpp"
#include "run_context.hpp"

namespace cldecohere {

namespace {

using detail::RunContext;
using detail::tag;
using Json = nlohmann::ordered_json;

const ModelConstants kUnits{};  // hbar = m = 1, no force

// Cat packet shared by presets fig2 to fig5.
constexpr double kCatX0 = 5.0;
constexpr double kCatP0 = -2.0;
constexpr double kCatSigma = 1.0;

Json env_list(const std::vector<Environment>& envs) {
  Json out = Json::array();
  for (const auto& e : envs) out.push_back({{"gamma", e.gamma}, {"kT", e.kT}});
  return out;
}

void fig1(RunContext& ctx) {
  const GaussianPacket packet{-5.0, 0.5, 1.0, 0.0};
  const std::vector<double> gammas{0.05, 0.1, 0.15, 0.2};
  const std::vector<double> temps{1.0, 5.0, 10.0};
  const UniformGrid ts{0.0, 100.0, 1001};
  const double window = 200.0;
  Json& p = ctx.manifest().parameters;
  p["packet"] = detail::to_json(packet);
  p["detector"] = 0.0;
  p["gamma"] = gammas;
  p["kT"] = temps;
  p["t"] = detail::to_json(ts);
  p["window"] = window;
  p["tol"] = ctx.tol(1e-10);
  ctx.manifest().notes.push_back("Pi_a is normalized over the detection window [0, window]");

  auto moments = ctx.open_csv("arrival_moments.csv",
                              {"kT(E_unit)", "gamma(E_unit)", "tau_a(1/E_unit)", "sigma_a(1/E_unit)"});
  for (double g : gammas) {
    for (double kT : temps) {
      Scenario s;
      s.kind = ScenarioKind::arrival;
      s.environment = {g, kT};
      s.packets = {packet};
      s.time = ts;
      s.detector = 0.0;
      s.validate();
      detail::write_arrival(ctx, s, "arrival_dist_g" + tag(g) + "_T" + tag(kT) + ".csv", *moments, window);
    }
  }
  moments->close();
}

void fig2(RunContext& ctx) {
  const CatState cat = CatState::symmetric(kCatX0, kCatP0, kCatSigma);
  const std::vector<Environment> envs{{0.005, 1.0}, {0.01, 1.0}, {0.015, 1.0}, {0.05, 1.0},
                                      {0.05, 2.0},  {0.05, 5.0}, {0.05, 8.0}};
  const UniformGrid ts{0.0, 2000.0, 2001};
  Json& p = ctx.manifest().parameters;
  p["cat"] = {{"x0", kCatX0}, {"p0", kCatP0}, {"sigma0", kCatSigma}};
  p["environments"] = env_list(envs);
  p["t"] = detail::to_json(ts);
  ctx.manifest().notes.push_back("left panel: kT = 1; right panel: gamma = 0.05");

  auto out = ctx.open_csv("decoherence.csv",
                          {"gamma(E_unit)", "kT(E_unit)", "t(1/E_unit)", "Gamma(1)", "a(1)"});
  for (const auto& e : envs) detail::write_decoherence_rows(*out, cat, e, kUnits, ts, {e.gamma, e.kT}, false);
  out->close();
}

void fig3(RunContext& ctx) {
  const double gamma = 0.005;
  const std::vector<double> temps{1.0, 5.0};
  const std::vector<double> etas{0.0, 1.0, 2.0, 3.0};
  const UniformGrid ts{0.0, 1000.0, 1001};
  Json& p = ctx.manifest().parameters;
  p["cat"] = {{"x0", kCatX0}, {"p0", kCatP0}, {"sigma0", kCatSigma}};
  p["gamma"] = gamma;
  p["kT"] = temps;
  p["eta"] = etas;
  p["t"] = detail::to_json(ts);
  ctx.manifest().notes.push_back(
      "Gamma and a are the exact stretched-state values; the *_printed columns use the "
      "Gamma_0 + eta(...) + f(t) form, which differs when eta * p0 != 0");

  auto out = ctx.open_csv("attenuation.csv", {"kT(E_unit)", "eta(1)", "t(1/E_unit)", "Gamma(1)",
                                              "a(1)", "Gamma_printed(1)", "a_printed(1)"});
  for (double kT : temps) {
    for (double eta : etas) {
      const CatState cat = CatState::symmetric(kCatX0, kCatP0, kCatSigma, eta);
      detail::write_decoherence_rows(*out, cat, {gamma, kT}, kUnits, ts, {kT, eta}, true);
    }
  }
  out->close();
}

void fig4(RunContext& ctx) {
  const CatState cat = CatState::symmetric(kCatX0, kCatP0, kCatSigma);
  const std::vector<double> gammas{0.0001, 0.001, 0.003, 0.01};
  const UniformGrid xs{-15.0, 15.0, 301};
  const UniformGrid ts{0.0, 10.0, 101};
  Json& p = ctx.manifest().parameters;
  p["cat"] = {{"x0", kCatX0}, {"p0", kCatP0}, {"sigma0", kCatSigma}};
  p["kT"] = 1.0;
  p["gamma"] = gammas;
  p["closed_system"] = {{"gamma", 0.0}, {"kT", 0.0}};
  p["x"] = detail::to_json(xs);
  p["t"] = detail::to_json(ts);
  ctx.manifest().notes.push_back("axis ranges x in [-15, 15], t in [0, 10] are chosen to frame both branches");
  for (double g : gammas)
    detail::write_cat_density(ctx, cat, {g, 1.0}, kUnits, xs, ts, "cat_density_g" + tag(g) + "_T1.csv");
  detail::write_cat_density(ctx, cat, {0.0, 0.0}, kUnits, xs, ts, "cat_density_closed.csv");
}

void fig5(RunContext& ctx) {
  const CatState cat = CatState::symmetric(kCatX0, kCatP0, kCatSigma);
  const std::vector<double> gammas{0.001, 0.05};
  const UniformGrid ts{0.0, 10.0, 201};
  const std::size_t per_branch = 20;
  const double h = 1e-3;
  const double kappa = 2.0;
  Json& p = ctx.manifest().parameters;
  p["cat"] = {{"x0", kCatX0}, {"p0", kCatP0}, {"sigma0", kCatSigma}};
  p["kT"] = 1.0;
  p["gamma"] = gammas;
  p["t"] = detail::to_json(ts);
  p["seeds_per_branch"] = per_branch;
  p["step"] = h;
  p["cluster_kappa"] = kappa;
  ctx.manifest().notes.push_back(
      "bunching.csv: gap_contrast is the largest sorted-gap / neighbouring-gap ratio over the branch "
      "seeds; clusters counts gaps whose ratio exceeds cluster_kappa");

  auto bunch = ctx.open_csv("bunching.csv",
                            {"gamma(E_unit)", "t(1/E_unit)", "gap_contrast(1)", "clusters(1)"});
  for (double g : gammas) {
    Scenario s;
    s.kind = ScenarioKind::trajectories;
    s.environment = {g, 1.0};
    s.packets = {cat.a, cat.b};
    s.time = ts;
    s.validate();
    const TrajectoryBundle b = detail::compute_trajectories(ctx, s, per_branch, h);
    detail::write_trajectories(ctx, b, "trajectories_g" + tag(g) + "_T1.csv");
    for (std::size_t k = 0; k < b.times.size(); ++k) {
      std::vector<double> pos;
      for (std::size_t i = 0; i < b.seeds.size(); ++i)
        if (b.labels[i] != SeedLabel::center) pos.push_back(b.positions[i][k]);
      bunch->row({g, b.times[k], gap_contrast(pos), static_cast<double>(count_contrast_clusters(pos, kappa))});
    }
  }
  bunch->close();
}

// fig6 and fig7 share the one-particle states.
const OneParticleState kPsi = OneParticleState::cat(5.0, 0.0, 1.0);
const OneParticleState kPhi = OneParticleState::cat(5.0, 0.0, 0.5);

Json identical_parameters() {
  return {{"psi", {{"x0", 5.0}, {"p0", 0.0}, {"sigma0", 1.0}, {"branches", "+x0 and -x0"}}},
          {"phi", {{"x0", 5.0}, {"p0", 0.0}, {"sigma0", 0.5}, {"branches", "+x0 and -x0"}}}};
}

void fig6(RunContext& ctx) {
  const std::vector<Environment> envs{{0.0, 0.0}, {0.2, 10.0}, {0.4, 10.0}};
  const std::vector<double> times{0.1, 0.5, 2.0};
  const UniformGrid xs{-15.0, 15.0, 601};
  Json& p = ctx.manifest().parameters;
  p["states"] = identical_parameters();
  p["environments"] = env_list(envs);
  p["t"] = times;
  p["x"] = detail::to_json(xs);
  ctx.manifest().notes.push_back(
      "single_particle_summary.csv: rms is sqrt(<x^2>); oscillation is total variation in excess "
      "of a single-humped profile over the x grid");

  auto out = ctx.open_csv("single_particle.csv", {"gamma(E_unit)", "kT(E_unit)", "t(1/E_unit)", "x(L_unit)",
                                                  "P_boson(1/L_unit)", "P_fermion(1/L_unit)", "P_mb(1/L_unit)"});
  auto summary = ctx.open_csv("single_particle_summary.csv",
                              {"gamma(E_unit)", "kT(E_unit)", "t(1/E_unit)", "rms_boson(L_unit)",
                               "rms_fermion(L_unit)", "rms_mb(L_unit)", "oscillation_boson(1/L_unit)",
                               "oscillation_fermion(1/L_unit)"});
  for (const auto& e : envs) {
    const TwoParticleSystem B(kPsi, kPhi, Statistics::boson, e, kUnits);
    const TwoParticleSystem F(kPsi, kPhi, Statistics::fermion, e, kUnits);
    const TwoParticleSystem M(kPsi, kPhi, Statistics::maxwell_boltzmann, e, kUnits);
    for (double t : times) {
      std::vector<double> pb(xs.count), pf(xs.count), pm(xs.count);
      for (std::size_t i = 0; i < xs.count; ++i) {
        pb[i] = B.single_particle_density(xs.at(i), t);
        pf[i] = F.single_particle_density(xs.at(i), t);
        pm[i] = M.single_particle_density(xs.at(i), t);
        out->row({e.gamma, e.kT, t, xs.at(i), pb[i], pf[i], pm[i]});
      }
      summary->row({e.gamma, e.kT, t, B.position_rms(t), F.position_rms(t), M.position_rms(t),
                    oscillation_excess(pb), oscillation_excess(pf)});
    }
  }
  out->close();
  summary->close();
}

void fig7(RunContext& ctx) {
  const std::vector<Environment> envs{{0.0, 0.0}, {0.4, 15.0}, {0.4, 25.0}};
  const std::vector<double> times{0.5, 1.0, 1.5};
  const UniformGrid xs{-15.0, 15.0, 601};
  const double x1 = 0.0;
  Json& p = ctx.manifest().parameters;
  p["states"] = identical_parameters();
  p["environments"] = env_list(envs);
  p["t"] = times;
  p["x1"] = x1;
  p["x2"] = detail::to_json(xs);
  ctx.manifest().notes.push_back("joint_summary.csv: separation is sqrt(<(x1 - x2)^2>) under the full joint density");

  auto out = ctx.open_csv("joint.csv", {"gamma(E_unit)", "kT(E_unit)", "t(1/E_unit)", "x2(L_unit)",
                                        "P_boson(1/L_unit^2)", "P_fermion(1/L_unit^2)", "P_mb(1/L_unit^2)"});
  auto summary = ctx.open_csv("joint_summary.csv",
                              {"gamma(E_unit)", "kT(E_unit)", "t(1/E_unit)", "separation_boson(L_unit)",
                               "separation_fermion(L_unit)", "separation_mb(L_unit)"});
  for (const auto& e : envs) {
    const TwoParticleSystem B(kPsi, kPhi, Statistics::boson, e, kUnits);
    const TwoParticleSystem F(kPsi, kPhi, Statistics::fermion, e, kUnits);
    const TwoParticleSystem M(kPsi, kPhi, Statistics::maxwell_boltzmann, e, kUnits);
    for (double t : times) {
      for (std::size_t i = 0; i < xs.count; ++i) {
        const double x2 = xs.at(i);
        out->row({e.gamma, e.kT, t, x2, B.joint_density(x1, x2, t), F.joint_density(x1, x2, t),
                  M.joint_density(x1, x2, t)});
      }
      summary->row({e.gamma, e.kT, t, B.separation_rms(t), F.separation_rms(t), M.separation_rms(t)});
    }
  }
  out->close();
  summary->close();
}

void fig8(RunContext& ctx) {
  const double k = 1.0;
  const double map_gamma = 1e-4;
  const std::vector<double> map_temps{0.0, 1.0, 2.0, 4.0};
  const UniformGrid map_x{0.0, 20.0, 61};
  const UniformGrid map_t{10.0, 50.0, 61};
  const double cut_kT = 2.0;
  const std::vector<double> cut_gammas{5e-5, 1e-4, 1.5e-4};
  const double cut_x = 10.0;
  const UniformGrid cut_t{1.0, 100.0, 199};
  const double cut_time = 50.0;
  const UniformGrid cut_xs{0.0, 20.0, 201};
  const double r_min = -200.0;
  Json& p = ctx.manifest().parameters;
  p["k"] = k;
  p["r_min"] = r_min;
  p["tol"] = ctx.tol(1e-10);
  p["map"] = {{"gamma", map_gamma}, {"kT", map_temps}, {"x", detail::to_json(map_x)}, {"t", detail::to_json(map_t)}};
  p["cuts"] = {{"kT", cut_kT}, {"gamma", cut_gammas}, {"x", cut_x}, {"t", detail::to_json(cut_t)},
               {"t_fixed", cut_time}, {"x_grid", detail::to_json(cut_xs)}};
  ctx.manifest().notes.push_back("P is the beam density relative to the incident plane wave (asymptote 1)");
  for (double g : cut_gammas) {
    ShutterConfig sc;
    sc.env = {g, cut_kT};
    for (const auto& w : shutter_warnings(sc, cut_t.max)) ctx.manifest().warnings.push_back(w);
  }

  std::vector<double> map(map_temps.size() * map_t.count * map_x.count);
  const std::size_t rows = map_temps.size() * map_t.count;
  parallel_for(rows, ctx.jobs(), [&](std::size_t r) {
    const Environment env{map_gamma, map_temps[r / map_t.count]};
    const double t = map_t.at(r % map_t.count);
    for (std::size_t i = 0; i < map_x.count; ++i)
      map[r * map_x.count + i] = detail::shutter_point(ctx, map_x.at(i), t, k, env, kUnits, r_min);
  });
  auto out = ctx.open_csv("shutter_xt.csv", {"kT(E_unit)", "x(L_unit)", "t(1/E_unit)", "P(1)"});
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t i = 0; i < map_x.count; ++i)
      out->row({map_temps[r / map_t.count], map_x.at(i), map_t.at(r % map_t.count), map[r * map_x.count + i]});
  out->close();

  const std::size_t nt = cut_t.count;
  const std::size_t nx = cut_xs.count;
  std::vector<double> in_time(cut_gammas.size() * nt), in_space(cut_gammas.size() * nx);
  parallel_for(cut_gammas.size() * (nt + nx), ctx.jobs(), [&](std::size_t n) {
    const std::size_t gi = n / (nt + nx);
    const std::size_t j = n % (nt + nx);
    const Environment env{cut_gammas[gi], cut_kT};
    if (j < nt) in_time[gi * nt + j] = detail::shutter_point(ctx, cut_x, cut_t.at(j), k, env, kUnits, r_min);
    else in_space[gi * nx + (j - nt)] =
        detail::shutter_point(ctx, cut_xs.at(j - nt), cut_time, k, env, kUnits, r_min);
  });
  auto tcut = ctx.open_csv("shutter_t_x10.csv", {"gamma(E_unit)", "t(1/E_unit)", "P(1)",
                                                  "P_closed(1)", "P_classical(1)"});
  for (std::size_t gi = 0; gi < cut_gammas.size(); ++gi)
    for (std::size_t j = 0; j < nt; ++j) {
      const double t = cut_t.at(j);
      tcut->row({cut_gammas[gi], t, in_time[gi * nt + j], shutter_density_zeroT(cut_x, t, k, kUnits),
                 shutter_density_classical(cut_x, t, k, kUnits)});
    }
  tcut->close();
  auto xcut = ctx.open_csv("shutter_x_t50.csv", {"gamma(E_unit)", "x(L_unit)", "P(1)",
                                                  "P_closed(1)", "P_classical(1)"});
  for (std::size_t gi = 0; gi < cut_gammas.size(); ++gi)
    for (std::size_t j = 0; j < nx; ++j) {
      const double x = cut_xs.at(j);
      xcut->row({cut_gammas[gi], x, in_space[gi * nx + j], shutter_density_zeroT(x, cut_time, k, kUnits),
                 shutter_density_classical(x, cut_time, k, kUnits)});
    }
  xcut->close();
}

struct PresetEntry {
  PresetInfo info;
  void (*body)(RunContext&);
};

const std::vector<PresetEntry>& table() {
  static const std::vector<PresetEntry> entries{
      {{"fig1", "arrival-time distributions at X = 0",
        "sigma0=1, x0=-5, p0=0.5, X=0; gamma in {0.05, 0.1, 0.15, 0.2}; kT in {1, 5, 10}"},
       fig1},
      {{"fig2", "decoherence function Gamma(t) of the cat state",
        "sigma0=1, x0=5, p0=-2; kT=1 with gamma in {0.005, 0.01, 0.015, 0.05}; gamma=0.05 with kT in {2, 5, 8}"},
       fig2},
      {{"fig3", "attenuation a(t) for stretched packets",
        "sigma0=1, x0=5, p0=-2; gamma=0.005; kT in {1, 5}; eta in {0, 1, 2, 3}"},
       fig3},
      {{"fig4", "cat-state density maps, open and closed system",
        "sigma0=1, x0=5, p0=-2; kT=1 with gamma in {0.0001, 0.001, 0.003, 0.01}; closed system kT=0, gamma=0"},
       fig4},
      {{"fig5", "Bohmian trajectories of the cat state",
        "sigma0=1, x0=5, p0=-2; kT=1; gamma in {0.001, 0.05}"},
       fig5},
      {{"fig6", "single-particle density of two identical particles",
        "cats x0=+-5, p0=0, sigma0=1 and 0.5; closed system and kT=10 with gamma in {0.2, 0.4}; t in {0.1, 0.5, 2}"},
       fig6},
      {{"fig7", "joint detection density with one particle at the origin",
        "cats x0=+-5, p0=0, sigma0=1 and 0.5; closed system and gamma=0.4 with kT in {15, 25}; t in {0.5, 1, 1.5}"},
       fig7},
      {{"fig8", "diffraction in time behind a shutter",
        "k=1; map at gamma=1e-4, kT in {0, 1, 2, 4}; cuts at kT=2 for gamma in {5e-5, 1e-4, 1.5e-4}"},
       fig8},
  };
  return entries;
}

}  // namespace

const std::vector<PresetInfo>& list_presets() {
  static const std::vector<PresetInfo> infos = [] {
    std::vector<PresetInfo> out;
    for (const auto& e : table()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

bool is_preset(const std::string& name) {
  for (const auto& e : table())
    if (e.info.name == name) return true;
  return false;
}

void detail::run_preset_body(const std::string& name, RunContext& ctx) {
  for (const auto& e : table()) {
    if (e.info.name == name) {
      e.body(ctx);
      return;
    }
  }
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace cldecohere
