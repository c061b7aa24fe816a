#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cldecohere/arrival.hpp"
#include "cldecohere/cat_state.hpp"
#include "cldecohere/gaussian.hpp"
#include "cldecohere/identical.hpp"
#include "cldecohere/runner.hpp"
#include "cldecohere/selftest.hpp"
#include "cldecohere/shutter.hpp"

namespace py = pybind11;
using namespace cldecohere;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Caldeira-Leggett Gaussian dynamics, decoherence and arrival times";

  py::class_<ModelConstants>(m, "ModelConstants")
      .def(py::init([](double hbar, double mass, double g) { return ModelConstants{hbar, mass, g}; }),
           py::arg("hbar") = 1.0, py::arg("mass") = 1.0, py::arg("g") = 0.0)
      .def_readwrite("hbar", &ModelConstants::hbar)
      .def_readwrite("mass", &ModelConstants::mass)
      .def_readwrite("g", &ModelConstants::g);

  py::class_<Environment>(m, "Environment")
      .def(py::init([](double gamma, double kT) { return Environment{gamma, kT}; }), py::arg("gamma") = 0.0,
           py::arg("kT") = 0.0)
      .def_readwrite("gamma", &Environment::gamma)
      .def_readwrite("kT", &Environment::kT)
      .def("diffusion", &Environment::diffusion, py::arg("constants") = ModelConstants{});

  py::class_<GaussianPacket>(m, "GaussianPacket")
      .def(py::init([](double x0, double p0, double sigma0, double eta) {
             return GaussianPacket{x0, p0, sigma0, eta};
           }),
           py::arg("x0") = 0.0, py::arg("p0") = 0.0, py::arg("sigma0") = 1.0, py::arg("eta") = 0.0)
      .def_readwrite("x0", &GaussianPacket::x0)
      .def_readwrite("p0", &GaussianPacket::p0)
      .def_readwrite("sigma0", &GaussianPacket::sigma0)
      .def_readwrite("eta", &GaussianPacket::eta);

  py::class_<EvolvedGaussian>(m, "EvolvedGaussian")
      .def(py::init<const GaussianPacket&, const Environment&, const ModelConstants&>(), py::arg("packet"),
           py::arg("env") = Environment{}, py::arg("constants") = ModelConstants{})
      .def("center", &EvolvedGaussian::classical_center)
      .def("width", &EvolvedGaussian::width)
      .def("density", &EvolvedGaussian::probability_density)
      .def("current", &EvolvedGaussian::probability_current)
      .def("density_matrix", &EvolvedGaussian::density_matrix_xy);

  py::class_<CatState>(m, "CatState")
      .def_static("symmetric", &CatState::symmetric, py::arg("x0"), py::arg("p0"), py::arg("sigma0"),
                  py::arg("eta") = 0.0)
      .def_readwrite("a", &CatState::a)
      .def_readwrite("b", &CatState::b);

  m.def("erf", &erf_complex, py::arg("z"));
  m.def("fresnel", [](double x) {
    const FresnelPair p = fresnel(x);
    return py::make_tuple(p.c, p.s);
  });
  m.def("cat_density", &cat_density, py::arg("cat"), py::arg("x"), py::arg("t"), py::arg("env"),
        py::arg("constants") = ModelConstants{});
  m.def("gamma_min", &gamma_min, py::arg("t"), py::arg("cat"), py::arg("env"),
        py::arg("constants") = ModelConstants{});
  m.def("gamma_stretched", &gamma_stretched, py::arg("t"), py::arg("cat"), py::arg("env"),
        py::arg("constants") = ModelConstants{});
  m.def("decoherence_time", &decoherence_time, py::arg("env"), py::arg("separation"),
        py::arg("constants") = ModelConstants{});

  m.def(
      "arrival_moments",
      [](const GaussianPacket& p, const Environment& env, double detector, const std::vector<double>& times,
         double window) {
        ArrivalOptions o;
        o.window = window;
        const ArrivalDistribution d = arrival_distribution(EvolvedGaussian(p, env, {}), detector, times, o);
        return py::dict(py::arg("tau_a") = d.tau_a, py::arg("sigma_a") = d.sigma_a,
                        py::arg("pi") = d.pi_values, py::arg("normalization") = d.normalization_check);
      },
      py::arg("packet"), py::arg("env"), py::arg("detector"), py::arg("times"), py::arg("window") = 200.0);

  m.def(
      "single_particle_density",
      [](const std::string& statistics, const Environment& env, double x, double t) {
        const TwoParticleSystem s(OneParticleState::cat(5.0, 0.0, 1.0), OneParticleState::cat(5.0, 0.0, 0.5),
                                  parse_statistics(statistics), env, {});
        return s.single_particle_density(x, t);
      },
      py::arg("statistics"), py::arg("env"), py::arg("x"), py::arg("t"),
      "Single-particle density of the two-cat system used by the fig6 preset.");

  m.def(
      "shutter_density",
      [](double x, double t, double k, const Environment& env, double r_min) {
        ShutterConfig cfg;
        cfg.k = k;
        cfg.env = env;
        cfg.r_min = r_min;
        return shutter_density(x, t, cfg, {});
      },
      py::arg("x"), py::arg("t"), py::arg("k") = 1.0, py::arg("env") = Environment{}, py::arg("r_min") = -200.0);

  m.def("list_presets", [] {
    std::vector<std::string> out;
    for (const auto& p : list_presets()) out.push_back(p.name);
    return out;
  });
  m.def(
      "run_preset",
      [](const std::string& name, const std::filesystem::path& out, std::size_t jobs) {
        const RunOutcome r = run_preset(name, {out, jobs, {}});
        return py::make_tuple(r.exit_code, r.message);
      },
      py::arg("name"), py::arg("out"), py::arg("jobs") = 1);
  m.def(
      "run_config",
      [](const std::map<std::string, std::string>& cfg, const std::filesystem::path& out, std::size_t jobs) {
        const RunOutcome r = run_config(cfg, {out, jobs, {}});
        return py::make_tuple(r.exit_code, r.message);
      },
      py::arg("config"), py::arg("out"), py::arg("jobs") = 1);
  m.def("selftest", [] {
    std::vector<py::tuple> out;
    for (const auto& r : run_selftest()) out.push_back(py::make_tuple(r.name, r.passed, r.detail));
    return out;
  });
}
