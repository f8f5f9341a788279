#include "sgsim/analytics.hpp"
#include "sgsim/experiment.hpp"
#include "sgsim/fits.hpp"
#include "sgsim/models.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sgsim;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

} // namespace

PYBIND11_MODULE(_sgsim, m) {
  m.doc() = "sine-Gordon lattice laboratory: exact analytics, lattice maps, "
            "fits and the config-driven experiment runner";
  m.attr("__version__") = kCodeVersion;

  // --- exact field-theory analytics ---
  m.def("xi_sg", &analytics::xi_sg, py::arg("beta2"));
  m.def("beta2_from_xi", &analytics::beta2_from_xi, py::arg("xi"));
  m.def("soliton_mass", &analytics::soliton_mass, py::arg("beta2"), py::arg("m0"));
  m.def("mass_parameter_from_soliton", &analytics::mass_parameter_from_soliton,
        py::arg("beta2"), py::arg("m"));
  m.def("breather_mass", &analytics::breather_mass, py::arg("n"), py::arg("m"),
        py::arg("beta2"));
  m.def("vacuum_energy_density", &analytics::vacuum_energy_density, py::arg("m"),
        py::arg("beta2"));
  m.def("vertex_vev", &analytics::vertex_vev, py::arg("beta2"), py::arg("m1"));
  m.def(
      "two_point_ff",
      [](double r, double beta2, double m, double u) {
        models::SgParams sg;
        sg.beta2 = beta2;
        sg.xi_sg = analytics::xi_sg(beta2);
        sg.m = m;
        sg.u = u;
        return analytics::two_point_ff(r, sg);
      },
      py::arg("r"), py::arg("beta2"), py::arg("m"), py::arg("u") = 1.0,
      "form-factor two-point function of e^{i beta phi}");

  // --- XYZ corner-transfer-matrix entanglement spacing ---
  m.def(
      "ctm_level_spacing",
      [](double jx, double jy, double jz) {
        return analytics::ctm_level_spacing(
            analytics::principal_regime(models::XyzParams{jx, jy, jz}));
      },
      py::arg("jx"), py::arg("jy"), py::arg("jz"));
  m.def("ctm_spacing_asymptotic", &analytics::ctm_spacing_asymptotic, py::arg("l"),
        py::arg("beta2"));

  // --- lattice <-> continuum maps ---
  m.def(
      "sg_to_xyz",
      [](double beta2, double m, double a, bool allow_outside_scaling) {
        const auto p = models::sg_to_xyz(beta2, m, a, allow_outside_scaling);
        return py::make_tuple(p.jx, p.jy, p.jz);
      },
      py::arg("beta2"), py::arg("m"), py::arg("a") = 1.0,
      py::arg("allow_outside_scaling") = false);
  m.def(
      "xyz_to_sg",
      [](double jx, double jy, double jz, double a) {
        const auto r = models::xyz_to_sg(models::XyzParams{jx, jy, jz}, a);
        py::dict d;
        d["beta2"] = r.sg.beta2;
        d["xi_sg"] = r.sg.xi_sg;
        d["m"] = r.sg.m;
        d["m0"] = r.sg.m0;
        d["l"] = r.l;
        d["xi_xyz"] = r.xi_xyz;
        d["regime_warning"] = r.regime_warning;
        return d;
      },
      py::arg("jx"), py::arg("jy"), py::arg("jz"), py::arg("a") = 1.0);
  m.def("soliton_mass_from_sigma", &models::soliton_mass_from_sigma,
        py::arg("sigma_vev"), py::arg("beta2"), py::arg("a") = 1.0);
  m.def(
      "perturbative_luttinger",
      [](double e_j, double e_c0) {
        models::QecParams p;
        p.e_j = e_j;
        p.e_c0 = e_c0;
        const auto r = models::perturbative_luttinger(p);
        return py::make_tuple(r.u, r.k);
      },
      py::arg("e_j"), py::arg("e_c0") = 1.0);

  // --- fits ---
  m.def(
      "fit_linear",
      [](const std::vector<double>& xs, const std::vector<double>& ys) {
        const auto f = fits::fit_linear(xs, ys);
        py::dict d;
        d["slope"] = f.slope;
        d["intercept"] = f.intercept;
        d["residual_rms"] = f.residual_rms;
        return d;
      },
      py::arg("xs"), py::arg("ys"));
  m.def(
      "fit_cardy",
      [](const std::vector<std::pair<std::size_t, double>>& energies, double c) {
        const auto f = fits::fit_cardy(energies, c);
        py::dict d;
        d["e0"] = f.e0;
        d["u"] = f.u;
        d["b"] = f.b;
        d["residual_rms"] = f.residual_rms;
        return d;
      },
      py::arg("energies"), py::arg("c"));
  m.def("fit_central_charge", &fits::fit_central_charge, py::arg("xi_entropy"));

  // --- experiment runner (same engine as the `sg` CLI) ---
  m.def(
      "run_experiment",
      [](const std::string& config_text, const std::string& out_dir) {
        const auto res =
            run_experiment(Config::parse_string(config_text), out_dir);
        return json_to_py(res.summary);
      },
      py::arg("config_text"), py::arg("out_dir"),
      "run a predict/dmrg/scan/fit/compare experiment from INI-style config "
      "text; returns the summary as a dict and writes summary.json");

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<specfun::DomainError>(m, "DomainError");
  py::register_exception<fits::FitError>(m, "FitError");
}
