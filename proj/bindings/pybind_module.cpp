#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "csl/clump.hpp"
#include "csl/discrete.hpp"
#include "csl/driver.hpp"
#include "csl/hermite.hpp"
#include "csl/interference.hpp"
#include "csl/packet.hpp"
#include "csl/special.hpp"

namespace py = pybind11;

PYBIND11_MODULE(cslpy, m) {
  m.doc() = "continuous collapse dynamics: trajectories, density matrices, "
            "packets and interference";

  py::class_<csl::ClumpParams>(m, "ClumpParams")
      .def(py::init([](double N, double M, double lambda, double a) {
             return csl::ClumpParams{N, M, lambda, a};
           }),
           py::arg("N") = 1.0, py::arg("M") = 1.0, py::arg("lambda_") = 1.0,
           py::arg("a") = 1.0)
      .def_readwrite("N", &csl::ClumpParams::N)
      .def_readwrite("M", &csl::ClumpParams::M)
      .def_readwrite("lambda_", &csl::ClumpParams::lambda)
      .def_readwrite("a", &csl::ClumpParams::a)
      .def("m", &csl::ClumpParams::m)
      .def("lambda_tilde", &csl::ClumpParams::lambda_tilde)
      .def("alpha", &csl::ClumpParams::alpha)
      .def_static("dimensionless", &csl::ClumpParams::dimensionless,
                  py::arg("N") = 1.0)
      .def_static("grw", &csl::ClumpParams::grw, py::arg("N") = 1.0)
      .def_static("adler", &csl::ClumpParams::adler, py::arg("N") = 1.0);

  py::class_<csl::DiscreteSuperposition>(m, "DiscreteSuperposition")
      .def(py::init([](Eigen::VectorXd eig, Eigen::VectorXcd amp, double lambda) {
             csl::DiscreteSuperposition s;
             s.eigenvalues = std::move(eig);
             s.amplitudes = std::move(amp);
             s.lambda = lambda;
             s.validate();
             return s;
           }),
           py::arg("eigenvalues"), py::arg("amplitudes"), py::arg("lambda_") = 1.0);

  m.def("erf", &csl::erf, py::arg("x"));
  m.def("final_B_density", &csl::final_B_density, py::arg("superposition"),
        py::arg("t"), py::arg("B"));
  m.def("born_statistics", &csl::born_statistics, py::arg("superposition"),
        py::arg("T"), py::arg("dt"), py::arg("n_traj"), py::arg("seed"),
        py::arg("n_threads") = 1);
  m.def("analytic_rho", &csl::analytic_rho, py::arg("superposition"), py::arg("t"));

  m.def("cm_offdiag_rate", &csl::cm_offdiag_rate, py::arg("D"), py::arg("params"));
  m.def(
      "riccati_A",
      [](double t, std::complex<double> A0, const csl::ClumpParams& p) {
        return csl::riccati_A(t, A0, p);
      },
      py::arg("t"), py::arg("A0"), py::arg("params"));
  m.def("ensemble_msd", &csl::ensemble_msd, py::arg("params"), py::arg("t"));
  m.def("msd_monte_carlo", &csl::msd_monte_carlo, py::arg("params"), py::arg("t"),
        py::arg("n_traj"), py::arg("seed"), py::arg("n_threads") = 1);

  m.def("mach_zehnder_prob", &csl::mach_zehnder_prob, py::arg("t"),
        py::arg("params"));
  m.def(
      "two_slit_intensity",
      [](double theta, double t, double b, double k, double L, double A_amp,
         const csl::ClumpParams& p) {
        csl::SlitConfig s{b, k, L, p, A_amp};
        return csl::two_slit_intensity(theta, t, s);
      },
      py::arg("theta"), py::arg("t"), py::arg("b"), py::arg("k"), py::arg("L"),
      py::arg("A_amp"), py::arg("params"));
  m.def(
      "fringe_visibility",
      [](double t, double b, double k, double L, double A_amp,
         const csl::ClumpParams& p) {
        csl::SlitConfig s{b, k, L, p, A_amp};
        return csl::fringe_visibility(t, s);
      },
      py::arg("t"), py::arg("b"), py::arg("k"), py::arg("L"), py::arg("A_amp"),
      py::arg("params"));

  m.def("hermite_u", &csl::hermite_u, py::arg("n"), py::arg("x"), py::arg("a"));
  m.def("Z_n", &csl::Z_n, py::arg("n"), py::arg("X"), py::arg("a"));
  m.def("kernel_reconstruction", &csl::kernel_reconstruction, py::arg("X"),
        py::arg("X_prime"), py::arg("n_max"), py::arg("a"));

  m.def(
      "run_config",
      [](const std::string& text, int n_threads, bool check) {
        const auto cfg = csl::parse_config(text);
        const auto r = csl::run_experiment(cfg, n_threads, check);
        return py::make_tuple(r.report.dump(), r.csv_path, r.json_path,
                              r.checks_passed);
      },
      py::arg("config_json"), py::arg("n_threads") = 1, py::arg("check") = false,
      "Parse a JSON experiment config, run it, and return "
      "(report_json, csv_path, json_path, checks_passed)");

  m.attr("__version__") = csl::kLibraryVersion;
}
