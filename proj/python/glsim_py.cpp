#include "glsim/clock.hpp"
#include "glsim/experiments.hpp"
#include "glsim/gap.hpp"
#include "glsim/kitaev.hpp"
#include "glsim/lowtemp.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace glsim;

namespace {

py::object cell_to_py(const Cell& c) {
    return std::visit([](const auto& v) -> py::object { return py::cast(v); }, c);
}

py::dict run(const std::string& experiment, const std::string& config_text, int jobs, const std::string& out_dir) {
    Config cfg = Config::parse(config_text, "<python>");
    RunResult r;
    {
        py::gil_scoped_release release;
        r = run_experiment(experiment, cfg, jobs);
        if (!out_dir.empty()) write_outputs(r, cfg, out_dir, "", "");
    }
    py::dict tables;
    for (const auto& t : r.tables) {
        py::list rows;
        for (const auto& row : t.rows) {
            py::list pr;
            for (const auto& c : row) pr.append(cell_to_py(c));
            rows.append(pr);
        }
        tables[py::str(t.name)] = py::dict(py::arg("columns") = t.columns, py::arg("rows") = rows,
                                           py::arg("csv") = t.to_csv());
    }
    py::list checks;
    for (const auto& c : r.checks)
        checks.append(py::dict(py::arg("id") = c.id, py::arg("detail") = c.detail, py::arg("measured") = c.measured,
                               py::arg("bound") = c.bound, py::arg("tolerance") = c.tolerance,
                               py::arg("relation") = c.relation, py::arg("pass") = c.pass));
    return py::dict(py::arg("experiment") = r.experiment, py::arg("tables") = tables, py::arg("checks") = checks,
                    py::arg("notes") = r.notes, py::arg("all_pass") = r.all_pass());
}

}  // namespace

PYBIND11_MODULE(_glsim, m) {
    m.doc() = "Bindings for the glsim core library";
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.attr("__version__") = kArtifactVersion;

    m.def("list_checks", [] {
        py::list out;
        for (const auto& c : list_checks()) out.append(py::make_tuple(c.id, c.anchor, c.summary));
        return out;
    });
    m.def("experiment_names", &experiment_names);
    m.def("run_experiment", &run, py::arg("experiment"), py::arg("config"), py::arg("jobs") = 1, py::arg("out") = "",
          "Run an experiment from INI text; returns tables and checks.");

    m.def("gaussian_c", &gaussian_c, py::arg("nu1"), py::arg("nu2"), py::arg("beta"));
    m.def("tfim_hamiltonian", [](int n, double g, double J) { return build_hamiltonian(tfim(n, g, J)); }, py::arg("n"),
          py::arg("g") = 1.0, py::arg("J") = 1.0);
    m.def("parse_model", [](const std::string& text) { return build_hamiltonian(parse_model(text)); },
          "Hamiltonian of a model given in the text format.");
    m.def("lindbladian",
          [](const Matrix& h, double beta, double weight) {
              int n = 0;
              if (!is_square_pow2(h, &n)) throw InvalidArgument("hamiltonian must be 2^n x 2^n");
              return assemble_lindbladian(h, pauli_jumps(n, weight), GaussianFilter{beta}).matrix;
          },
          py::arg("h"), py::arg("beta"), py::arg("weight") = kPauliTwirlWeight,
          "Row-major vectorized Gaussian-filter generator with single-site Pauli jumps.");
    m.def("tilde_gap",
          [](const Matrix& h, double beta, double weight) {
              int n = 0;
              if (!is_square_pow2(h, &n)) throw InvalidArgument("hamiltonian must be 2^n x 2^n");
              const GapResult g = spectral_gap(gaussian_tilde(h, pauli_jumps(n, weight), beta).matrix);
              return py::make_tuple(g.gap, g.kernel_dim);
          },
          py::arg("h"), py::arg("beta"), py::arg("weight") = kPauliTwirlWeight);
    m.def("gibbs_state", [](const Matrix& h, double beta) { return gibbs_state(diagonalize(h), beta); });
    m.def("clock_level_dims", &clock_level_dims, py::arg("T"));
    m.def("clock_level_dim_formula", &clock_level_dim_formula, py::arg("T"), py::arg("i"));
    m.def("cheeger_constant", [](int T) { return cheeger_constant(T).C; }, py::arg("T"));
    m.def("history_overlap_closed_form", &history_overlap_closed_form, py::arg("T"));
    m.def("zero_temp_distance_bound", &zero_temp_distance_bound, py::arg("m"), py::arg("M"), py::arg("beta"),
          py::arg("delta_E"), py::arg("delta_nu"));
}
