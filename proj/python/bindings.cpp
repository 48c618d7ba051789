#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "otsfd/errors.hpp"
#include "otsfd/experiments.hpp"
#include "otsfd/harness.hpp"
#include "otsfd/ots.hpp"

namespace py = pybind11;
using namespace otsfd;

namespace {

py::dict describe(const Experiment& e) {
    const auto sd = e.descriptor(fixture(e.fixture));
    py::dict d;
    d["name"] = e.name;
    d["description"] = e.description;
    d["fixture"] = e.fixture;
    d["final_time"] = e.final_time;
    d["n_min"] = e.n_min;
    d["refinements"] = e.refinements;
    d["has_correction"] = e.has_correction;
    d["scheme"] = sd.name;
    d["dt_opt_formula"] = sd.dt_opt_formula;
    d["ots_capable"] = sd.ots_capable;
    d["predicted_order_ots"] = sd.ots_capable ? py::cast(predicted_order(sd, true)) : py::none();
    d["predicted_order_plain"] =
        predicted_order(sd, sd.ots_capable ? e.subopt_policy : e.default_policy, false);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Optimal time step and defect correction finite-difference studies";

    auto base = py::register_exception<Error>(m, "OtsfdError", PyExc_RuntimeError);
    py::register_exception<StabilityError>(m, "StabilityError", base.ptr());
    py::register_exception<MissingDerivativeError>(m, "MissingDerivativeError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<StudyRow>(m, "StudyRow")
        .def_readonly("n", &StudyRow::n)
        .def_readonly("dx", &StudyRow::dx)
        .def_readonly("dt", &StudyRow::dt)
        .def_readonly("dt_ratio", &StudyRow::dt_ratio)
        .def_readonly("error", &StudyRow::error)
        .def_readonly("runtime_seconds", &StudyRow::runtime_seconds)
        .def_readonly("steps", &StudyRow::steps)
        .def_readonly("failure", &StudyRow::failure)
        .def_property_readonly("ok", &StudyRow::ok)
        .def("__repr__", [](const StudyRow& r) {
            return "StudyRow(n=" + std::to_string(r.n) + ", error=" + format_double(r.error) + ")";
        });

    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("experiment", &ConvergenceReport::experiment)
        .def_readonly("scheme", &ConvergenceReport::scheme)
        .def_readonly("variant", &ConvergenceReport::variant)
        .def_readonly("rows", &ConvergenceReport::rows)
        .def_readonly("order", &ConvergenceReport::order)
        .def_readonly("fit_residual", &ConvergenceReport::fit_residual)
        .def_readonly("pairwise", &ConvergenceReport::pairwise)
        .def_property_readonly("all_ok", &ConvergenceReport::all_ok)
        .def_property_readonly("max_error", &ConvergenceReport::max_error)
        .def(
            "to_csv",
            [](const ConvergenceReport& r, bool include_runtime) {
                std::ostringstream os;
                write_csv(os, r, include_runtime);
                return os.str();
            },
            py::arg("include_runtime") = true);

    m.attr("CSV_HEADER") = kCsvHeader;

    m.def("experiments", [] {
        py::list out;
        for (const auto& e : experiments()) out.append(describe(e));
        return out;
    });
    m.def("experiment", [](const std::string& name) { return describe(experiment(name)); }, py::arg("name"));
    m.def("fixtures", &fixture_names);

    m.def(
        "run_study",
        [](const std::string& name, std::vector<int> resolutions, const std::string& policy,
           std::optional<bool> correction, std::optional<double> final_time, std::optional<std::string> fixture_name,
           int repetitions) {
            StudyConfig c;
            c.experiment = name;
            c.resolutions = std::move(resolutions);
            c.policy = policy;
            c.correction = correction;
            c.final_time = final_time;
            c.fixture = std::move(fixture_name);
            c.repetitions = repetitions;
            py::gil_scoped_release release;
            return run_study(c);
        },
        py::arg("experiment"), py::arg("resolutions"), py::arg("policy") = "ots", py::arg("correction") = py::none(),
        py::arg("final_time") = py::none(), py::arg("fixture") = py::none(), py::arg("repetitions") = 1);

    m.def("dyadic_resolutions", &dyadic_resolutions, py::arg("n_min"), py::arg("count"));

    m.def(
        "fit_loglog",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            const auto f = fit_loglog(x, y);
            return py::make_tuple(f.slope, f.intercept, f.residual);
        },
        py::arg("x"), py::arg("y"), "Least-squares (slope, intercept, rms residual) in log-log coordinates.");

    m.def(
        "optimal_dt",
        [](double alpha, double beta, int r, int s, double dx) {
            LeadingError le;
            le.alpha = alpha;
            le.beta = beta;
            le.r = r;
            le.s = s;
            return optimal_dt(le, dx);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("r"), py::arg("s"), py::arg("dx"),
        "Root of alpha dx^r = beta dt^s.");
}
