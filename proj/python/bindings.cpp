#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spacetime/error.hpp"
#include "spacetime/report.hpp"

namespace py = pybind11;
using namespace spacetime;

namespace {

std::string render(const ManifoldSpec& spec, const std::string& command, const std::string& check,
                   const std::string& format, const std::optional<std::string>& numeric) {
    auto cmd = parse_command(command);
    if (!cmd) throw InputError("unknown command '" + command + "'");
    if (*cmd == Command::Check && check.empty()) throw InputError("check needs a check name");
    std::optional<Point> pt;
    if (numeric) pt = parse_point(*numeric, spec.coords);
    AuditReport r;
    {
        py::gil_scoped_release nogil;
        r = run(spec, *cmd, check);
    }
    if (format == "json") return render_json(r, pt);
    if (format == "text") return render_text(r, pt);
    throw InputError("unknown format '" + format + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Symbolic curvature audit of pseudo-Riemannian metrics";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<MetricError>(m, "MetricError", base.ptr());

    m.def(
        "canonical",
        [](const std::string& text) { return parse_expr(text).str(); },
        py::arg("text"), "Canonical printed form of an expression.");

    py::class_<ManifoldSpec>(m, "ManifoldSpec")
        .def_readonly("name", &ManifoldSpec::name)
        .def_readonly("coords", &ManifoldSpec::coords)
        .def_readonly("checks", &ManifoldSpec::checks)
        .def_property_readonly("dim", &ManifoldSpec::dim)
        .def_property_readonly("has_structure", [](const ManifoldSpec& s) { return s.structure.has_value(); })
        .def_property_readonly("has_fluid", [](const ManifoldSpec& s) { return s.fluid.has_value(); })
        .def("metric", [](const ManifoldSpec& s, int i, int j) {
            if (i < 1 || j < 1 || i > s.dim() || j > s.dim()) throw py::index_error("metric index out of range");
            return s.g()(i - 1, j - 1).str();
        })
        .def("__repr__", [](const ManifoldSpec& s) {
            return "<ManifoldSpec " + s.name + " dim=" + std::to_string(s.dim()) + ">";
        });

    m.def("parse_spec", [](const std::string& text, const std::string& name) { return parse_spec(text, name); },
          py::arg("text"), py::arg("name") = "input");
    m.def("load_spec", &load_spec, py::arg("path"));
    m.def("known_checks", &known_checks);
    m.def("render", &render, py::arg("spec"), py::arg("command"), py::arg("check") = "",
          py::arg("format") = "json", py::arg("numeric") = std::nullopt);
}
