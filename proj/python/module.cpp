#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "sg/coloring.hpp"
#include "sg/diagram.hpp"
#include "sg/diagram_json.hpp"
#include "sg/errors.hpp"
#include "sg/invariants.hpp"
#include "sg/laurent.hpp"
#include "sg/metacyclic.hpp"
#include "sg/wirtinger.hpp"

namespace py = pybind11;

namespace {

py::int_ big(const mpz_class& z) {
    return py::reinterpret_steal<py::int_>(
        PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

py::dict coloring_dict(const sg::Coloring& c) {
    py::dict out;
    for (const auto& [arc, value] : c.values) out[py::str(arc)] = value;
    return out;
}

}  // namespace

PYBIND11_MODULE(pysgraph, m) {
    m.doc() = "Alexander invariants and colorings of weighted spatial-graph diagrams";

    py::register_exception<sg::invalid_input>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<sg::precondition_error>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<sg::cap_exceeded>(m, "CapExceeded", PyExc_RuntimeError);

    py::class_<sg::Diagram>(m, "Diagram")
        .def_property_readonly("edge_count",
                               [](const sg::Diagram& d) { return d.edges.size(); })
        .def_property_readonly("crossing_count",
                               [](const sg::Diagram& d) { return d.crossings.size(); })
        .def_property_readonly("vertex_count",
                               [](const sg::Diagram& d) { return d.vertices.size(); })
        .def_property_readonly("arcs", &sg::Diagram::arc_order)
        .def("__eq__", [](const sg::Diagram& a, const sg::Diagram& b) { return a == b; })
        .def("__repr__", [](const sg::Diagram& d) {
            return "<Diagram c=" + std::to_string(d.crossings.size()) +
                   " v=" + std::to_string(d.vertices.size()) +
                   " e=" + std::to_string(d.edges.size()) + ">";
        });

    m.def("diagram_from_json", &sg::diagram_from_json, py::arg("text"));
    m.def("diagram_to_json", &sg::diagram_to_json, py::arg("diagram"));
    m.def("load_diagram", &sg::load_diagram, py::arg("path"));

    m.def("validate", [](const sg::Diagram& d) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& v : sg::validate(d)) out.emplace_back(v.rule, v.id);
        return out;
    });
    m.def("is_balanced", [](const sg::Diagram& d) {
        sg::require_valid(d);
        return sg::is_balanced(d);
    });
    m.def("balanced_weighting_basis", &sg::balanced_weighting_basis);

    m.def("mirror", &sg::mirror);
    m.def("reverse_all", &sg::reverse_all);
    m.def("contract_edge", &sg::contract_edge, py::arg("diagram"), py::arg("edge"));
    m.def("parallelize", &sg::parallelize, py::arg("diagram"), py::arg("n"), py::arg("r"));
    m.def("wedge", &sg::wedge, py::arg("d1"), py::arg("v1"), py::arg("d2"), py::arg("v2"));

    m.def(
        "alexander_matrix",
        [](const sg::Diagram& d) {
            sg::AlexMatrix a = sg::closed_form_matrix(d);
            std::vector<std::vector<std::string>> rows;
            for (const auto& row : a.entries) {
                std::vector<std::string> r;
                for (const auto& p : row) r.push_back(sg::to_string(p));
                rows.push_back(std::move(r));
            }
            py::dict out;
            out["row_labels"] = a.row_labels;
            out["col_arcs"] = a.col_arcs;
            out["rows"] = rows;
            return out;
        },
        py::arg("diagram"));

    m.def(
        "alexander_poly",
        [](const sg::Diagram& d, long long k) {
            return sg::to_string(sg::alexander_poly(d, k));
        },
        py::arg("diagram"), py::arg("k") = 1,
        "Canonical text of Delta_k, e.g. \"t^2 - 2*t + 2\"");

    m.def(
        "determinant_at",
        [](const sg::Diagram& d, long long n, long long k) {
            sg::DetValue v = sg::determinant_at(d, n, k);
            py::dict out;
            out["value"] = big(v.value);
            out["raw"] = big(v.raw);
            out["invariant"] = v.invariant;
            return out;
        },
        py::arg("diagram"), py::arg("n"), py::arg("k") = 1);

    m.def(
        "nullity",
        [](const sg::Diagram& d, long long n, long long p) { return sg::nullity(d, n, p); },
        py::arg("diagram"), py::arg("n"), py::arg("p"));

    m.def(
        "coloring_basis",
        [](const sg::Diagram& d, long long n, long long p) {
            std::vector<py::dict> out;
            for (const auto& c : sg::coloring_basis(d, n, p)) out.push_back(coloring_dict(c));
            return out;
        },
        py::arg("diagram"), py::arg("n"), py::arg("p"));

    m.def(
        "enumerate_colorings",
        [](const sg::Diagram& d, long long n, long long p) {
            std::vector<py::dict> out;
            for (const auto& c : sg::enumerate_colorings(d, n, p)) out.push_back(coloring_dict(c));
            return out;
        },
        py::arg("diagram"), py::arg("n"), py::arg("p"));

    m.def(
        "classify_and_count",
        [](const sg::Diagram& d, long long p, long long k) {
            sg::RepClassification rc = sg::classify_and_count(d, p, k);
            py::dict out;
            out["p"] = rc.p;
            out["m"] = rc.m;
            out["k"] = rc.k;
            out["nullity"] = rc.nullity;
            out["total"] = big(rc.total);
            out["cyclic"] = big(rc.cyclic);
            out["surjective"] = big(rc.surjective);
            out["inequivalent_surjective"] = big(rc.inequivalent_surjective);
            out["enumerated"] = rc.enumerated;
            return out;
        },
        py::arg("diagram"), py::arg("p"), py::arg("k"));
}
