#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kwcalc/cli.hpp"
#include "kwcalc/io.hpp"
#include "kwcalc/parse.hpp"
#include "kwcalc/verify.hpp"

namespace py = pybind11;
using namespace kw;

namespace {

std::shared_ptr<BundleSpec> unconst(const SpecPtr& p) {
    return std::const_pointer_cast<BundleSpec>(p);
}

std::vector<GradedElement> as_elements(const py::iterable& it) {
    std::vector<GradedElement> out;
    for (const auto& h : it) out.push_back(h.cast<GradedElement>());
    return out;
}

py::dict symbol_dict(const SymbolValue& sym) {
    py::dict out;
    for (std::size_t i = 0; i < sym.images.size(); ++i)
        out[py::str("x" + std::to_string(i + 1))] = sym.images[i];
    return out;
}

py::dict report_dict(const VerificationReport& report) {
    py::dict out;
    out["passed"] = report.passed();
    out["machine"] = report.render_machine();
    out["text"] = report.render_text();
    py::list checks;
    for (const auto& c : report.checks) {
        py::dict entry;
        entry["name"] = c.name;
        entry["law"] = c.law;
        entry["passed"] = c.passed;
        if (c.witness) entry["witness"] = *c.witness;
        if (c.residual) entry["residual"] = c.residual->str();
        if (c.bound) entry["bound"] = *c.bound;
        checks.append(entry);
    }
    out["checks"] = checks;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact calculus for graded brackets over a metric vector bundle";

    py::register_exception<Error>(m, "KwError");

    py::class_<BundleSpec, std::shared_ptr<BundleSpec>>(m, "BundleSpec")
        .def(py::init([](int d, int r, const std::vector<std::vector<std::string>>& metric) {
                 RationalMatrix g;
                 for (const auto& row : metric) {
                     std::vector<Rational> out;
                     for (const auto& cell : row) out.push_back(Rational::parse(cell));
                     g.push_back(std::move(out));
                 }
                 return std::make_shared<BundleSpec>(d, r, std::move(g));
             }),
             py::arg("d"), py::arg("r"), py::arg("metric"))
        .def_static("identity",
                    [](int d, int r) { return unconst(BundleSpec::identity(d, r)); },
                    py::arg("d"), py::arg("r"))
        .def_static("split", [](int d) { return unconst(BundleSpec::split(d)); }, py::arg("d"))
        .def_static("parse", [](const std::string& text) { return unconst(parse_bundle(text)); })
        .def_property_readonly("d", &BundleSpec::base_dim)
        .def_property_readonly("r", &BundleSpec::rank)
        .def("pairing",
             [](const BundleSpec& s, int a, int b) { return s.pairing(a - 1, b - 1).str(); })
        .def("__str__", &BundleSpec::str)
        .def("__repr__", [](const BundleSpec& s) {
            return "BundleSpec(d=" + std::to_string(s.base_dim()) +
                   ", r=" + std::to_string(s.rank()) + ")";
        });

    py::class_<GradedElement>(m, "GradedElement")
        .def_property_readonly("is_zero", &GradedElement::is_zero)
        .def_property_readonly("is_homogeneous", &GradedElement::is_homogeneous)
        .def_property_readonly("is_function", &GradedElement::is_function)
        .def_property_readonly("is_section", &GradedElement::is_section)
        .def_property_readonly("is_multivector", &GradedElement::is_multivector)
        .def_property_readonly("degree", &GradedElement::degree)
        .def_property_readonly("max_x_degree", &GradedElement::max_x_degree)
        .def("degree_decompose", &GradedElement::degree_decompose)
        .def("component", &GradedElement::component)
        .def("__add__", &GradedElement::operator+)
        .def("__sub__",
             static_cast<GradedElement (GradedElement::*)(const GradedElement&) const>(
                 &GradedElement::operator-))
        .def("__mul__",
             static_cast<GradedElement (GradedElement::*)(const GradedElement&) const>(
                 &GradedElement::operator*))
        .def("__neg__",
             static_cast<GradedElement (GradedElement::*)() const>(&GradedElement::operator-))
        .def("__eq__", &GradedElement::operator==)
        .def("scaled",
             [](const GradedElement& e, const std::string& c) { return e * Rational::parse(c); })
        .def("__str__", &GradedElement::str)
        .def("__repr__", &GradedElement::str);

    m.def("parse", &parse_element, py::arg("spec"), py::arg("text"),
          "Parse an expression over a bundle.");
    m.def("pbracket", &pbracket, "Canonical Poisson bracket.");
    m.def("pairing", &pairing, "Extended pairing of multivectors.");
    m.def("section_pairing", &section_pairing, "Metric pairing of sections.");

    py::class_<MultiBracket>(m, "MultiBracket")
        .def(py::init<GradedElement>(), py::arg("theta"))
        .def(py::init<GradedElement, int>(), py::arg("theta"), py::arg("degree"))
        .def_property_readonly("n", &MultiBracket::n)
        .def_property_readonly("arity", &MultiBracket::bracket_arity)
        .def_property_readonly("theta", &MultiBracket::theta)
        .def("__repr__", [](const MultiBracket& c) {
            return "MultiBracket(n=" + std::to_string(c.n()) + ", theta=" + c.theta().str() + ")";
        });

    m.def("kw_eval",
          [](const MultiBracket& c, const py::iterable& args) {
              return kw_eval(c, as_elements(args));
          });
    m.def("kw_eval_tilde",
          [](const MultiBracket& c, const py::iterable& args) {
              return kw_eval_tilde(c, as_elements(args));
          });
    m.def("kw_symbol",
          [](const MultiBracket& c, const py::iterable& args) {
              return symbol_dict(kw_symbol(c, as_elements(args)));
          });
    m.def("extend_to_functions",
          [](const MultiBracket& c, const py::iterable& args) {
              return extend_to_functions(c, as_elements(args));
          });
    m.def("kw_wedge", &kw_wedge);
    m.def("kw_wedge_eval",
          [](const MultiBracket& a, const MultiBracket& b, const py::iterable& args) {
              return kw_wedge_eval(a, b, as_elements(args));
          });
    m.def("kw_bracket", &kw_bracket);
    m.def("kw_bracket_eval",
          [](const MultiBracket& a, const MultiBracket& b, const py::iterable& args) {
              return kw_bracket_eval(a, b, as_elements(args));
          });
    m.def("interior_product", &interior_product);
    m.def("interior_eval",
          [](const MultiBracket& a, const MultiBracket& b, const py::iterable& args) {
              return interior_eval(a, b, as_elements(args));
          });
    m.def("interior_eval_unshuffle",
          [](const MultiBracket& a, const MultiBracket& b, const py::iterable& args) {
              return interior_eval_unshuffle(a, b, as_elements(args));
          });
    m.def("kw_bracket_expansion", &kw_bracket_expansion, py::arg("n"), py::arg("m"));

    py::class_<HigherBracket>(m, "HigherBracket")
        .def(py::init<MultiBracket>(), py::arg("base"))
        .def_property_readonly("n", &HigherBracket::n)
        .def_property_readonly("base", &HigherBracket::base);

    m.def("bar_eval",
          [](const HigherBracket& b, const py::iterable& args) {
              return bar_eval(b, as_elements(args));
          });
    m.def("bar_symbol",
          [](const HigherBracket& b, const py::iterable& args) {
              return symbol_dict(bar_symbol(b, as_elements(args)));
          });
    m.def("higher_wedge", &higher_wedge);
    m.def("higher_bracket", &higher_bracket);

    m.def("check_pre_courant",
          [](const MultiBracket& c, int D) { return report_dict(check_pre_courant(c, D)); },
          py::arg("c"), py::arg("D") = 1);
    m.def("check_closure",
          [](const MultiBracket& c, int D) { return report_dict(check_closure(c, D)); },
          py::arg("c"), py::arg("D") = 1);
    m.def("check_filippov",
          [](const MultiBracket& c, int D) { return report_dict(check_filippov(c, D)); },
          py::arg("c"), py::arg("D") = 1);

    py::class_<ExampleStructure>(m, "ExampleStructure")
        .def_readonly("name", &ExampleStructure::name)
        .def_property_readonly("spec",
                               [](const ExampleStructure& ex) { return unconst(ex.spec); })
        .def_readonly("theta", &ExampleStructure::theta)
        .def_readonly("expected_closed", &ExampleStructure::expected_closed)
        .def_readonly("note", &ExampleStructure::note);

    m.def("builtin_examples", [] { return builtin_examples(); });

    m.def("run_cli",
          [](const std::vector<std::string>& argv) {
              std::vector<const char*> cargv;
              cargv.push_back("kwcalc");
              for (const auto& a : argv) cargv.push_back(a.c_str());
              std::istringstream in;
              std::ostringstream out, err;
              int code = main_cli(static_cast<int>(cargv.size()), cargv.data(), in, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          "Run a CLI invocation in-process; returns (exit_code, stdout, stderr).");
}
