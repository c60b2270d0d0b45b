#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "arboreal/classify.hpp"
#include "arboreal/conj_aut.hpp"
#include "arboreal/conj_restricted.hpp"
#include "arboreal/oracle.hpp"
#include "arboreal/order.hpp"
#include "arboreal/system.hpp"
#include "cli.hpp"

namespace py = pybind11;
using namespace arboreal;

namespace {
  std::string order_kind(OrderResult::Kind k) {
    switch (k) {
      case OrderResult::Kind::Finite: return "finite";
      case OrderResult::Kind::Infinite: return "infinite";
      default: return "unknown";
    }
  }

  std::string restricted_kind(RestrictedDecision::Kind k) {
    switch (k) {
      case RestrictedDecision::Kind::Conjugate: return "conjugate";
      case RestrictedDecision::Kind::NotConjugate: return "not conjugate";
      default: return "unknown";
    }
  }
}  // namespace

PYBIND11_MODULE(_arboreal, m) {
  m.doc() = "Tree automorphisms, orders and conjugacy";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded");
  py::register_exception<NotBounded>(m, "NotBounded", PyExc_ValueError);

  py::class_<Element>(m, "Element")
      .def_property_readonly("degree", &Element::degree)
      .def("perm", [](Element const& g) { return root_perm(g).images(); })
      .def("section", [](Element const& g, Letter x) { return section(g, x); })
      .def("act", [](Element const& g, std::vector<Letter> const& v) { return act(g, v); })
      .def("inverse", [](Element const& g) { return inverse(g); })
      .def("__mul__", [](Element const& g, Element const& h) { return g * h; })
      .def("__pow__", [](Element const& g, std::int64_t n) { return power(g, n); })
      .def("__eq__", [](Element const& g, Element const& h) { return same(g, h); })
      .def("__repr__", [](Element const& g) {
        return "<Element " + word_string(*g.store(), g.word()) + ">";
      });

  py::class_<FRSystem>(m, "System")
      .def_static("parse", [](std::string const& text) { return parse_system(text); })
      .def_property_readonly("degree", &FRSystem::degree)
      .def("names", &FRSystem::names)
      .def("__getitem__", [](FRSystem const& s, std::string const& n) { return s.element(n); })
      .def("word", [](FRSystem const& s, std::string const& w) { return s.parse_word(w); })
      .def("__str__", &print_system);

  m.def("order", [](Element const& g) {
    auto r = order(g);
    return py::make_tuple(order_kind(r.kind), r.value);
  });
  m.def("classify", [](Element const& g) { return polynomial_degree(g).str(); });
  m.def("orbit_signalizer", [](Element const& g, std::size_t cap) {
    auto os = orbit_signalizer(g, cap);
    if (!os.complete()) {
      throw CapExceeded("orbit-signalizer exceeds the cap");
    }
    return os.elements;
  }, py::arg("g"), py::arg("cap") = kDefaultOSCap);
  m.def("conjugate_in_aut", [](Element const& a, Element const& b) -> py::object {
    auto d = conjugate_in_aut(a, b);
    if (d.kind != ConjDecision::Kind::Conjugate) {
      return py::none();
    }
    return py::cast(basic_conjugator(d.graph).element());
  });
  m.def("conjugate_in_pol0", [](Element const& a, Element const& b) {
    auto d = conjugate_in_pol0_cyclic(a, b);
    return py::make_tuple(restricted_kind(d.kind), d.conjugator);
  });
  m.def("verify_conjugator", &verify_conjugator, py::arg("h"), py::arg("a"), py::arg("b"),
        py::arg("depth") = 10);
  m.def("orbit_tree_code", [](Element const& g, std::size_t n) { return orbit_tree_code(g, n); });
  m.def("random_bounded", &random_bounded, py::arg("seed"), py::arg("states") = 4,
        py::arg("degree") = 2);
  m.def("run", [](std::vector<std::string> args) {
    args.insert(args.begin(), "arboreal");
    std::ostringstream out, err;
    int                code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Run the command-line tool in process; returns (exit code, stdout, stderr).");
}
