#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padyn/dynamics.hpp"
#include "padyn/error.hpp"
#include "padyn/locus.hpp"
#include "padyn/map_format.hpp"
#include "padyn/padic.hpp"

namespace py = pybind11;
using namespace padyn;

namespace {

// Python ints, literal strings and elements all become elements of k.
PadicElement to_element(FieldSpec k, const py::handle& h) {
  if (py::isinstance<PadicElement>(h)) return h.cast<PadicElement>();
  if (py::isinstance<py::int_>(h)) return PadicElement::from_int(k, h.cast<std::int64_t>());
  return PadicElement::parse(k, h.cast<std::string>());
}

Vector to_point(FieldSpec k, const py::sequence& s) {
  Vector v;
  for (const auto& h : s) v.push_back(to_element(k, h));
  return v;
}

std::vector<std::string> point_strings(const Vector& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "p-adic dynamics of polynomial automorphisms";

  // Leaked on purpose: must outlive interpreter teardown.
  static auto* exc = new py::exception<Error>(m, "PadynError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(*exc)(e.what());
      err.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(exc->ptr(), err.ptr());
    }
  });

  py::class_<FieldSpec>(m, "FieldSpec")
      .def(py::init([](std::uint64_t p, unsigned precision, unsigned degree, std::vector<std::uint64_t> modulus) {
             return FieldSpec::create(p, precision, degree, std::move(modulus));
           }),
           py::arg("p"), py::arg("precision"), py::arg("degree") = 1, py::arg("modulus") = std::vector<std::uint64_t>{})
      .def_property_readonly("prime", &FieldSpec::prime)
      .def_property_readonly("degree", &FieldSpec::degree)
      .def_property_readonly("precision", &FieldSpec::precision)
      .def("__eq__", [](FieldSpec a, FieldSpec b) { return a == b; })
      .def("__repr__", &FieldSpec::to_string);

  py::class_<PadicElement>(m, "PadicElement")
      .def(py::init([](FieldSpec k, const py::object& v) { return to_element(k, v); }))
      .def_property_readonly("spec", &PadicElement::spec)
      .def("valuation", &PadicElement::valuation)
      .def("is_zero", &PadicElement::is_zero)
      .def("absolute_precision", &PadicElement::absolute_precision)
      .def("residue", [](const PadicElement& x, unsigned level) { return x.reduce(level)[0]; }, py::arg("level") = 1)
      .def("__add__", [](const PadicElement& a, const py::object& b) { return a + to_element(a.spec(), b); })
      .def("__radd__", [](const PadicElement& a, const py::object& b) { return to_element(a.spec(), b) + a; })
      .def("__sub__", [](const PadicElement& a, const py::object& b) { return a - to_element(a.spec(), b); })
      .def("__rsub__", [](const PadicElement& a, const py::object& b) { return to_element(a.spec(), b) - a; })
      .def("__mul__", [](const PadicElement& a, const py::object& b) { return a * to_element(a.spec(), b); })
      .def("__rmul__", [](const PadicElement& a, const py::object& b) { return to_element(a.spec(), b) * a; })
      .def("__truediv__", [](const PadicElement& a, const py::object& b) { return a / to_element(a.spec(), b); })
      .def("__rtruediv__", [](const PadicElement& a, const py::object& b) { return to_element(a.spec(), b) / a; })
      .def("__neg__", [](const PadicElement& a) { return -a; })
      .def("__pow__", [](const PadicElement& a, std::int64_t e) { return a.pow(e); })
      .def("__eq__", [](const PadicElement& a, const py::object& b) { return a == to_element(a.spec(), b); })
      .def("__str__", &PadicElement::to_string)
      .def("__repr__", [](const PadicElement& a) { return "PadicElement(" + a.to_string() + ")"; });

  m.def("teichmueller", [](FieldSpec k, std::int64_t r) { return teichmueller(ResidueElement::from_int(k, r)); });
  m.def("root_of_unity_order", &root_of_unity_order);
  m.def("rational_reconstruct", &rational_reconstruct);

  py::class_<MapDescription>(m, "MapDescription")
      .def_readonly("prime", &MapDescription::prime)
      .def_readonly("precision", &MapDescription::precision)
      .def_readonly("dimension", &MapDescription::dimension)
      .def_readonly("rational_points", &MapDescription::rational_points)
      .def("field", [](const MapDescription& d) { return d.field(); })
      .def("word", [](const MapDescription& d) { return build_word(d); });

  m.def("parse_maps", [](const std::string& text) { return parse_maps(text); });
  m.def("serialize_maps", &serialize_maps);

  py::class_<AutoWord>(m, "AutoWord")
      .def_property_readonly("spec", &AutoWord::spec)
      .def_property_readonly("dimension", &AutoWord::dimension)
      .def("has_conjugator", &AutoWord::has_conjugator)
      .def("core", &AutoWord::core)
      .def("is_triangular", &AutoWord::is_triangular)
      .def("describe", [](const AutoWord& w) { return serialize_maps({describe_word(w)}); })
      .def("digest", [](const AutoWord& w) { return word_digest(w); });

  m.def("apply", [](const AutoWord& w, const py::sequence& p) {
    return point_strings(padyn::apply(w, to_point(w.spec(), p)));
  });
  m.def("inverse", [](const AutoWord& w) { return padyn::inverse(w); });
  m.def("power", [](const AutoWord& w, unsigned n) { return padyn::power(w, n); });
  m.def("indeterminacy_locus", [](const AutoWord& w, bool special) {
    return indeterminacy_locus(w, special ? LocusField::Special : LocusField::Generic).to_strings();
  }, py::arg("w"), py::arg("special") = false);
  m.def("is_regular", [](const AutoWord& w) { return is_regular(w); });
  m.def("is_special_henon", [](const AutoWord& w) { return is_special_henon(w); });
  m.def("check_iterate_locus", [](const AutoWord& w, unsigned n) { return check_iterate_locus(w, n); });

  m.def("permutation_cycles", [](const AutoWord& w, unsigned level, std::uint64_t budget) {
    return permutation_cycles(w, level, budget).counts;
  }, py::arg("w"), py::arg("level"), py::arg("budget") = kDefaultBudget);
  m.def("detect_period", [](const AutoWord& w, const py::sequence& p, std::uint64_t max_iter) {
    return detect_period(w, to_point(w.spec(), p), max_iter);
  });
  m.def("enumerate_periodic_points_json", [](const AutoWord& w, std::uint64_t n_max, unsigned level) {
    return enumerate_periodic_points(w, n_max, level).to_json();
  });
  m.def("empirical_period_bound_json", [](const AutoWord& w, const std::vector<unsigned>& levels) {
    return empirical_period_bound(w, levels).to_json();
  });
  m.def("triangular_periods_json", [](const AutoWord& w, std::uint64_t n_max) {
    return triangular_periods(w, n_max).to_json();
  });
  m.def("certify_rational_json", [](const MapDescription& d, const std::vector<std::uint64_t>& primes,
                                    const std::vector<unsigned>& levels) {
    return certify_rational(d, primes, levels).to_json();
  });
  m.def("conjugation_transport", [](const AutoWord& w, std::size_t samples) {
    TransportReport t = conjugation_transport(w, samples);
    py::dict d;
    d["holds"] = t.holds;
    d["spectra_equal"] = t.spectra_equal;
    d["word_periods"] = t.word_periods;
    d["core_periods"] = t.core_periods;
    d["failures"] = t.failures;
    return d;
  });
}
