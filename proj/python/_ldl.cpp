#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ldl/duality.hpp"
#include "ldl/error.hpp"
#include "ldl/report.hpp"
#include "ldl/states.hpp"
#include "ldl/verify/suite.hpp"

namespace py = pybind11;
using namespace ldl;

namespace {

// A calculus together with its state poset, computed on first use.
struct PyCalculus {
  std::shared_ptr<const Calculus> calc;
  std::shared_ptr<const FreeCalculus> free;
  std::shared_ptr<const SemanticCalculus> semantic;
  mutable std::shared_ptr<const StateSpace> space;

  const StateSpace& states() const {
    if (!space) space = semantic ? semantic->states() : state_poset(calc);
    return *space;
  }
};

PyCalculus from_basis(const std::string& text) {
  auto f = std::make_shared<const FreeCalculus>(parse_basis(text));
  return {f, f, nullptr, nullptr};
}

PyCalculus from_poset(const std::string& text) {
  auto sc = std::make_shared<const SemanticCalculus>(parse_poset(text));
  return {sc->backend(), nullptr, sc, nullptr};
}

}  // namespace

PYBIND11_MODULE(_ldl, m) {
  m.doc() = "Disjunctive sequent calculi, logical states and finite L-domains";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<SyntaxError>(m, "SyntaxError", error);
  py::register_exception<InputError>(m, "InputError", error);
  py::register_exception<UnknownAtom>(m, "UnknownAtom", error);
  py::register_exception<DisjointnessViolation>(m, "DisjointnessViolation", error);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error);
  py::register_exception<SizeLimit>(m, "SizeLimit", error);
  py::register_exception<NotAnLDomain>(m, "NotAnLDomain", error);
  py::register_exception<PreconditionViolated>(m, "PreconditionViolated", error);

  py::class_<PyCalculus>(m, "Calculus")
      .def_property_readonly("kind", [](const PyCalculus& c) { return std::string(c.calc->kind()); })
      .def_property_readonly("atoms", [](const PyCalculus& c) { return c.calc->atoms(); })
      .def("entails", [](const PyCalculus& c, const std::string& sequent) { return c.calc->entails(parse_sequent(sequent, *c.calc)); })
      .def("classify",
           [](const PyCalculus& c, const std::string& f) { return std::string(to_string(classify(parse_formula(f, *c.calc), *c.calc))); })
      .def("flatten", [](const PyCalculus& c, const std::string& f) { return print_flat(flatten(parse_formula(f, *c.calc), *c.calc), *c.calc); })
      .def(
          "derive",
          [](const PyCalculus& c, const std::string& sequent, std::size_t depth) -> std::optional<std::string> {
            if (!c.free) throw PreconditionViolated("derivation search needs a free calculus");
            const auto d = search_derivation(*c.free, parse_sequent(sequent, *c.calc), {depth, 2'000'000});
            if (!d) return std::nullopt;
            return print_derivation(*d);
          },
          py::arg("sequent"), py::arg("depth") = 8)
      .def("check_derivation",
           [](const PyCalculus& c, const std::string& text) {
             const Verdict v = check_derivation(*c.calc, parse_derivation(text, *c.calc));
             return py::make_tuple(v.ok, v.diagnostic);
           })
      .def("state_labels",
           [](const PyCalculus& c) {
             std::vector<std::string> out;
             for (const LogicalState& s : c.states().states) out.push_back(s.label());
             return out;
           })
      .def("states_jsonl", [](const PyCalculus& c) { return states_jsonl(c.states()); })
      .def("states_dot", [](const PyCalculus& c) { return state_space_dot(c.states()); })
      .def("state_leq", [](const PyCalculus& c, std::size_t a, std::size_t b) { return c.states().poset.leq(a, b); });

  m.def("free_calculus", &from_basis, py::arg("text"), "Calculus of a `.dsb` basis text.");
  m.def("domain_calculus", &from_poset, py::arg("text"), "Calculus of a `.pos` L-domain text.");
  m.def("is_l_domain", [](const std::string& text) {
    const Verdict v = is_l_domain(parse_poset(text));
    return py::make_tuple(v.ok, v.diagnostic);
  });
  m.def("roundtrip", [](const std::string& text) {
    const IsoCertificate cert = check_representation_iso(parse_poset(text));
    return py::make_tuple(cert.verdict.ok, cert.lines);
  });
  m.def(
      "run_suite",
      [](std::vector<int> criteria, std::size_t k, std::size_t max_poset_size, const std::string& fixtures, std::uint64_t seed) {
        verify::SuiteConfig cfg;
        cfg.criteria = std::move(criteria);
        cfg.k = k;
        cfg.max_poset_size = max_poset_size;
        cfg.fixture_dir = fixtures;
        cfg.seed = seed;
        std::vector<verify::CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = verify::run_suite(cfg);
        }
        return verify::report_json(results, cfg);
      },
      py::arg("criteria"), py::arg("k") = 6, py::arg("max_poset_size") = 5, py::arg("fixtures"), py::arg("seed") = 1,
      "Runs acceptance criteria and returns the JSON report.");
}
