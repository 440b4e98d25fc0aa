#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cosupp/dsl.hpp"

namespace py = pybind11;
using namespace cosupp;

namespace {

// shared_ptr<const RingDesc> cannot serve as a pybind11 holder, so ring
// handles travel inside a plain value wrapper
struct PyRing {
  RingDescPtr ptr;
};

py::dict trace_to_py(const std::vector<TraceStep>& trace) {
  py::list steps;
  for (const auto& s : trace) {
    py::dict d;
    d["rule_id"] = s.rule_id;
    d["paper_anchor"] = s.paper_anchor;
    d["premises"] = s.premises;
    if (s.conjecture) d["conjecture"] = true;
    steps.append(d);
  }
  py::dict out;
  out["steps"] = steps;
  return out;
}

py::dict membership_to_py(const Membership& m) {
  py::dict d;
  d["verdict"] = m.verdict.str();
  d["assumptions"] = m.assumptions;
  d["frontier"] = m.frontier;
  d["from_cache"] = m.from_cache;
  d["trace"] = trace_to_py(m.trace);
  return d;
}

Presentation parse_presentation(const RingDescPtr& ring,
                                const std::vector<std::vector<std::string>>&
                                    rows) {
  RingModel m = model_of(ring);
  if (!m.present) throw error("ring has no computable model");
  Presentation pres;
  for (const auto& row : rows) {
    std::vector<Poly> r;
    for (const auto& s : row) r.push_back(parse_poly(m.poly, s));
    pres.push_back(std::move(r));
  }
  return pres;
}

EngineOptions engine_opts(bool assume_gj) {
  EngineOptions o;
  o.assume_gruson_jensen = assume_gj;
  return o;
}

}  // namespace

PYBIND11_MODULE(_cosupp, mod) {
  mod.doc() = "symbolic cosupport engine";

  py::class_<PyRing>(mod, "Ring")
      .def("__repr__", [](const PyRing& r) { return r.ptr->repr(); });

  py::class_<PrimeId>(mod, "Prime")
      .def("__repr__", [](const PrimeId& p) { return p.repr(); });

  py::class_<SpecSet>(mod, "SpecSet")
      .def("__repr__", [](const SpecSet& s) { return s.repr(); })
      .def("member",
           [](const SpecSet& s, const PrimeId& p) {
             return specset_member(s, p).str();
           })
      .def("is_closed", [](const SpecSet& s) {
        auto c = specset_is_closed(s);
        py::dict d;
        d["value"] = c.value.str();
        if (c.witness) d["witness"] = c.witness->str();
        if (!c.certificate.empty()) d["certificate"] = c.certificate;
        return d;
      });

  mod.def(
      "ring",
      [](const std::string& expr) { return PyRing{ring_from_text(expr)}; },
      py::arg("expr"),
          "Build a ring from an expression like 'powerseries(Q[x], t)'.");
  mod.def(
      "prime",
      [](const PyRing& r, const std::string& gens) {
        return prime_from_text(r.ptr, gens);
      },
      py::arg("ring"), py::arg("gens"),
          "Prime ideal handle from comma-separated generators ('0' for the "
          "zero ideal).");

  mod.def(
      "member",
      [](const PyRing& r, const PrimeId& p, bool assume_gj) {
        return membership_to_py(
            cosupp_member(r.ptr, p, engine_opts(assume_gj)));
      },
      py::arg("ring"), py::arg("prime"),
      py::arg("assume_gruson_jensen") = false);

  mod.def(
      "describe",
      [](const PyRing& r, bool assume_gj) {
        auto d = cosupp_describe(r.ptr, engine_opts(assume_gj));
        py::dict out;
        out["set"] = d.set;
        out["exact"] = d.exact.str();
        out["assumptions"] = d.assumptions;
        out["trace"] = trace_to_py(d.trace);
        return out;
      },
      py::arg("ring"), py::arg("assume_gruson_jensen") = false);

  mod.def(
      "supp_module",
      [](const PyRing& r,
         const std::vector<std::vector<std::string>>& pres) {
        return supp_module(r.ptr, parse_presentation(r.ptr, pres));
      },
      py::arg("ring"), py::arg("presentation"));

  mod.def(
      "cosupp_module",
      [](const PyRing& r,
         const std::vector<std::vector<std::string>>& pres, bool assume_gj) {
        return cosupp_module(r.ptr, parse_presentation(r.ptr, pres),
                             engine_opts(assume_gj));
      },
      py::arg("ring"), py::arg("presentation"),
      py::arg("assume_gruson_jensen") = false);

  mod.def(
      "cosupp_kappa",
      [](const PyRing& r, const PrimeId& p) { return cosupp_kappa(r.ptr, p); },
      py::arg("ring"), py::arg("prime"));
  mod.def(
      "cosupp_injective",
      [](const PyRing& r, const PrimeId& p) {
        return cosupp_injective(r.ptr, p);
      },
      py::arg("ring"), py::arg("prime"));

  mod.def(
      "cr_criterion",
      [](const PyRing& r, const std::vector<PrimeId>& battery) {
        auto res = cr_criterion(r.ptr, {}, battery);
        py::dict d;
        d["value"] = res.value.str();
        if (res.witness) d["witness"] = res.witness->repr();
        d["notes"] = res.notes;
        return d;
      },
      py::arg("ring"), py::arg("battery") = std::vector<PrimeId>{});

  mod.def(
      "run",
      [](const std::string& text, bool trace, const std::string& order,
         bool assume_gj, long max_steps) {
        RunOptions opts;
        opts.json = true;
        opts.trace = trace;
        opts.order = order;
        opts.assume_gruson_jensen = assume_gj;
        opts.max_steps = max_steps;
        Report r = run_program(parse_program(text), opts);
        py::dict d;
        d["json"] = r.json_text;
        d["human"] = r.human_text;
        d["had_errors"] = r.had_errors;
        return d;
      },
      py::arg("text"), py::arg("trace") = false,
      py::arg("order") = "grevlex",
      py::arg("assume_gruson_jensen") = false,
      py::arg("max_steps") = 100000L,
      "Execute a program in the cosupp language; returns the JSON report "
      "text alongside the human-readable rendering.");
}
