#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relaxrev/error.hpp"
#include "relaxrev/oracle.hpp"
#include "relaxrev/reasoner.hpp"
#include "relaxrev/relax.hpp"
#include "relaxrev/revise.hpp"
#include "relaxrev/syntax.hpp"

namespace py = pybind11;
using namespace relaxrev;

namespace {

OperatorId operator_id(const std::string& name) {
  auto id = parse_operator_id(name);
  if (!id) throw InvalidArgument("unknown operator '" + name + "'");
  return *id;
}

std::vector<Concept> concepts(const std::vector<std::string>& texts) {
  std::vector<Concept> out;
  for (const auto& t : texts) out.push_back(parse_concept(t));
  return out;
}

FormulaRelaxMode mode_of(const std::optional<std::string>& mode, const ConceptOperator& op) {
  if (!mode) {
    return op.direction() == Direction::Relax ? FormulaRelaxMode::RelaxRHS
                                              : FormulaRelaxMode::RetractLHS;
  }
  auto m = parse_mode(*mode);
  if (!m) throw InvalidArgument("unknown mode '" + *mode + "'");
  return *m;
}

RevisionConfig config_of(const std::string& op, const std::vector<std::string>& exceptions,
                         const std::optional<std::string>& mode, const std::string& conflict,
                         std::size_t max_total_degree) {
  RevisionConfig c;
  c.op = ConceptOperator(operator_id(op), concepts(exceptions));
  c.mode = mode_of(mode, c.op);
  auto k = parse_conflict(conflict);
  if (!k) throw InvalidArgument("unknown conflict '" + conflict + "'");
  c.conflict = *k;
  c.max_total_degree = max_total_degree;
  return c;
}

std::vector<std::string> sentence_texts(const KnowledgeBase& kb) {
  std::vector<std::string> out;
  for (const auto& s : kb.sentences()) out.push_back(render(s));
  return out;
}

py::list verdicts(const std::vector<Verdict>& vs) {
  py::list out;
  for (const auto& v : vs) {
    py::dict d;
    d["name"] = v.name;
    d["status"] = std::string(status_name(v.status));
    d["scope"] = v.scope;
    d["evidence"] = v.evidence;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Description logic reasoning, relaxation and revision";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<DialectViolation>(m, "DialectViolation", error.ptr());
  py::register_exception<UnsupportedShape>(m, "UnsupportedShape", error.ptr());
  py::register_exception<ResourceExceeded>(m, "ResourceExceeded", error.ptr());
  py::register_exception<NotEnoughExceptions>(m, "NotEnoughExceptions", error.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());
  py::register_exception<ConflictingInput>(m, "ConflictingInput", error.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());

  py::class_<KnowledgeBase>(m, "KnowledgeBase")
      .def_property_readonly("dialect",
                             [](const KnowledgeBase& kb) { return std::string(dialect_name(kb.dialect())); })
      .def_property_readonly("sentences", &sentence_texts)
      .def("__len__", &KnowledgeBase::size)
      .def("__str__", [](const KnowledgeBase& kb) { return render(kb); })
      .def("__eq__", [](const KnowledgeBase& a, const KnowledgeBase& b) { return a == b; });

  m.def("parse_kb", [](const std::string& text) { return parse_kb(text); }, py::arg("text"));
  m.def("render", [](const KnowledgeBase& kb) { return render(kb); });
  m.def("normalize_concept", [](const std::string& c) { return render(parse_concept(c)); });

  m.def("is_satisfiable", [](const KnowledgeBase& kb) { return is_satisfiable(kb); });
  m.def("is_coherent", [](const KnowledgeBase& kb) { return is_coherent(kb); });
  m.def("unsat_named_concepts", [](const KnowledgeBase& kb) { return unsat_named_concepts(kb); });
  m.def("entails", [](const KnowledgeBase& kb, const std::string& s) {
    return entails(kb, parse_sentence(s));
  });
  m.def("subsumes", [](const KnowledgeBase& kb, const std::string& c, const std::string& d) {
    return subsumes(kb, parse_concept(c), parse_concept(d));
  });
  m.def("equivalent", [](const KnowledgeBase& kb, const std::string& c, const std::string& d) {
    return equivalent(kb, parse_concept(c), parse_concept(d));
  });

  m.def(
      "relax_concept",
      [](const std::string& op, const std::string& c, std::size_t k,
         const std::vector<std::string>& exceptions, const std::optional<KnowledgeBase>& against) {
        ConceptOperator o(operator_id(op), concepts(exceptions));
        Reasoner r(against.value_or(KnowledgeBase(Dialect::ALC)));
        return render(o.iterate(parse_concept(c), k, r));
      },
      py::arg("op"), py::arg("concept"), py::arg("k") = 1,
      py::arg("exceptions") = std::vector<std::string>{}, py::arg("against") = py::none());

  m.def(
      "relax_theory",
      [](const KnowledgeBase& kb, const std::vector<std::size_t>& degrees, const std::string& op,
         const std::optional<std::string>& mode, const std::vector<std::string>& exceptions) {
        ConceptOperator o(operator_id(op), concepts(exceptions));
        return relax_theory(kb, DegreeMap(degrees), mode_of(mode, o), o);
      },
      py::arg("kb"), py::arg("degrees"), py::arg("op"), py::arg("mode") = py::none(),
      py::arg("exceptions") = std::vector<std::string>{});

  m.def(
      "revise",
      [](const KnowledgeBase& t1, const KnowledgeBase& t2, const std::string& op,
         const std::optional<std::string>& mode, const std::string& conflict,
         const std::vector<std::string>& exceptions, std::size_t max_total_degree) {
        RevisionConfig cfg = config_of(op, exceptions, mode, conflict, max_total_degree);
        RevisionResult r = revise(t1, t2, cfg);
        py::dict d;
        d["revised"] = r.revised;
        d["cost"] = r.total_cost;
        d["degrees"] = r.full_degrees(t1.size());
        d["retained"] = r.partition.retained;
        d["conflicting"] = r.partition.conflicting;
        d["partitions"] = r.partitions.size();
        d["alternatives"] = r.alternatives.size();
        d["relevance"] = check_relevance(t1, t2, r, cfg.conflict, cfg.reasoner);
        return d;
      },
      py::arg("old"), py::arg("new"), py::arg("op") = "kappa_bot", py::arg("mode") = py::none(),
      py::arg("conflict") = "incoherence", py::arg("exceptions") = std::vector<std::string>{},
      py::arg("max_total_degree") = 8);

  m.def(
      "check_postulates",
      [](const KnowledgeBase& t, const KnowledgeBase& tp, const std::string& op,
         const std::optional<std::string>& mode, std::size_t domain, std::uint64_t seed) {
        RevisionConfig cfg = config_of(op, {}, mode, "unsat", 8);
        PostulateOptions opts;
        opts.max_domain = domain;
        opts.seed = seed;
        return verdicts(check_postulates(t, tp, cfg, opts).verdicts);
      },
      py::arg("t"), py::arg("t_prime"), py::arg("op") = "kappa_bot", py::arg("mode") = py::none(),
      py::arg("domain") = 2, py::arg("seed") = 1);

  m.def(
      "check_representation",
      [](const KnowledgeBase& t, const KnowledgeBase& tp, const std::string& op,
         const std::optional<std::string>& mode, std::size_t domain, std::size_t max_sum) {
        RevisionConfig cfg = config_of(op, {}, mode, "unsat", 8);
        RepresentationReport r = check_representation(t, tp, cfg, domain, max_sum);
        py::dict d;
        d["status"] = std::string(status_name(r.status));
        d["result_models"] = r.result_models;
        d["minimal_models"] = r.minimal_models;
        d["minimal_rank"] = r.minimal_rank;
        d["evidence"] = r.evidence;
        return d;
      },
      py::arg("t"), py::arg("t_prime"), py::arg("op") = "rho_top", py::arg("mode") = py::none(),
      py::arg("domain") = 2, py::arg("max_sum") = 4);
}
