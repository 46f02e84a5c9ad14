#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "relaxrev/error.hpp"
#include "relaxrev/oracle.hpp"
#include "relaxrev/reasoner.hpp"
#include "relaxrev/revise.hpp"
#include "relaxrev/syntax.hpp"
#include "support/generators.hpp"

using namespace relaxrev;

namespace {
KnowledgeBase kb(const std::string& body) { return parse_kb("dialect ALC\n" + body); }
Sentence s(const std::string& text) { return parse_sentence(text); }

FiniteInterpretation blank(const Signature& sig, std::size_t n) {
  FiniteInterpretation I;
  I.signature = std::make_shared<const Signature>(sig);
  I.domain_size = n;
  I.concept_ext.assign(sig.concept_names().size(), 0);
  I.role_ext.assign(sig.role_names().size(), std::vector<std::uint64_t>(n, 0));
  I.ind_map.assign(sig.individuals().size(), 0);
  return I;
}

RevisionConfig unsat_config(OperatorId id, FormulaRelaxMode mode) {
  RevisionConfig cfg;
  cfg.op = ConceptOperator(id);
  cfg.mode = mode;
  cfg.conflict = ConflictKind::Unsat;
  return cfg;
}
}  // namespace

TEST_CASE("enumeration counts") {
  CHECK(enumerate_interpretations(Signature({"A"}, {}, {}), 1).size() == 2);
  CHECK(enumerate_interpretations(Signature({"A", "B"}, {"r"}, {"a"}), 1).size() == 8);
  CHECK(enumerate_interpretations(Signature({"A"}, {"r"}, {}), 2).size() == 64);
  InterpretationSpace space(Signature({"A"}, {"r"}, {"a"}), 2);
  CHECK(space.size() == 4 + 128);
  CHECK(space.range(2) == std::pair<std::size_t, std::size_t>{4, 132});
  CHECK(space.domain_of(3) == 1);
  CHECK(space.domain_of(4) == 2);
  CHECK_THROWS_AS(InterpretationSpace(Signature({"A"}, {"r", "s", "t"}, {}), 3), ResourceExceeded);
}

TEST_CASE("ids decode to distinct interpretations") {
  InterpretationSpace space(Signature({"A"}, {"r"}, {"a"}), 2);
  std::set<std::string> seen;
  for (std::size_t id = 0; id < space.size(); ++id) seen.insert(describe(space.at(id)));
  CHECK(seen.size() == space.size());
}

TEST_CASE("satisfaction") {
  Signature sig({"A", "B"}, {"r"}, {});
  FiniteInterpretation I = blank(sig, 2);
  I.concept_ext = {0b01, 0b11};
  CHECK(satisfies(I, s("A [= B.")));
  CHECK_FALSE(satisfies(I, s("B [= A.")));
  CHECK_FALSE(satisfies(I, s("Top [= Bot.")));
  CHECK(satisfies(I, s("some r.Top [= Bot.")));
  I.role_ext[0][0] = 0b10;
  CHECK_FALSE(satisfies(I, s("some r.Top [= Bot.")));
  CHECK(extension(I, parse_concept("some r.B")) == 0b01);
  CHECK(extension(I, parse_concept("only r.A")) == 0b10);
  CHECK_THROWS_AS(satisfies(I, s("A [= Zed.")), InvalidArgument);
}

TEST_CASE("universal role facts always hold") {
  Signature sig({"A"}, {}, {"a", "b"});
  for (const auto& I : enumerate_interpretations(sig, 2))
    CHECK(satisfies(I, Sentence::universal_role_fact("a", "b")));
}

TEST_CASE("model sets") {
  KnowledgeBase none = kb("");
  none.signature().add_concept("A");
  CHECK(count(model_set(none, 2)) == InterpretationSpace(none.signature(), 2).size());
  KnowledgeBase bottom = kb("Top [= Bot.");
  bottom.signature().add_concept("A");
  CHECK(count(model_set(bottom, 2)) == 0);
  KnowledgeBase tweety = kb("Tweety [= Bird.\nBird [= Flies.\nTweety & Flies [= Bot.");
  CHECK(count(model_set(tweety, 1)) > 0);
  CHECK(is_satisfiable(tweety));
}

TEST_CASE("compiled KB agrees with direct evaluation") {
  testgen::Rng rng(41);
  for (int i = 0; i < 60; ++i) {
    testgen::KbShape shape = testgen::random_shape(rng);
    KnowledgeBase t = testgen::random_kb(rng, shape, 1, 4);
    CompiledKb compiled(t, t.signature());
    CHECK(compiled.size() == t.size());
    for (const auto& I : enumerate_interpretations(t.signature(), 1)) {
      CHECK(compiled.holds(I) == satisfies(I, t));
      for (std::size_t k = 0; k < t.size(); ++k)
        CHECK(compiled.holds(I, k) == satisfies(I, t.sentences()[k]));
    }
  }
}

TEST_CASE("rank examples") {
  RankSpec spec;
  KnowledgeBase one = kb("a : A.");
  for (const auto& I : enumerate_interpretations(one.signature(), 1))
    CHECK(rank(I, one, spec) == (satisfies(I, one) ? 0u : 1u));
  KnowledgeBase two = kb("a : A.\na : B.");
  FiniteInterpretation I = blank(two.signature(), 1);
  CHECK(rank(I, two, spec) == 2u);
  I.concept_ext = {1, 1};
  CHECK(rank(I, two, spec) == 0u);
}

TEST_CASE("rank matches brute force over degree maps") {
  testgen::Rng rng(43);
  const std::pair<FormulaRelaxMode, OperatorId> setups[] = {
      {FormulaRelaxMode::RelaxRHS, OperatorId::RhoTop},
      {FormulaRelaxMode::RelaxRHS, OperatorId::RhoDalal},
      {FormulaRelaxMode::RetractLHS, OperatorId::KappaBot},
  };
  for (int i = 0; i < 40; ++i) {
    testgen::KbShape shape = testgen::random_shape(rng);
    KnowledgeBase t = testgen::random_kb(rng, shape, 1, 3);
    for (auto [mode, id] : setups) {
      RankSpec spec;
      spec.mode = mode;
      spec.op = ConceptOperator(id);
      spec.max_sum = 3;
      for (const auto& I : enumerate_interpretations(t.signature(), 1)) {
        CHECK(rank(I, t, spec) == testgen::brute_force_rank(I, t, mode, spec.op, 3));
      }
    }
  }
}

TEST_CASE("rank zero exactly on models and no interpretation satisfies everything") {
  testgen::Rng rng(45);
  for (int i = 0; i < 60; ++i) {
    testgen::KbShape shape = testgen::random_shape(rng);
    KnowledgeBase t = testgen::random_kb(rng, shape, 1, 4);
    InterpretationSpace space(t.signature(), 2, 20);
    RankTable table = rank_table(t, space, RankSpec{});
    ModelSet models = model_set(t, space);
    KnowledgeBase everything(Dialect::ALC, t.signature());
    everything.add(s("Top [= Bot."));
    CHECK(count(model_set(everything, space)) == 0);
    for (std::size_t id = 0; id < space.size(); ++id)
      CHECK((table.rank[id] == std::optional<std::size_t>{0}) == models[id]);
  }
}

TEST_CASE("faithful assignment") {
  FaReport r = check_faithful_assignment(kb("A [= B."), RankSpec{}, 1);
  CHECK(r.all_hold());
  FaReport empty = check_faithful_assignment(kb(""), RankSpec{}, 1);
  CHECK(empty.all_hold());
  CHECK(r.render().find("FA3") != std::string::npos);
}

TEST_CASE("equivalent variants have the same models") {
  KnowledgeBase t = kb("A [= B.\nB [= C.");
  for (const KnowledgeBase& v : equivalent_variants(t, 7)) {
    CHECK(v.size() > t.size());
    CHECK(model_set(v, 2) == model_set(t, 2));
  }
}

TEST_CASE("postulates on a consistent union") {
  PostulateReport r = check_postulates(kb("A [= B."), kb("B [= E."),
                                       unsat_config(OperatorId::KappaBot, FormulaRelaxMode::RetractLHS),
                                       PostulateOptions{});
  CHECK(r.verdicts[1].name == "G2");
  CHECK(r.verdicts[1].status == Status::Holds);
}

TEST_CASE("postulates on the tweety assertion variant") {
  KnowledgeBase t = kb("Tweety [= Bird.\nBird [= Flies.\nt : Tweety.");
  KnowledgeBase tp = kb("Tweety & Flies [= Bot.");
  PostulateOptions opts;
  opts.max_domain = 1;
  PostulateReport r =
      check_postulates(t, tp, unsat_config(OperatorId::KappaBot, FormulaRelaxMode::RetractLHS), opts);
  for (const Verdict& v : r.verdicts)
    if (v.name != "G4") CHECK_MESSAGE(v.status != Status::Fails, r.render());
}

TEST_CASE("adversarial operator fails G3") {
  PostulateOptions opts;
  opts.revise_fn = [](const KnowledgeBase& t, const KnowledgeBase& tp) {
    KnowledgeBase u = t.united(tp);
    if (is_satisfiable(u)) return tp;
    KnowledgeBase bottom(Dialect::ALC, u.signature());
    bottom.add(parse_sentence("Top [= Bot."));
    return bottom;
  };
  PostulateReport r = check_postulates(kb("a : A."), kb("a : not A."),
                                       unsat_config(OperatorId::RhoTop, FormulaRelaxMode::RelaxRHS),
                                       opts);
  bool g3_fails = false;
  for (const Verdict& v : r.verdicts)
    if (v.name == "G3") g3_fails = v.status == Status::Fails;
  CHECK(g3_fails);
  CHECK_FALSE(r.all_hold());
}

TEST_CASE("postulates need the unsat conflict") {
  RevisionConfig cfg = unsat_config(OperatorId::KappaBot, FormulaRelaxMode::RetractLHS);
  cfg.conflict = ConflictKind::Incoherence;
  CHECK_THROWS_AS(check_postulates(kb("A [= B."), kb("B [= E."), cfg, PostulateOptions{}),
                  InvalidArgument);
}

TEST_CASE("representation") {
  RepresentationReport r = check_representation(
      kb("a : A."), kb("a : not A."), unsat_config(OperatorId::RhoTop, FormulaRelaxMode::RelaxRHS),
      1, 4);
  CHECK(r.status == Status::Holds);
  CHECK(r.minimal_rank == std::optional<std::size_t>{1});
  CHECK(r.m_star == 0);
  RepresentationReport u = check_representation(
      kb("A [= B."), kb("B [= C."), unsat_config(OperatorId::RhoTop, FormulaRelaxMode::RelaxRHS), 2,
      4);
  CHECK(u.status == Status::Holds);
  CHECK(u.minimal_rank == std::optional<std::size_t>{0});
}
