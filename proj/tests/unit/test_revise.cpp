#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "relaxrev/error.hpp"
#include "relaxrev/reasoner.hpp"
#include "relaxrev/revise.hpp"
#include "relaxrev/syntax.hpp"

using namespace relaxrev;

namespace {
KnowledgeBase kb(const std::string& dialect, const std::string& body) {
  return parse_kb("dialect " + dialect + "\n" + body);
}
Sentence s(const std::string& text) { return parse_sentence(text); }

RevisionConfig bot_lhs() {
  RevisionConfig cfg;
  cfg.op = ConceptOperator(OperatorId::KappaBot);
  cfg.mode = FormulaRelaxMode::RetractLHS;
  cfg.conflict = ConflictKind::Incoherence;
  return cfg;
}

const KnowledgeBase& tweety_old() {
  static const KnowledgeBase k = kb("EL", "Tweety [= Bird.\nBird [= Flies.");
  return k;
}
const KnowledgeBase& tweety_new() {
  static const KnowledgeBase k = kb("EL", "Tweety & Flies [= Bot.");
  return k;
}
const KnowledgeBase& rich_old() {
  static const KnowledgeBase k = kb("ALC", "Bob [= only hasChild.Rich.");
  return k;
}
const KnowledgeBase& rich_new() {
  static const KnowledgeBase k = kb("ALC", "Bob [= some hasChild.John.\nJohn [= not Rich.");
  return k;
}
}  // namespace

TEST_CASE("conflict names") {
  CHECK(parse_conflict("unsat") == ConflictKind::Unsat);
  CHECK(parse_conflict(conflict_name(ConflictKind::Incoherence)) == ConflictKind::Incoherence);
  CHECK(has_conflict(tweety_old().united(tweety_new()), ConflictKind::Incoherence));
  CHECK_FALSE(has_conflict(tweety_old().united(tweety_new()), ConflictKind::Unsat));
}

TEST_CASE("partitions of the tweety example") {
  auto ps = find_partitions(tweety_old(), tweety_new(), ConflictKind::Incoherence);
  REQUIRE(ps.size() == 2);
  std::vector<std::vector<std::size_t>> retained{ps[0].retained, ps[1].retained};
  std::sort(retained.begin(), retained.end());
  CHECK(retained == std::vector<std::vector<std::size_t>>{{0}, {1}});
}

TEST_CASE("partitions without conflict") {
  auto ps = find_partitions(kb("ALC", "A [= B."), kb("ALC", "B [= E."), ConflictKind::Unsat);
  REQUIRE(ps.size() == 1);
  CHECK(ps[0].conflicting.empty());
  CHECK(ps[0].retained == std::vector<std::size_t>{0});
}

TEST_CASE("self-conflicting sentence") {
  auto ps = find_partitions(kb("ALC", "a : Bot."), kb("ALC", ""), ConflictKind::Unsat);
  REQUIRE(ps.size() == 1);
  CHECK(ps[0].retained.empty());
  CHECK(ps[0].conflicting == std::vector<std::size_t>{0});
}

TEST_CASE("partition budget") {
  std::string body;
  for (int i = 0; i < 6; ++i) body += "A" + std::to_string(i) + " [= B.\n";
  CHECK_THROWS_AS(find_partitions(kb("ALC", body), kb("ALC", ""), ConflictKind::Unsat, {}, 5),
                  ResourceExceeded);
}

TEST_CASE("minimal degrees of the tweety example") {
  KnowledgeBase empty(Dialect::EL);
  auto maps = minimal_degree_search(tweety_old(), empty, tweety_new(), bot_lhs());
  REQUIRE(maps.size() == 2);
  CHECK(maps[0].total() == 1);
  CHECK(std::find(maps.begin(), maps.end(), DegreeMap({1, 0})) != maps.end());
  CHECK(std::find(maps.begin(), maps.end(), DegreeMap({0, 1})) != maps.end());
}

TEST_CASE("cost zero when partitioning resolves the conflict") {
  KnowledgeBase conflicting = kb("EL", "");
  auto maps = minimal_degree_search(conflicting, tweety_old(), kb("EL", "A [= B."), bot_lhs());
  REQUIRE(maps.size() == 1);
  CHECK(maps[0].total() == 0);
}

TEST_CASE("quantifier swap repairs the rich example") {
  RevisionConfig cfg;
  cfg.op = ConceptOperator(OperatorId::RhoQ);
  cfg.mode = FormulaRelaxMode::RelaxRHS;
  cfg.conflict = ConflictKind::Incoherence;
  auto maps = minimal_degree_search(rich_old(), kb("ALC", ""), rich_new(), cfg);
  REQUIRE(maps.size() == 1);
  CHECK(maps[0] == DegreeMap({1}));
}

TEST_CASE("revision of the tweety example") {
  RevisionResult r = revise(tweety_old(), tweety_new(), bot_lhs());
  CHECK(r.total_cost == 1);
  CHECK(r.revised.sentences() ==
        std::vector<Sentence>{s("Bot [= Bird."), s("Bird [= Flies."), s("Tweety & Flies [= Bot.")});
  CHECK(r.alternatives.size() == 1);
  CHECK(is_coherent(r.revised));
  CHECK(r.full_degrees(2) == std::vector<std::size_t>{1, 0});
  CHECK_FALSE(r.trace.empty());
  CHECK(check_relevance(tweety_old(), tweety_new(), r, ConflictKind::Incoherence));
}

TEST_CASE("consistent union is kept") {
  RevisionConfig cfg = bot_lhs();
  cfg.conflict = ConflictKind::Unsat;
  RevisionResult r = revise(kb("ALC", "A [= B."), kb("ALC", "B [= E."), cfg);
  CHECK(r.total_cost == 0);
  CHECK(r.revised.sentences() == std::vector<Sentence>{s("A [= B."), s("B [= E.")});
  CHECK(check_relevance(kb("ALC", "A [= B."), kb("ALC", "B [= E."), r, ConflictKind::Unsat));
}

TEST_CASE("exception union repairs the rich example") {
  RevisionConfig cfg;
  cfg.op = ConceptOperator(OperatorId::RhoUnion, {parse_concept("John")});
  cfg.mode = FormulaRelaxMode::RelaxRHS;
  cfg.conflict = ConflictKind::Incoherence;
  RevisionResult r = revise(rich_old(), rich_new(), cfg);
  CHECK(r.total_cost == 1);
  CHECK(r.revised.contains(s("Bob [= only hasChild.(Rich | John).")));
  CHECK(r.revised.contains(s("Bob [= some hasChild.John.")));
  CHECK(r.revised.contains(s("John [= not Rich.")));
}

TEST_CASE("non-maximal retained set violates relevance") {
  KnowledgeBase t1 = kb("ALC", "a : A.\na : B.\na : C.");
  KnowledgeBase t2 = kb("ALC", "a : not A.");
  RevisionConfig cfg = bot_lhs();
  cfg.conflict = ConflictKind::Unsat;
  RevisionResult good = revise(t1, t2, cfg);
  CHECK(check_relevance(t1, t2, good, ConflictKind::Unsat));
  RevisionResult bad = good;
  bad.partition = Partition{{0, 1}, {2}};
  bad.degrees = DegreeMap({1, 1});
  bad.revised = assemble_revision(t1, t2, bad.partition, bad.degrees, cfg);
  CHECK_FALSE(check_relevance(t1, t2, bad, ConflictKind::Unsat));
}

TEST_CASE("conflicting new belief is rejected") {
  CHECK_THROWS_AS(revise(tweety_old(), kb("EL", "Top [= Bot."), bot_lhs()), ConflictingInput);
}

TEST_CASE("budget exhaustion") {
  RevisionConfig cfg;
  cfg.op = ConceptOperator(OperatorId::RhoQ);
  cfg.mode = FormulaRelaxMode::RelaxRHS;
  cfg.conflict = ConflictKind::Unsat;
  cfg.max_total_degree = 0;
  CHECK_THROWS_AS(revise(kb("ALC", "a : A."), kb("ALC", "a : not A."), cfg), BudgetExceeded);
}

TEST_CASE("reports") {
  RevisionConfig cfg = bot_lhs();
  RevisionResult r = revise(tweety_old(), tweety_new(), cfg);
  CHECK(render_report(tweety_old(), r, cfg).find("Bot [= Bird.") != std::string::npos);
  CHECK(render_porcelain(tweety_old(), r, cfg).find("cost=1") != std::string::npos);
}
