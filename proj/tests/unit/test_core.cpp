#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "relaxrev/concept.hpp"
#include "relaxrev/error.hpp"
#include "relaxrev/normal_form.hpp"
#include "relaxrev/reasoner.hpp"
#include "relaxrev/syntax.hpp"
#include "support/generators.hpp"

using namespace relaxrev;

namespace {
Concept A() { return Concept::atom("A"); }
Concept B() { return Concept::atom("B"); }
Concept C() { return Concept::atom("C"); }
Concept E() { return Concept::atom("E"); }
}  // namespace

TEST_CASE("parse tweety") {
  KnowledgeBase kb = parse_kb("dialect EL\nTweety [= Bird.\nBird [= Flies.");
  CHECK(kb.dialect() == Dialect::EL);
  REQUIRE(kb.size() == 2);
  CHECK(kb.sentences()[0] == Sentence::gci(Concept::atom("Tweety"), Concept::atom("Bird")));
  CHECK(kb.signature().concept_names() == std::vector<std::string>{"Tweety", "Bird", "Flies"});
}

TEST_CASE("parse forall in ALC") {
  KnowledgeBase kb = parse_kb("dialect ALC\nBob [= only hasChild.Rich.");
  REQUIRE(kb.size() == 1);
  CHECK(kb.sentences()[0].rhs() ==
        Concept::forall("hasChild", Concept::atom("Rich")));
}

TEST_CASE("dialect violation") {
  CHECK_THROWS_AS(parse_kb("dialect EL\nA [= some r.B | C."), DialectViolation);
  CHECK_THROWS_AS(parse_kb("dialect ELU\nA [= not B."), DialectViolation);
  CHECK_NOTHROW(parse_kb("dialect ELU\nA [= some r.B | C."));
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_kb("dialect EL\nA [= (B & C.\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse_kb("A [= B."), ParseError);
  CHECK_THROWS_AS(parse_kb("dialect EL\nA [= B"), ParseError);
}

TEST_CASE("assertions and comments") {
  KnowledgeBase kb = parse_kb("dialect ALC\n# c\na : A & not B.  # trailing\n(a, b) : r.\n");
  REQUIRE(kb.size() == 2);
  CHECK(kb.sentences()[1] == Sentence::role_fact("a", "b", "r"));
  CHECK(kb.signature().individuals() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("render concepts") {
  CHECK(render(Concept::conj({A(), B()})) == "A & B");
  CHECK(render(Concept::exists("m", Concept::disj({B(), C()}))) == "some m.(B | C)");
  CHECK(render(Concept::top()) == "Top");
  CHECK(render(Concept::negate(Concept::conj({A(), B()}))) == "not (A & B)");
}

TEST_CASE("smart constructors") {
  CHECK(Concept::conj({}).is_top());
  CHECK(Concept::disj({}).is_bot());
  CHECK(Concept::conj({A()}) == A());
  CHECK(Concept::conj({A(), A()}) == A());
  CHECK(Concept::conj({A(), B()}) == Concept::conj({B(), A()}));
  Concept c = Concept::conj({A(), Concept::conj({B(), C()})});
  CHECK(c.operands().size() == 3);
}

TEST_CASE("render round trip on random KBs") {
  testgen::Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    testgen::KbShape s = testgen::random_shape(rng);
    KnowledgeBase kb = testgen::random_kb(rng, s, 1, 5);
    KnowledgeBase back = parse_kb(render(kb));
    CHECK(back.sentences() == kb.sentences());
    CHECK(back.dialect() == kb.dialect());
  }
  for (Dialect d : {Dialect::EL, Dialect::ELU, Dialect::ALC}) {
    for (int i = 0; i < 300; ++i) {
      Concept c = testgen::random_concept(rng, d, 3, 12);
      CHECK(parse_concept(render(c)) == c);
    }
  }
}

TEST_CASE("nnf") {
  CHECK(to_nnf(Concept::negate(Concept::conj({A(), B()}))) ==
        Concept::disj({Concept::negate(A()), Concept::negate(B())}));
  CHECK(to_nnf(Concept::negate(Concept::exists("r", A()))) ==
        Concept::forall("r", Concept::negate(A())));
  CHECK(to_nnf(Concept::negate(Concept::negate(A()))) == A());
}

TEST_CASE("description trees") {
  Concept c = Concept::conj({A(), Concept::exists("r", Concept::conj({B(), Concept::exists("s", C())}))});
  DescriptionTree t = to_description_tree(c);
  REQUIRE(t.nodes.size() == 3);
  CHECK(t.nodes[0].labels == std::vector<std::string>{"A"});
  CHECK(t.nodes[0].edges[0].role == "r");
  CHECK(t.height() == 2);
  CHECK(from_description_tree(t) == c);

  DescriptionTree top = to_description_tree(Concept::top());
  CHECK(top.nodes.size() == 1);
  CHECK(top.nodes[0].labels.empty());

  DescriptionTree two = to_description_tree(
      Concept::conj({Concept::exists("r", Concept::top()), Concept::exists("r", A())}));
  CHECK(two.nodes.size() == 3);
  CHECK(two.nodes[0].edges.size() == 2);

  CHECK_THROWS_AS(to_description_tree(Concept::conj({A(), Concept::exists("r", Concept::bot())})),
                  UnsupportedShape);
}

TEST_CASE("grouped normal form") {
  Concept weaker = Concept::exists("r", A());
  Concept stronger = Concept::exists("r", Concept::conj({A(), B()}));
  CHECK(to_grouped_normal_form(Concept::conj({weaker, stronger})) == stronger);
  Concept lifted = to_grouped_normal_form(Concept::conj({Concept::disj({A(), B()}), E()}));
  CHECK(lifted == Concept::disj({Concept::conj({A(), E()}), Concept::conj({B(), E()})}));
  Concept normal = Concept::conj({A(), Concept::exists("r", B())});
  CHECK(to_grouped_normal_form(normal) == normal);
}

TEST_CASE("prefix form") {
  PrefixForm p = to_prefix_form(Concept::forall("hasChild", Concept::atom("Rich")));
  REQUIRE(p.prefix.size() == 1);
  CHECK(p.prefix[0].first == Quantifier::Forall);
  CHECK(p.prefix[0].second == "hasChild");
  CHECK(p.body == Concept::atom("Rich"));
  CHECK(to_prefix_form(Concept::conj({A(), B()})).prefix.empty());
  CHECK_THROWS_AS(to_prefix_form(Concept::conj({A(), Concept::exists("r", B())})), UnsupportedShape);
}

TEST_CASE("cnf and dnf") {
  CHECK(body_to_cnf(Concept::disj({A(), Concept::conj({B(), E()})})) ==
        Concept::conj({Concept::disj({A(), B()}), Concept::disj({A(), E()})}));
  CHECK(body_to_cnf(A()) == A());
  CHECK(body_to_dnf(A()) == A());
  CHECK(body_to_dnf(Concept::conj({Concept::disj({A(), B()}), C()})) ==
        Concept::disj({Concept::conj({A(), C()}), Concept::conj({B(), C()})}));
}

TEST_CASE("normal forms agree with truth tables") {
  testgen::Rng rng(5);
  const std::vector<std::string> atoms{"A", "B", "C"};
  for (int i = 0; i < 500; ++i) {
    Concept c = testgen::random_body(rng, Dialect::ALC, 10);
    auto m = testgen::models_of(c, atoms);
    CHECK(testgen::models_of(body_to_cnf(c), atoms) == m);
    CHECK(testgen::models_of(body_to_dnf(c), atoms) == m);
    CHECK(testgen::models_of(to_nnf(c), atoms) == m);
  }
}

TEST_CASE("normal form soundness by the reasoner") {
  testgen::Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    Concept alc = testgen::random_concept(rng, Dialect::ALC, 3, 12);
    CHECK(equivalent_empty(alc, to_nnf(alc)));
    Concept elu = testgen::random_concept(rng, Dialect::ELU, 3, 12);
    CHECK(equivalent_empty(elu, to_grouped_normal_form(elu)));
    Concept el = testgen::random_concept(rng, Dialect::EL, 3, 12);
    CHECK(equivalent_empty(el, from_description_tree(to_description_tree(el))));
  }
}
