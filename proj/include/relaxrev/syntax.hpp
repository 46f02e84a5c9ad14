#ifndef RELAXREV_SYNTAX_HPP_
#define RELAXREV_SYNTAX_HPP_

// Line-oriented ASCII surface syntax for knowledge bases.
//
//   # comment
//   dialect EL|ELU|ALC
//   signature                      (optional; otherwise inferred)
//     concepts: A, B
//     roles: r
//     individuals: a, b
//   end
//   C [= D.
//   a : C.
//   (a, b) : r.
//
//   concept := disj
//   disj    := conj ('|' conj)*
//   conj    := unary ('&' unary)*
//   unary   := 'not' unary | 'some' ROLE '.' primary | 'only' ROLE '.' primary | primary
//   primary := 'Top' | 'Bot' | NAME | '(' concept ')'
//
// A quantifier filler may also be another quantifier or a negation without
// parentheses: `some r.only s.A`, `only r.not A`.
//
// The role name `TopRole` denotes the universal role and may only appear in
// role assertions.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "relaxrev/concept.hpp"

namespace relaxrev {

inline constexpr std::string_view kUniversalRoleName = "TopRole";

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct ParsedKb {
  KnowledgeBase kb;
  // One entry per sentence of kb, in order.
  std::vector<SourceLocation> locations;
};

// Throws ParseError or DialectViolation.
KnowledgeBase parse_kb(std::string_view text);
ParsedKb parse_kb_located(std::string_view text);

// Standalone concept / sentence (the trailing '.' of a sentence is
// optional here). Names are not checked against any signature.
Concept parse_concept(std::string_view text);
Sentence parse_sentence(std::string_view text);

std::string render(const Concept& c);
std::string render(const Sentence& s);
std::string render(const KnowledgeBase& kb);

}  // namespace relaxrev

#endif  // RELAXREV_SYNTAX_HPP_
