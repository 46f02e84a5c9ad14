#ifndef RELAXREV_RELAX_HPP_
#define RELAXREV_RELAX_HPP_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "relaxrev/concept.hpp"
#include "relaxrev/reasoner.hpp"

namespace relaxrev {

enum class Direction { Relax, Retract };

enum class OperatorId {
  RhoTop,
  RhoDepth,
  RhoLeaves,
  RhoE,
  RhoExceptions,
  RhoDalal,
  RhoUnion,
  RhoQ,
  KappaBot,
  KappaExceptions,
  KappaDalal,
  KappaCap,
  KappaQ,
};

inline constexpr OperatorId kAllOperators[] = {
    OperatorId::RhoTop,     OperatorId::RhoDepth,        OperatorId::RhoLeaves,
    OperatorId::RhoE,       OperatorId::RhoExceptions,   OperatorId::RhoDalal,
    OperatorId::RhoUnion,   OperatorId::RhoQ,            OperatorId::KappaBot,
    OperatorId::KappaExceptions, OperatorId::KappaDalal, OperatorId::KappaCap,
    OperatorId::KappaQ,
};

// "rho_top", "kappa_cap", ...
std::string_view operator_name(OperatorId id);
std::optional<OperatorId> parse_operator_id(std::string_view name);
Direction direction_of(OperatorId id);
bool uses_exceptions(OperatorId id);

// A concept relaxation (rho_*) or retraction (kappa_*) with its parameters.
// For the exception-based operators one application adds `degree`
// exceptions; eligibility is decided against the reasoner passed to apply.
//
// Beyond the plain definitions, apply() completes some operators so that
// iterating them terminates in Top / Bot:
//   rho_dalal, kappa_dalal, rho_union, kappa_cap: when the body is already
//     Top (relax) / Bot (retract) the innermost quantifier is removed;
//     when a Dalal step changes nothing the result is Top / Bot.
//   rho_q: with no universal quantifier left, performs a rho_dalal step.
//   rho_e: an empty (Bot) concept relaxes to Top.
// rho_q and kappa_q act on each disjunct / conjunct of a disjunction /
// conjunction of prefix concepts, which is what they produce themselves.
class ConceptOperator {
 public:
  // Throws InvalidArgument if an exception-based id gets an empty list.
  explicit ConceptOperator(OperatorId id, std::vector<Concept> exceptions = {},
                           std::size_t degree = 1);

  OperatorId id() const { return id_; }
  Direction direction() const { return direction_of(id_); }
  const std::vector<Concept>& exceptions() const { return exceptions_; }
  std::size_t degree() const { return degree_; }

  Concept apply(const Concept& c, Reasoner& eligibility) const;
  // k-fold iteration; k = 0 is the identity.
  Concept iterate(const Concept& c, std::size_t k, Reasoner& eligibility) const;

  // Convenience overloads using the empty KB for eligibility.
  Concept apply(const Concept& c) const;
  Concept iterate(const Concept& c, std::size_t k) const;

  bool operator==(const ConceptOperator&) const = default;

 private:
  OperatorId id_;
  std::vector<Concept> exceptions_;
  std::size_t degree_;
};

Concept trivial_op(const Concept& c, Direction dir);

enum class TreeVariant { Depth, Leaves };
// Throws UnsupportedShape for Bot or non-EL input.
Concept relax_tree(const Concept& c, TreeVariant variant);

// One step of the ELU relaxation over the grouped normal form; disjuncts
// subsumed by siblings are removed from the result.
Concept relax_elu(const Concept& c);

// C | E_1 | ... | E_k with the first k exceptions E (in list order) for
// which E & C [= Bot holds w.r.t. eligibility.
Concept relax_exceptions(const Concept& c, const std::vector<Concept>& exceptions, std::size_t k,
                         Reasoner& eligibility);
// C & not E_1 & ... & not E_n with the first n exceptions E [= C.
Concept retract_exceptions(const Concept& c, const std::vector<Concept>& exceptions,
                           std::size_t n, Reasoner& eligibility);

// Drop-one-literal step on the CNF (retract) / DNF (relax) of the body of
// a prefix concept, prefix kept.
Concept dalal(const Concept& c, Direction dir);

// Exception operators applied to the body of a prefix concept.
Concept prefix_exceptions(const Concept& c, const std::vector<Concept>& exceptions,
                          std::size_t n, Direction dir, Reasoner& eligibility);

// Relax: disjunction of all single forall->exists swaps. Retract:
// conjunction of all single exists->forall swaps. Unchanged if nothing can
// be swapped.
Concept quantifier_swap(const Concept& c, Direction dir);

enum class FormulaRelaxMode { RelaxRHS, RetractLHS };

std::string_view mode_name(FormulaRelaxMode m);  // "rhs" / "lhs"
std::optional<FormulaRelaxMode> parse_mode(std::string_view text);

// k-fold formula relaxation. RelaxRHS relaxes the right-hand side of a GCI
// or the concept of an assertion; RetractLHS retracts the left-hand side of
// a GCI and turns a concept assertion into `a : Top`. Role facts become
// universal-role facts for k >= 1.
// Throws InvalidArgument if the operator direction does not fit the mode.
Sentence relax_formula(const Sentence& s, FormulaRelaxMode mode, const ConceptOperator& op,
                       std::size_t k, Reasoner& eligibility);
Sentence relax_formula(const Sentence& s, FormulaRelaxMode mode, const ConceptOperator& op,
                       std::size_t k);

// Per-sentence relaxation counts, indexed like the relaxed theory.
struct DegreeMap {
  std::vector<std::size_t> k;

  DegreeMap() = default;
  explicit DegreeMap(std::vector<std::size_t> values) : k(std::move(values)) {}
  static DegreeMap zeros(std::size_t n) { return DegreeMap(std::vector<std::size_t>(n, 0)); }

  std::size_t total() const;
  std::size_t size() const { return k.size(); }
  bool operator==(const DegreeMap&) const = default;
  auto operator<=>(const DegreeMap&) const = default;
};

// Each sentence replaced by its k-fold relaxation, order kept, duplicates
// merged, dialect raised to cover the output. Throws InvalidArgument if K
// does not match the size of kb.
KnowledgeBase relax_theory(const KnowledgeBase& kb, const DegreeMap& K, FormulaRelaxMode mode,
                           const ConceptOperator& op, Reasoner& eligibility);
KnowledgeBase relax_theory(const KnowledgeBase& kb, const DegreeMap& K, FormulaRelaxMode mode,
                           const ConceptOperator& op);

}  // namespace relaxrev

#endif  // RELAXREV_RELAX_HPP_
