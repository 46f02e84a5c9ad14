#ifndef RELAXREV_REASONER_HPP_
#define RELAXREV_REASONER_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relaxrev/concept.hpp"

namespace relaxrev {

struct ReasonerOptions {
  // Completion-graph nodes created per query, summed over all branches.
  std::size_t node_budget = 1'000'000;

  // Default options with RELAXREV_BUDGET (if set to a positive integer)
  // replacing node_budget.
  static ReasonerOptions from_environment();
};

struct EntailmentVerdict {
  bool holds = false;
  // Description of a complete clash-free completion graph refuting the
  // sentence; only filled when requested and holds is false.
  std::optional<std::string> witness;
};

// ALC tableau over one fixed knowledge base. Interpretation domains are
// nonempty. Role facts over the universal role hold in every interpretation
// and are ignored.
//
// Verdicts are memoized per instance, so a Reasoner must not be shared
// between threads without external locking.
class Reasoner {
 public:
  explicit Reasoner(const KnowledgeBase& kb, ReasonerOptions options = {});
  ~Reasoner();
  Reasoner(Reasoner&&) noexcept;
  Reasoner& operator=(Reasoner&&) noexcept;

  bool is_satisfiable();
  // Some model of the KB has an element in c.
  bool is_satisfiable(const Concept& c);
  bool subsumes(const Concept& sub, const Concept& sup);
  bool equivalent(const Concept& a, const Concept& b);
  bool entails(const Sentence& s);
  EntailmentVerdict entails_verbose(const Sentence& s, bool want_witness);

  bool is_coherent();
  // Concept names of the signature (declaration order) that are empty in
  // every model.
  std::vector<std::string> unsat_named_concepts();

  // Nodes created by all queries so far.
  std::size_t nodes_created() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool is_satisfiable(const KnowledgeBase& kb);
bool entails(const KnowledgeBase& kb, const Sentence& s);
bool subsumes(const KnowledgeBase& kb, const Concept& sub, const Concept& sup);
bool equivalent(const KnowledgeBase& kb, const Concept& a, const Concept& b);

// Cn(kb) differs from the set of all sentences. With nonempty domains and
// Top [= Bot in every dialect this is exactly satisfiability: a model
// refutes Top [= Bot, and without models every sentence follows.
bool is_consistent_generalized(const KnowledgeBase& kb);

bool is_coherent(const KnowledgeBase& kb);
std::vector<std::string> unsat_named_concepts(const KnowledgeBase& kb);

// Concept-level reasoning with the empty TBox. Uses a thread-local memo.
bool subsumes_empty(const Concept& sub, const Concept& sup);
bool equivalent_empty(const Concept& a, const Concept& b);

}  // namespace relaxrev

#endif  // RELAXREV_REASONER_HPP_
