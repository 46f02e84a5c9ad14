#ifndef RELAXREV_REVISE_HPP_
#define RELAXREV_REVISE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relaxrev/concept.hpp"
#include "relaxrev/reasoner.hpp"
#include "relaxrev/relax.hpp"

namespace relaxrev {

// What counts as a conflict: Unsat = no model; Incoherence = no model or
// some concept name of the signature is unsatisfiable.
enum class ConflictKind { Unsat, Incoherence };

std::string_view conflict_name(ConflictKind k);  // "unsat" / "incoherence"
std::optional<ConflictKind> parse_conflict(std::string_view text);

// Incoherence is judged over the names of `sig` (kb's own names if empty).
bool has_conflict(const KnowledgeBase& kb, ConflictKind kind, const ReasonerOptions& options = {},
                  const Signature& sig = {});

// Split of the old belief T1 by sentence index. Both lists are sorted.
struct Partition {
  std::vector<std::size_t> conflicting;
  std::vector<std::size_t> retained;

  bool operator==(const Partition&) const = default;
};

enum class Eligibility { NewBelief, Union };
enum class TieBreak { ModifiedSizeThenLex };

struct RevisionConfig {
  ConceptOperator op{OperatorId::KappaBot};
  FormulaRelaxMode mode = FormulaRelaxMode::RetractLHS;
  ConflictKind conflict = ConflictKind::Incoherence;
  std::size_t max_total_degree = 8;
  bool enumerate_all_minima = true;
  TieBreak tie_break = TieBreak::ModifiedSizeThenLex;
  // KB against which exception side conditions are decided: the new
  // belief T2, or T1 and T2 together.
  Eligibility eligibility = Eligibility::NewBelief;
  // Largest T1 for which retained sets are enumerated.
  std::size_t partition_budget = 16;
  ReasonerOptions reasoner = ReasonerOptions::from_environment();
};

struct TraceEntry {
  enum class Verdict { Passed, Conflict, NotApplicable };
  std::size_t partition = 0;  // index into RevisionResult::partitions
  DegreeMap degrees;          // over the partition's conflicting sentences
  Verdict verdict = Verdict::Conflict;
  std::string note;  // reason for NotApplicable
};

struct Alternative {
  std::size_t partition = 0;
  DegreeMap degrees;
};

struct RevisionResult {
  std::vector<Partition> partitions;  // canonical order
  std::size_t chosen = 0;
  Partition partition;
  DegreeMap degrees;  // over partition.conflicting
  KnowledgeBase revised;
  std::size_t total_cost = 0;
  // Other (partition, K) pairs of the same total cost.
  std::vector<Alternative> alternatives;
  std::vector<TraceEntry> trace;

  // degrees spread over all T1 indices (zero for retained sentences).
  std::vector<std::size_t> full_degrees(std::size_t t1_size) const;
};

// Inclusion-maximal retained sets, largest first, ties by the conflicting
// index list in lexicographic order. Throws ResourceExceeded if T1 has more
// than `budget` sentences.
std::vector<Partition> find_partitions(const KnowledgeBase& t1, const KnowledgeBase& t2,
                                       ConflictKind conflict, const ReasonerOptions& options = {},
                                       std::size_t budget = 16);

// Iterative deepening over the total degree. Returns the passing degree
// maps of the smallest passing total (all of them, or only the first if
// enumerate_all_minima is off). Throws BudgetExceeded when nothing passes
// up to config.max_total_degree. `trace`, if given, receives every
// candidate tried; its partition field is left 0.
std::vector<DegreeMap> minimal_degree_search(const KnowledgeBase& conflicting,
                                             const KnowledgeBase& retained,
                                             const KnowledgeBase& t2, const RevisionConfig& config,
                                             std::vector<TraceEntry>* trace = nullptr);

// Throws ConflictingInput if T2 alone has a conflict, BudgetExceeded if no
// partition can be repaired within max_total_degree.
RevisionResult revise(const KnowledgeBase& t1, const KnowledgeBase& t2,
                      const RevisionConfig& config);

// Assembles relax(T1 at conflicting) + retained + T2 in T1 order, the way
// revise() does.
KnowledgeBase assemble_revision(const KnowledgeBase& t1, const KnowledgeBase& t2,
                                const Partition& p, const DegreeMap& degrees,
                                const RevisionConfig& config);

// For every sentence of T1 missing from the result, X = retained plus the
// T1 sentences kept in the result must be conflict-free with T2, and must
// stop being so once that sentence is added back.
bool check_relevance(const KnowledgeBase& t1, const KnowledgeBase& t2,
                     const RevisionResult& result, ConflictKind conflict,
                     const ReasonerOptions& options = {});

// Human-readable report, and line-oriented key=value records.
std::string render_report(const KnowledgeBase& t1, const RevisionResult& result,
                          const RevisionConfig& config);
std::string render_porcelain(const KnowledgeBase& t1, const RevisionResult& result,
                             const RevisionConfig& config);

}  // namespace relaxrev

#endif  // RELAXREV_REVISE_HPP_
