#ifndef RELAXREV_ORACLE_HPP_
#define RELAXREV_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relaxrev/concept.hpp"
#include "relaxrev/relax.hpp"
#include "relaxrev/revise.hpp"

namespace relaxrev {

inline constexpr std::size_t kDefaultBitCap = 24;

// Explicit interpretation over the domain {0, ..., domain_size - 1}.
// Extensions are bit masks; vectors are indexed like the signature's name
// lists. The universal role is implicitly the full square.
struct FiniteInterpretation {
  std::shared_ptr<const Signature> signature;
  std::size_t domain_size = 1;
  std::vector<std::uint64_t> concept_ext;
  // role_ext[r][x] = successors of x.
  std::vector<std::vector<std::uint64_t>> role_ext;
  std::vector<std::size_t> ind_map;

  std::uint64_t full() const {
    return domain_size >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << domain_size) - 1;
  }
};

// Every interpretation of a signature with domain sizes 1..max_domain,
// numbered consecutively (smaller domains first). Throws ResourceExceeded
// if n*|N_C| + n*n*|N_R| exceeds bit_cap for some n, or if the total
// number of interpretations exceeds 2^(bit_cap + 2).
class InterpretationSpace {
 public:
  InterpretationSpace(Signature sig, std::size_t max_domain, std::size_t bit_cap = kDefaultBitCap);

  const Signature& signature() const { return *sig_; }
  std::size_t max_domain() const { return max_domain_; }
  std::size_t size() const { return offsets_.back(); }
  // Ids of the interpretations with the given domain size: [first, last).
  std::pair<std::size_t, std::size_t> range(std::size_t domain_size) const;

  FiniteInterpretation at(std::size_t id) const;
  void decode(std::size_t id, FiniteInterpretation& out) const;
  std::size_t domain_of(std::size_t id) const;

 private:
  std::shared_ptr<const Signature> sig_;
  std::size_t max_domain_;
  std::vector<std::size_t> offsets_;  // offsets_[n-1] = first id of size n
};

// All interpretations with exactly n elements, in id order.
std::vector<FiniteInterpretation> enumerate_interpretations(const Signature& sig, std::size_t n,
                                                            std::size_t bit_cap = kDefaultBitCap);

// Throws InvalidArgument for names outside I's signature.
bool satisfies(const FiniteInterpretation& I, const Sentence& s);
bool satisfies(const FiniteInterpretation& I, const KnowledgeBase& kb);
std::uint64_t extension(const FiniteInterpretation& I, const Concept& c);

// "[n=2 A=1 r=2,0 a->1]": extensions as masks, role successors per element.
std::string describe(const FiniteInterpretation& I);

// A KB compiled against a signature for fast repeated evaluation.
class CompiledKb {
 public:
  CompiledKb(const KnowledgeBase& kb, const Signature& sig);
  ~CompiledKb();
  CompiledKb(CompiledKb&&) noexcept;
  CompiledKb& operator=(CompiledKb&&) noexcept;

  bool holds(const FiniteInterpretation& I) const;
  std::size_t size() const;
  bool holds(const FiniteInterpretation& I, std::size_t sentence) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Membership flags indexed by interpretation id.
using ModelSet = std::vector<bool>;

ModelSet model_set(const KnowledgeBase& kb, const InterpretationSpace& space);
// Over kb's own signature, domain sizes 1..n.
ModelSet model_set(const KnowledgeBase& kb, std::size_t n);
std::size_t count(const ModelSet& m);
bool subset_of(const ModelSet& a, const ModelSet& b);

struct RankTable {
  // nullopt: not reached within max_sum.
  std::vector<std::optional<std::size_t>> rank;
};

struct RankSpec {
  FormulaRelaxMode mode = FormulaRelaxMode::RelaxRHS;
  ConceptOperator op{OperatorId::RhoTop};
  std::size_t max_sum = 4;
  // KB deciding exception side conditions (empty by default).
  KnowledgeBase eligibility;
};

// Smallest total of a degree map whose relaxation of kb holds in I. The
// relaxed theory is a union over sentences, so the minimum is the sum of
// per-sentence minima.
std::optional<std::size_t> rank(const FiniteInterpretation& I, const KnowledgeBase& kb,
                                const RankSpec& spec);
RankTable rank_table(const KnowledgeBase& kb, const InterpretationSpace& space,
                     const RankSpec& spec);

enum class Status { Holds, Fails, NotDecidable };
std::string_view status_name(Status s);  // HOLDS / FAILS / UNDECIDED

struct Verdict {
  std::string name;   // "G1", "FA1", ...
  Status status = Status::Holds;
  std::string scope;  // "exact" or "domain<=n"
  std::string evidence;
};

struct FaReport {
  std::vector<Verdict> verdicts;  // FA1, FA2, FA3
  std::size_t variants_checked = 0;
  std::size_t unreached = 0;
  bool all_hold() const;
  std::string render() const;
};

// Variants of kb with the same models: kb plus sentences it entails,
// generated from the seed and confirmed by the reasoner.
std::vector<KnowledgeBase> equivalent_variants(const KnowledgeBase& kb, std::uint64_t seed,
                                               std::size_t how_many = 3);

// Conditions 1-3 of a faithful assignment for the rank-induced pre-order.
// Condition 3 compares kb with each of `variants` (or generated ones if
// empty) on interpretations reached under both.
FaReport check_faithful_assignment(const KnowledgeBase& kb, const RankSpec& spec, std::size_t n,
                                   std::vector<KnowledgeBase> variants = {},
                                   std::uint64_t seed = 1);

using ReviseFn = std::function<KnowledgeBase(const KnowledgeBase&, const KnowledgeBase&)>;

struct PostulateReport {
  std::vector<Verdict> verdicts;  // G1..G6, Relevance
  std::uint64_t seed = 0;
  std::size_t max_domain = 0;
  // Counterexample material for failures.
  KnowledgeBase t, t_prime, t_second;
  bool all_hold() const;
  std::string render() const;
};

// Checks (G1)-(G6) and Relevance for T and T'. T'' (for G5, G6) and the
// equivalent variants (for G4) are drawn from the seed unless given. The
// revision operator defaults to revise() with `config`; conflict must be
// Unsat. Model-set postulates are evaluated at domain sizes 1..n.
struct PostulateOptions {
  std::size_t max_domain = 2;
  std::uint64_t seed = 1;
  std::optional<KnowledgeBase> t_second;
  ReviseFn revise_fn;
};
PostulateReport check_postulates(const KnowledgeBase& t, const KnowledgeBase& t_prime,
                                 const RevisionConfig& config, const PostulateOptions& options);

struct RepresentationReport {
  Status status = Status::Holds;
  std::size_t result_models = 0;
  std::size_t minimal_models = 0;
  std::optional<std::size_t> minimal_rank;
  std::size_t m_star = 0;  // interpretations satisfying Top [= Bot
  std::string evidence;    // symmetric difference with ranks
};

// Mod(T o T') against the rank-minimal models of T' (ranks w.r.t. T).
RepresentationReport check_representation(const KnowledgeBase& t, const KnowledgeBase& t_prime,
                                          const RevisionConfig& config, std::size_t n,
                                          std::size_t max_sum);

}  // namespace relaxrev

#endif  // RELAXREV_ORACLE_HPP_
