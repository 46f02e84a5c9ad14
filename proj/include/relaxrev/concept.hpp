#ifndef RELAXREV_CONCEPT_HPP_
#define RELAXREV_CONCEPT_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace relaxrev {

enum class ConceptKind : std::uint8_t { Top, Bot, Atom, Not, And, Or, Exists, Forall };

// Immutable concept description. Nodes are shared; copies are cheap.
//
// Construction goes through the smart constructors below, which keep
// And/Or flat, sorted, duplicate-free and with at least two operands:
//   conj({})  == top()      disj({})  == bot()
//   conj({C}) == C          disj({C}) == C
//   conj(.., Bot, ..) == bot()   disj(.., Top, ..) == top()
//   conj(.., X, not X, ..) == bot()   disj(.., X, not X, ..) == top()
// Structural equality therefore approximates commutativity and
// associativity of the boolean connectives.
class Concept {
 public:
  Concept();  // Top

  static Concept top();
  static Concept bot();
  static Concept atom(std::string name);
  static Concept negate(Concept c);
  static Concept conj(std::vector<Concept> operands);
  static Concept disj(std::vector<Concept> operands);
  static Concept exists(std::string role, Concept filler);
  static Concept forall(std::string role, Concept filler);

  ConceptKind kind() const;
  bool is(ConceptKind k) const { return kind() == k; }
  bool is_top() const { return is(ConceptKind::Top); }
  bool is_bot() const { return is(ConceptKind::Bot); }
  bool is_quantifier() const {
    return is(ConceptKind::Exists) || is(ConceptKind::Forall);
  }

  // Concept name for Atom, role name for Exists/Forall, empty otherwise.
  const std::string& name() const;
  // Children of And/Or; the single child of Not/Exists/Forall.
  const std::vector<Concept>& operands() const;
  const Concept& filler() const;

  // Number of constructor nodes in the syntax tree.
  std::size_t size() const;
  // Role depth: maximal quantifier nesting.
  std::size_t depth() const;
  std::size_t hash() const;

  bool operator==(const Concept& other) const;
  std::strong_ordering operator<=>(const Concept& other) const;

 private:
  struct Node;
  explicit Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Concept make(ConceptKind kind, std::string name, std::vector<Concept> children);

  std::shared_ptr<const Node> node_;
};

struct ConceptHash {
  std::size_t operator()(const Concept& c) const { return c.hash(); }
};

// Syntactic fragments, ordered by inclusion.
enum class Dialect : std::uint8_t { EL = 0, ELU = 1, ALC = 2 };

std::string_view dialect_name(Dialect d);
std::optional<Dialect> parse_dialect(std::string_view text);
// Smallest dialect whose constructors cover c.
Dialect minimal_dialect(const Concept& c);
inline bool dialect_allows(Dialect d, const Concept& c) { return minimal_dialect(c) <= d; }

// Names of the three sorts, each in declaration order.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<std::string> concepts, std::vector<std::string> roles,
            std::vector<std::string> individuals);

  const std::vector<std::string>& concept_names() const { return concepts_; }
  const std::vector<std::string>& role_names() const { return roles_; }
  const std::vector<std::string>& individuals() const { return individuals_; }

  bool has_concept(std::string_view n) const;
  bool has_role(std::string_view n) const;
  bool has_individual(std::string_view n) const;

  // Appends unless already present. Throws InvalidArgument if the name is
  // already used by another sort.
  void add_concept(const std::string& n);
  void add_role(const std::string& n);
  void add_individual(const std::string& n);

  // Declaration-order union: names of *this first, then new names of other.
  Signature merged(const Signature& other) const;

  bool empty() const { return concepts_.empty() && roles_.empty() && individuals_.empty(); }
  bool operator==(const Signature&) const = default;

 private:
  std::vector<std::string> concepts_;
  std::vector<std::string> roles_;
  std::vector<std::string> individuals_;
};

enum class SentenceKind : std::uint8_t { Gci, InstanceOf, RoleFact };

// C [= D, a : C, or (a, b) : r. A RoleFact whose role is universal stands
// for the role interpreted as the full domain square; it only arises from
// formula relaxation.
class Sentence {
 public:
  static Sentence gci(Concept lhs, Concept rhs);
  static Sentence instance_of(std::string individual, Concept c);
  static Sentence role_fact(std::string subject, std::string object, std::string role);
  static Sentence universal_role_fact(std::string subject, std::string object);

  SentenceKind kind() const { return kind_; }
  // GCI sides.
  const Concept& lhs() const { return lhs_; }
  const Concept& rhs() const { return rhs_; }
  // Concept of an InstanceOf assertion.
  const Concept& asserted() const { return rhs_; }
  const std::string& individual() const { return a_; }
  const std::string& object() const { return b_; }
  const std::string& role() const { return role_; }
  bool universal_role() const { return universal_; }

  Dialect minimal_dialect() const;
  std::size_t size() const;

  bool operator==(const Sentence&) const = default;
  std::strong_ordering operator<=>(const Sentence& other) const;

 private:
  SentenceKind kind_ = SentenceKind::Gci;
  Concept lhs_;
  Concept rhs_;
  std::string a_;
  std::string b_;
  std::string role_;
  bool universal_ = false;
};

// Ordered, duplicate-free list of sentences with a signature and dialect
// tag. Indices are stable and identify sentences in degree maps and
// partitions.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(Dialect dialect, Signature sig = {})
      : dialect_(dialect), signature_(std::move(sig)) {}

  Dialect dialect() const { return dialect_; }
  void set_dialect(Dialect d) { dialect_ = d; }
  const Signature& signature() const { return signature_; }
  Signature& signature() { return signature_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }
  std::size_t size() const { return sentences_.size(); }
  bool empty() const { return sentences_.empty(); }
  const Sentence& operator[](std::size_t i) const { return sentences_[i]; }

  bool contains(const Sentence& s) const;
  // Appends s unless an equal sentence is present; names are added to the
  // signature. Returns whether it was appended. Does not check the dialect.
  bool add(const Sentence& s);

  // Throws DialectViolation if some sentence needs a larger dialect.
  void validate() const;
  // Smallest dialect covering every sentence.
  Dialect minimal_dialect() const;

  // Sentences at the given indices, same signature and dialect.
  KnowledgeBase subset(const std::vector<std::size_t>& indices) const;
  // *this followed by the sentences of other not already present;
  // signatures merged, dialect = max of both.
  KnowledgeBase united(const KnowledgeBase& other) const;

  bool operator==(const KnowledgeBase&) const = default;

 private:
  Dialect dialect_ = Dialect::ALC;
  Signature signature_;
  std::vector<Sentence> sentences_;
};

// Adds every name occurring in c / s to sig (concept names, role names,
// individuals) in first-occurrence order.
void collect_names(const Concept& c, Signature& sig);
void collect_names(const Sentence& s, Signature& sig);

}  // namespace relaxrev

template <>
struct std::hash<relaxrev::Concept> {
  std::size_t operator()(const relaxrev::Concept& c) const { return c.hash(); }
};

#endif  // RELAXREV_CONCEPT_HPP_
