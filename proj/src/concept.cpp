#include "relaxrev/concept.hpp"

#include <algorithm>
#include <utility>

#include "relaxrev/error.hpp"

namespace relaxrev {

struct Concept::Node {
  ConceptKind kind;
  std::string name;
  std::vector<Concept> children;
  std::size_t hash;
  std::size_t size;
  std::size_t depth;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Concept Concept::make(ConceptKind kind, std::string name, std::vector<Concept> children) {
  std::size_t h = mix(static_cast<std::size_t>(kind) + 1, std::hash<std::string>{}(name));
  std::size_t size = 1;
  std::size_t depth = 0;
  for (const Concept& c : children) {
    h = mix(h, c.hash());
    size += c.size();
    depth = std::max(depth, c.depth());
  }
  if (kind == ConceptKind::Exists || kind == ConceptKind::Forall) ++depth;
  return Concept(std::make_shared<const Node>(
      Node{kind, std::move(name), std::move(children), h, size, depth}));
}

Concept::Concept() : Concept(top()) {}

Concept Concept::top() {
  static const Concept t = make(ConceptKind::Top, "", {});
  return t;
}

Concept Concept::bot() {
  static const Concept b = make(ConceptKind::Bot, "", {});
  return b;
}

Concept Concept::atom(std::string name) { return make(ConceptKind::Atom, std::move(name), {}); }

Concept Concept::negate(Concept c) { return make(ConceptKind::Not, "", {std::move(c)}); }

Concept Concept::exists(std::string role, Concept filler) {
  return make(ConceptKind::Exists, std::move(role), {std::move(filler)});
}

Concept Concept::forall(std::string role, Concept filler) {
  return make(ConceptKind::Forall, std::move(role), {std::move(filler)});
}

namespace {

// Shared body of conj/disj. `unit` is the neutral element, `zero` the
// absorbing one.
std::vector<Concept> normalize_operands(std::vector<Concept> operands, ConceptKind self,
                                        ConceptKind unit, ConceptKind zero, bool& absorbed) {
  absorbed = false;
  std::vector<Concept> flat;
  flat.reserve(operands.size());
  for (Concept& c : operands) {
    if (c.is(self)) {
      for (const Concept& g : c.operands()) flat.push_back(g);
    } else if (c.is(zero)) {
      absorbed = true;
      return {};
    } else if (!c.is(unit)) {
      flat.push_back(std::move(c));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  for (const Concept& c : flat) {
    if (c.is(ConceptKind::Not) && std::binary_search(flat.begin(), flat.end(), c.filler())) {
      absorbed = true;
      return {};
    }
  }
  return flat;
}

}  // namespace

Concept Concept::conj(std::vector<Concept> operands) {
  bool absorbed = false;
  auto flat = normalize_operands(std::move(operands), ConceptKind::And, ConceptKind::Top,
                                 ConceptKind::Bot, absorbed);
  if (absorbed) return bot();
  if (flat.empty()) return top();
  if (flat.size() == 1) return flat.front();
  return make(ConceptKind::And, "", std::move(flat));
}

Concept Concept::disj(std::vector<Concept> operands) {
  bool absorbed = false;
  auto flat = normalize_operands(std::move(operands), ConceptKind::Or, ConceptKind::Bot,
                                 ConceptKind::Top, absorbed);
  if (absorbed) return top();
  if (flat.empty()) return bot();
  if (flat.size() == 1) return flat.front();
  return make(ConceptKind::Or, "", std::move(flat));
}

ConceptKind Concept::kind() const { return node_->kind; }
const std::string& Concept::name() const { return node_->name; }
const std::vector<Concept>& Concept::operands() const { return node_->children; }

const Concept& Concept::filler() const {
  if (node_->children.empty()) throw InvalidArgument("concept has no filler");
  return node_->children.front();
}

std::size_t Concept::size() const { return node_->size; }
std::size_t Concept::depth() const { return node_->depth; }
std::size_t Concept::hash() const { return node_->hash; }

bool Concept::operator==(const Concept& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  return (*this <=> other) == std::strong_ordering::equal;
}

std::strong_ordering Concept::operator<=>(const Concept& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  if (auto c = node_->kind <=> other.node_->kind; c != 0) return c;
  if (auto c = node_->name.compare(other.node_->name); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const auto& a = node_->children;
  const auto& b = other.node_->children;
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::string_view dialect_name(Dialect d) {
  switch (d) {
    case Dialect::EL: return "EL";
    case Dialect::ELU: return "ELU";
    case Dialect::ALC: return "ALC";
  }
  return "ALC";
}

std::optional<Dialect> parse_dialect(std::string_view text) {
  if (text == "EL") return Dialect::EL;
  if (text == "ELU") return Dialect::ELU;
  if (text == "ALC") return Dialect::ALC;
  return std::nullopt;
}

Dialect minimal_dialect(const Concept& c) {
  Dialect d = Dialect::EL;
  switch (c.kind()) {
    case ConceptKind::Not:
    case ConceptKind::Forall: return Dialect::ALC;
    case ConceptKind::Or: d = Dialect::ELU; break;
    default: break;
  }
  for (const Concept& g : c.operands()) {
    d = std::max(d, minimal_dialect(g));
    if (d == Dialect::ALC) break;
  }
  return d;
}

// --- Signature -------------------------------------------------------------

namespace {

bool has(const std::vector<std::string>& v, std::string_view n) {
  return std::find(v.begin(), v.end(), n) != v.end();
}

}  // namespace

Signature::Signature(std::vector<std::string> concepts, std::vector<std::string> roles,
                     std::vector<std::string> individuals) {
  for (auto& n : concepts) add_concept(n);
  for (auto& n : roles) add_role(n);
  for (auto& n : individuals) add_individual(n);
}

bool Signature::has_concept(std::string_view n) const { return has(concepts_, n); }
bool Signature::has_role(std::string_view n) const { return has(roles_, n); }
bool Signature::has_individual(std::string_view n) const { return has(individuals_, n); }

void Signature::add_concept(const std::string& n) {
  if (has_concept(n)) return;
  if (has_role(n) || has_individual(n)) {
    throw InvalidArgument("name '" + n + "' is already used as a role or individual");
  }
  concepts_.push_back(n);
}

void Signature::add_role(const std::string& n) {
  if (has_role(n)) return;
  if (has_concept(n) || has_individual(n)) {
    throw InvalidArgument("name '" + n + "' is already used as a concept or individual");
  }
  roles_.push_back(n);
}

void Signature::add_individual(const std::string& n) {
  if (has_individual(n)) return;
  if (has_concept(n) || has_role(n)) {
    throw InvalidArgument("name '" + n + "' is already used as a concept or role");
  }
  individuals_.push_back(n);
}

Signature Signature::merged(const Signature& other) const {
  Signature out = *this;
  for (const auto& n : other.concepts_) out.add_concept(n);
  for (const auto& n : other.roles_) out.add_role(n);
  for (const auto& n : other.individuals_) out.add_individual(n);
  return out;
}

// --- Sentence --------------------------------------------------------------

Sentence Sentence::gci(Concept lhs, Concept rhs) {
  Sentence s;
  s.kind_ = SentenceKind::Gci;
  s.lhs_ = std::move(lhs);
  s.rhs_ = std::move(rhs);
  return s;
}

Sentence Sentence::instance_of(std::string individual, Concept c) {
  Sentence s;
  s.kind_ = SentenceKind::InstanceOf;
  s.a_ = std::move(individual);
  s.rhs_ = std::move(c);
  return s;
}

Sentence Sentence::role_fact(std::string subject, std::string object, std::string role) {
  Sentence s;
  s.kind_ = SentenceKind::RoleFact;
  s.a_ = std::move(subject);
  s.b_ = std::move(object);
  s.role_ = std::move(role);
  return s;
}

Sentence Sentence::universal_role_fact(std::string subject, std::string object) {
  Sentence s;
  s.kind_ = SentenceKind::RoleFact;
  s.a_ = std::move(subject);
  s.b_ = std::move(object);
  s.universal_ = true;
  return s;
}

Dialect Sentence::minimal_dialect() const {
  switch (kind_) {
    case SentenceKind::Gci:
      return std::max(relaxrev::minimal_dialect(lhs_), relaxrev::minimal_dialect(rhs_));
    case SentenceKind::InstanceOf: return relaxrev::minimal_dialect(rhs_);
    case SentenceKind::RoleFact: return Dialect::EL;
  }
  return Dialect::ALC;
}

std::size_t Sentence::size() const {
  switch (kind_) {
    case SentenceKind::Gci: return lhs_.size() + rhs_.size();
    case SentenceKind::InstanceOf: return rhs_.size() + 1;
    case SentenceKind::RoleFact: return 3;
  }
  return 0;
}

std::strong_ordering Sentence::operator<=>(const Sentence& o) const {
  if (auto c = kind_ <=> o.kind_; c != 0) return c;
  if (auto c = lhs_ <=> o.lhs_; c != 0) return c;
  if (auto c = rhs_ <=> o.rhs_; c != 0) return c;
  if (auto c = a_ <=> o.a_; c != 0) return c;
  if (auto c = b_ <=> o.b_; c != 0) return c;
  if (auto c = universal_ <=> o.universal_; c != 0) return c;
  return role_ <=> o.role_;
}

// --- KnowledgeBase ---------------------------------------------------------

bool KnowledgeBase::contains(const Sentence& s) const {
  return std::find(sentences_.begin(), sentences_.end(), s) != sentences_.end();
}

bool KnowledgeBase::add(const Sentence& s) {
  collect_names(s, signature_);
  if (contains(s)) return false;
  sentences_.push_back(s);
  return true;
}

Dialect KnowledgeBase::minimal_dialect() const {
  Dialect d = Dialect::EL;
  for (const Sentence& s : sentences_) d = std::max(d, s.minimal_dialect());
  return d;
}

void KnowledgeBase::validate() const {
  for (std::size_t i = 0; i < sentences_.size(); ++i) {
    Dialect need = sentences_[i].minimal_dialect();
    if (need > dialect_) {
      throw DialectViolation("sentence " + std::to_string(i) + " needs " +
                             std::string(dialect_name(need)) + " but the dialect is " +
                             std::string(dialect_name(dialect_)));
    }
  }
}

KnowledgeBase KnowledgeBase::subset(const std::vector<std::size_t>& indices) const {
  KnowledgeBase out(dialect_, signature_);
  for (std::size_t i : indices) out.add(sentences_.at(i));
  return out;
}

KnowledgeBase KnowledgeBase::united(const KnowledgeBase& other) const {
  KnowledgeBase out(std::max(dialect_, other.dialect_), signature_.merged(other.signature_));
  for (const Sentence& s : sentences_) out.add(s);
  for (const Sentence& s : other.sentences_) out.add(s);
  return out;
}

void collect_names(const Concept& c, Signature& sig) {
  switch (c.kind()) {
    case ConceptKind::Atom: sig.add_concept(c.name()); return;
    case ConceptKind::Exists:
    case ConceptKind::Forall: sig.add_role(c.name()); break;
    default: break;
  }
  for (const Concept& g : c.operands()) collect_names(g, sig);
}

void collect_names(const Sentence& s, Signature& sig) {
  switch (s.kind()) {
    case SentenceKind::Gci:
      collect_names(s.lhs(), sig);
      collect_names(s.rhs(), sig);
      break;
    case SentenceKind::InstanceOf:
      sig.add_individual(s.individual());
      collect_names(s.asserted(), sig);
      break;
    case SentenceKind::RoleFact:
      sig.add_individual(s.individual());
      sig.add_individual(s.object());
      if (!s.universal_role()) sig.add_role(s.role());
      break;
  }
}

}  // namespace relaxrev
