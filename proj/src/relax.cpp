#include "relaxrev/relax.hpp"

#include <algorithm>
#include <numeric>

#include "relaxrev/error.hpp"
#include "relaxrev/normal_form.hpp"
#include "relaxrev/syntax.hpp"

namespace relaxrev {

namespace {

struct OperatorInfo {
  OperatorId id;
  std::string_view name;
  Direction dir;
  bool exceptions;
};

constexpr OperatorInfo kOperatorTable[] = {
    {OperatorId::RhoTop, "rho_top", Direction::Relax, false},
    {OperatorId::RhoDepth, "rho_depth", Direction::Relax, false},
    {OperatorId::RhoLeaves, "rho_leaves", Direction::Relax, false},
    {OperatorId::RhoE, "rho_e", Direction::Relax, false},
    {OperatorId::RhoExceptions, "rho_exceptions", Direction::Relax, true},
    {OperatorId::RhoDalal, "rho_dalal", Direction::Relax, false},
    {OperatorId::RhoUnion, "rho_union", Direction::Relax, true},
    {OperatorId::RhoQ, "rho_q", Direction::Relax, false},
    {OperatorId::KappaBot, "kappa_bot", Direction::Retract, false},
    {OperatorId::KappaExceptions, "kappa_exceptions", Direction::Retract, true},
    {OperatorId::KappaDalal, "kappa_dalal", Direction::Retract, false},
    {OperatorId::KappaCap, "kappa_cap", Direction::Retract, true},
    {OperatorId::KappaQ, "kappa_q", Direction::Retract, false},
};

const OperatorInfo& info(OperatorId id) {
  for (const auto& i : kOperatorTable)
    if (i.id == id) return i;
  throw InvalidArgument("unknown operator");
}

Concept target(Direction dir) { return dir == Direction::Relax ? Concept::top() : Concept::bot(); }

Concept drop_one(const std::vector<Concept>& lits, Direction dir) {
  // Relax: a term l_1 & ... & l_m becomes OR_j (AND_{i != j} l_i).
  // Retract: a clause l_1 | ... | l_m becomes AND_j (OR_{i != j} l_i).
  std::vector<Concept> outer;
  for (std::size_t j = 0; j < lits.size(); ++j) {
    std::vector<Concept> rest;
    for (std::size_t i = 0; i < lits.size(); ++i)
      if (i != j) rest.push_back(lits[i]);
    outer.push_back(dir == Direction::Relax ? Concept::conj(std::move(rest))
                                            : Concept::disj(std::move(rest)));
  }
  return dir == Direction::Relax ? Concept::disj(std::move(outer)) : Concept::conj(std::move(outer));
}

Concept dalal_body(const Concept& body, Direction dir) {
  std::vector<Concept> parts;
  if (dir == Direction::Relax) {
    auto terms = dnf_terms(body);
    if (terms.empty()) return Concept::bot();
    for (const auto& t : terms) parts.push_back(t.empty() ? Concept::top() : drop_one(t, dir));
    return Concept::disj(std::move(parts));
  }
  auto clauses = cnf_clauses(body);
  if (clauses.empty()) return Concept::top();
  for (const auto& cl : clauses) parts.push_back(cl.empty() ? Concept::bot() : drop_one(cl, dir));
  return Concept::conj(std::move(parts));
}

// Shared step of the four operators that rewrite the body of a prefix
// concept. Returns nullopt when the body is not yet the target, leaving the
// body rewrite to the caller.
std::optional<Concept> pop_if_done(const PrefixForm& pf, Direction dir) {
  Concept t = target(dir);
  if (!equivalent_empty(pf.body, t)) return std::nullopt;
  if (pf.prefix.empty()) return t;
  PrefixForm shorter = pf;
  shorter.prefix.pop_back();
  return shorter.wrap(t);
}

Concept dalal_step(const Concept& c, Direction dir) {
  PrefixForm pf = to_prefix_form(c);
  if (auto popped = pop_if_done(pf, dir)) return *popped;
  Concept next = pf.wrap(dalal_body(pf.body, dir));
  if (next == c) return target(dir);
  return next;
}

bool is_prefix_concept(const Concept& c) {
  Concept cur = c;
  while (cur.is_quantifier()) cur = cur.filler();
  return is_quantifier_free(cur);
}

std::vector<std::size_t> eligible(const Concept& c, const std::vector<Concept>& exceptions,
                                  std::size_t k, Direction dir, Reasoner& r) {
  std::vector<std::size_t> picked;
  if (k == 0) return picked;
  for (std::size_t i = 0; i < exceptions.size() && picked.size() < k; ++i) {
    const Concept& e = exceptions[i];
    bool ok = dir == Direction::Relax ? r.subsumes(Concept::conj({e, c}), Concept::bot())
                                      : r.subsumes(e, c);
    if (ok) picked.push_back(i);
  }
  if (picked.size() < k) {
    throw NotEnoughExceptions("only " + std::to_string(picked.size()) + " of " +
                              std::to_string(k) + " exceptions eligible for " + render(c));
  }
  return picked;
}

Concept prune_disjuncts(const Concept& c);

Concept relax_group(const std::string& role, const std::vector<Concept>& fillers) {
  if (fillers.size() == 1 && fillers[0].is_top()) return Concept::top();
  std::vector<Concept> out;
  std::size_t m = fillers.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<Concept> parts;
    std::vector<Concept> chosen;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::size_t{1} << i))
        chosen.push_back(fillers[i]);
      else
        parts.push_back(Concept::exists(role, fillers[i]));
    }
    parts.push_back(Concept::exists(role, relax_elu(Concept::conj(std::move(chosen)))));
    out.push_back(Concept::conj(std::move(parts)));
  }
  return prune_disjuncts(Concept::disj(std::move(out)));
}

// rho_e on an EL concept in grouped normal form.
Concept relax_el_conjunction(const Concept& d) {
  // Elements of C_D: the names, and one group per role.
  std::vector<Concept> items;
  std::vector<Concept> relaxed;
  std::vector<Concept> parts = d.is(ConceptKind::And) ? d.operands() : std::vector<Concept>{d};
  std::vector<std::pair<std::string, std::vector<Concept>>> groups;
  for (const Concept& p : parts) {
    if (p.is_top()) continue;
    if (p.is(ConceptKind::Atom)) {
      items.push_back(p);
      relaxed.push_back(Concept::top());
    } else if (p.is(ConceptKind::Exists)) {
      auto it = std::find_if(groups.begin(), groups.end(),
                             [&](const auto& g) { return g.first == p.name(); });
      if (it == groups.end()) {
        groups.emplace_back(p.name(), std::vector<Concept>{});
        it = groups.end() - 1;
      }
      it->second.push_back(p.filler());
    } else {
      throw UnsupportedShape("not in grouped normal form: " + render(d));
    }
  }
  for (const auto& [role, fillers] : groups) {
    std::vector<Concept> g;
    for (const Concept& f : fillers) g.push_back(Concept::exists(role, f));
    items.push_back(Concept::conj(std::move(g)));
    relaxed.push_back(relax_group(role, fillers));
  }
  if (items.empty()) return Concept::top();
  std::vector<Concept> out;
  for (std::size_t g = 0; g < items.size(); ++g) {
    std::vector<Concept> conj{relaxed[g]};
    for (std::size_t h = 0; h < items.size(); ++h)
      if (h != g) conj.push_back(items[h]);
    out.push_back(Concept::conj(std::move(conj)));
  }
  return Concept::disj(std::move(out));
}

Concept prune_disjuncts(const Concept& c) {
  if (!c.is(ConceptKind::Or)) return c;
  const auto& ds = c.operands();
  std::vector<bool> dropped(ds.size(), false);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < ds.size() && !dropped[i]; ++j) {
      if (i == j || dropped[j]) continue;
      if (subsumes_empty(ds[i], ds[j]) && (j < i || !subsumes_empty(ds[j], ds[i])))
        dropped[i] = true;
    }
  }
  std::vector<Concept> kept;
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (!dropped[i]) kept.push_back(ds[i]);
  return Concept::disj(std::move(kept));
}

Reasoner& empty_eligibility() {
  thread_local Reasoner r{KnowledgeBase{}};
  return r;
}

}  // namespace

std::string_view operator_name(OperatorId id) { return info(id).name; }

std::optional<OperatorId> parse_operator_id(std::string_view name) {
  for (const auto& i : kOperatorTable)
    if (i.name == name) return i.id;
  return std::nullopt;
}

Direction direction_of(OperatorId id) { return info(id).dir; }
bool uses_exceptions(OperatorId id) { return info(id).exceptions; }

ConceptOperator::ConceptOperator(OperatorId id, std::vector<Concept> exceptions,
                                 std::size_t degree)
    : id_(id), exceptions_(std::move(exceptions)), degree_(degree) {
  if (uses_exceptions(id) && exceptions_.empty())
    throw InvalidArgument(std::string(operator_name(id)) + " needs a nonempty exception list");
}

Concept ConceptOperator::apply(const Concept& c, Reasoner& eligibility) const {
  Direction dir = direction();
  switch (id_) {
    case OperatorId::RhoTop:
    case OperatorId::KappaBot:
      return trivial_op(c, dir);
    case OperatorId::RhoDepth:
      return relax_tree(c, TreeVariant::Depth);
    case OperatorId::RhoLeaves:
      return relax_tree(c, TreeVariant::Leaves);
    case OperatorId::RhoE:
      if (to_grouped_normal_form(c).is_bot()) return Concept::top();
      return relax_elu(c);
    case OperatorId::RhoExceptions:
      return relax_exceptions(c, exceptions_, degree_, eligibility);
    case OperatorId::KappaExceptions:
      return retract_exceptions(c, exceptions_, degree_, eligibility);
    case OperatorId::RhoDalal:
    case OperatorId::KappaDalal:
      return dalal_step(c, dir);
    case OperatorId::RhoUnion:
    case OperatorId::KappaCap: {
      PrefixForm pf = to_prefix_form(c);
      if (auto popped = pop_if_done(pf, dir)) return *popped;
      return prefix_exceptions(c, exceptions_, degree_, dir, eligibility);
    }
    case OperatorId::RhoQ: {
      if (c.is(ConceptKind::Or) && !is_prefix_concept(c)) {
        std::vector<Concept> parts;
        for (const Concept& d : c.operands()) parts.push_back(apply(d, eligibility));
        return Concept::disj(std::move(parts));
      }
      Concept swapped = quantifier_swap(c, dir);
      if (swapped != c) return swapped;
      return dalal_step(c, dir);
    }
    case OperatorId::KappaQ: {
      if (c.is(ConceptKind::And) && !is_prefix_concept(c)) {
        std::vector<Concept> parts;
        for (const Concept& d : c.operands()) parts.push_back(apply(d, eligibility));
        return Concept::conj(std::move(parts));
      }
      return quantifier_swap(c, dir);
    }
  }
  return c;
}

Concept ConceptOperator::iterate(const Concept& c, std::size_t k, Reasoner& eligibility) const {
  Concept cur = c;
  for (std::size_t i = 0; i < k; ++i) cur = apply(cur, eligibility);
  return cur;
}

Concept ConceptOperator::apply(const Concept& c) const { return apply(c, empty_eligibility()); }

Concept ConceptOperator::iterate(const Concept& c, std::size_t k) const {
  return iterate(c, k, empty_eligibility());
}

Concept trivial_op(const Concept&, Direction dir) { return target(dir); }

Concept relax_tree(const Concept& c, TreeVariant variant) {
  DescriptionTree t = to_description_tree(c);
  std::vector<bool> keep(t.nodes.size(), true);
  if (variant == TreeVariant::Depth) {
    std::size_t h = t.height();
    if (h == 0) return Concept::top();
    for (std::size_t i = 0; i < t.nodes.size(); ++i) keep[i] = t.nodes[i].depth < h;
  } else {
    if (t.nodes.size() == 1) return Concept::top();
    for (std::size_t i = 1; i < t.nodes.size(); ++i) keep[i] = !t.is_leaf(i);
  }
  return from_description_tree(t.restricted(keep));
}

Concept relax_elu(const Concept& c) {
  Concept g = to_grouped_normal_form(c);
  std::vector<Concept> parts;
  if (g.is(ConceptKind::Or)) {
    for (const Concept& d : g.operands()) parts.push_back(relax_el_conjunction(d));
  } else if (!g.is_bot()) {
    parts.push_back(relax_el_conjunction(g));
  }
  return prune_disjuncts(Concept::disj(std::move(parts)));
}

Concept relax_exceptions(const Concept& c, const std::vector<Concept>& exceptions, std::size_t k,
                         Reasoner& eligibility) {
  std::vector<Concept> parts{c};
  for (std::size_t i : eligible(c, exceptions, k, Direction::Relax, eligibility))
    parts.push_back(exceptions[i]);
  return Concept::disj(std::move(parts));
}

Concept retract_exceptions(const Concept& c, const std::vector<Concept>& exceptions,
                           std::size_t n, Reasoner& eligibility) {
  std::vector<Concept> parts{c};
  for (std::size_t i : eligible(c, exceptions, n, Direction::Retract, eligibility))
    parts.push_back(Concept::negate(exceptions[i]));
  return Concept::conj(std::move(parts));
}

Concept dalal(const Concept& c, Direction dir) {
  PrefixForm pf = to_prefix_form(c);
  return pf.wrap(dalal_body(pf.body, dir));
}

Concept prefix_exceptions(const Concept& c, const std::vector<Concept>& exceptions,
                          std::size_t n, Direction dir, Reasoner& eligibility) {
  PrefixForm pf = to_prefix_form(c);
  Concept body = dir == Direction::Relax ? relax_exceptions(pf.body, exceptions, n, eligibility)
                                         : retract_exceptions(pf.body, exceptions, n, eligibility);
  return pf.wrap(body);
}

Concept quantifier_swap(const Concept& c, Direction dir) {
  PrefixForm pf = to_prefix_form(c);
  Quantifier from = dir == Direction::Relax ? Quantifier::Forall : Quantifier::Exists;
  Quantifier to = dir == Direction::Relax ? Quantifier::Exists : Quantifier::Forall;
  std::vector<Concept> variants;
  for (std::size_t j = 0; j < pf.prefix.size(); ++j) {
    if (pf.prefix[j].first != from) continue;
    PrefixForm v = pf;
    v.prefix[j].first = to;
    variants.push_back(v.concept_of());
  }
  if (variants.empty()) return c;
  return dir == Direction::Relax ? Concept::disj(std::move(variants))
                                 : Concept::conj(std::move(variants));
}

std::string_view mode_name(FormulaRelaxMode m) {
  return m == FormulaRelaxMode::RelaxRHS ? "rhs" : "lhs";
}

std::optional<FormulaRelaxMode> parse_mode(std::string_view text) {
  if (text == "rhs") return FormulaRelaxMode::RelaxRHS;
  if (text == "lhs") return FormulaRelaxMode::RetractLHS;
  return std::nullopt;
}

Sentence relax_formula(const Sentence& s, FormulaRelaxMode mode, const ConceptOperator& op,
                       std::size_t k, Reasoner& eligibility) {
  Direction want = mode == FormulaRelaxMode::RelaxRHS ? Direction::Relax : Direction::Retract;
  if (op.direction() != want) {
    throw InvalidArgument(std::string(operator_name(op.id())) + " cannot be used with mode " +
                          std::string(mode_name(mode)));
  }
  if (k == 0) return s;
  switch (s.kind()) {
    case SentenceKind::Gci:
      if (mode == FormulaRelaxMode::RelaxRHS)
        return Sentence::gci(s.lhs(), op.iterate(s.rhs(), k, eligibility));
      return Sentence::gci(op.iterate(s.lhs(), k, eligibility), s.rhs());
    case SentenceKind::InstanceOf:
      if (mode == FormulaRelaxMode::RelaxRHS)
        return Sentence::instance_of(s.individual(), op.iterate(s.asserted(), k, eligibility));
      return Sentence::instance_of(s.individual(), Concept::top());
    case SentenceKind::RoleFact:
      return Sentence::universal_role_fact(s.individual(), s.object());
  }
  return s;
}

Sentence relax_formula(const Sentence& s, FormulaRelaxMode mode, const ConceptOperator& op,
                       std::size_t k) {
  return relax_formula(s, mode, op, k, empty_eligibility());
}

std::size_t DegreeMap::total() const { return std::accumulate(k.begin(), k.end(), std::size_t{0}); }

KnowledgeBase relax_theory(const KnowledgeBase& kb, const DegreeMap& K, FormulaRelaxMode mode,
                           const ConceptOperator& op, Reasoner& eligibility) {
  if (K.size() != kb.size())
    throw InvalidArgument("degree map has " + std::to_string(K.size()) + " entries for " +
                          std::to_string(kb.size()) + " sentences");
  KnowledgeBase out(kb.dialect(), kb.signature());
  for (std::size_t i = 0; i < kb.size(); ++i)
    out.add(relax_formula(kb[i], mode, op, K.k[i], eligibility));
  out.set_dialect(std::max(kb.dialect(), out.minimal_dialect()));
  return out;
}

KnowledgeBase relax_theory(const KnowledgeBase& kb, const DegreeMap& K, FormulaRelaxMode mode,
                           const ConceptOperator& op) {
  return relax_theory(kb, K, mode, op, empty_eligibility());
}

}  // namespace relaxrev
