#include "relaxrev/normal_form.hpp"

#include <algorithm>
#include <map>

#include "relaxrev/error.hpp"
#include "relaxrev/reasoner.hpp"
#include "relaxrev/syntax.hpp"

namespace relaxrev {

namespace {

Concept nnf(const Concept& c, bool neg) {
  switch (c.kind()) {
    case ConceptKind::Top:
      return neg ? Concept::bot() : c;
    case ConceptKind::Bot:
      return neg ? Concept::top() : c;
    case ConceptKind::Atom:
      return neg ? Concept::negate(c) : c;
    case ConceptKind::Not:
      return nnf(c.filler(), !neg);
    case ConceptKind::And:
    case ConceptKind::Or: {
      std::vector<Concept> kids;
      kids.reserve(c.operands().size());
      for (const Concept& k : c.operands()) kids.push_back(nnf(k, neg));
      bool conj = c.is(ConceptKind::And) != neg;
      return conj ? Concept::conj(std::move(kids)) : Concept::disj(std::move(kids));
    }
    case ConceptKind::Exists:
    case ConceptKind::Forall: {
      Concept f = nnf(c.filler(), neg);
      bool ex = c.is(ConceptKind::Exists) != neg;
      return ex ? Concept::exists(c.name(), f) : Concept::forall(c.name(), f);
    }
  }
  return c;
}

void build_tree(const Concept& c, std::size_t at, DescriptionTree& t) {
  auto visit = [&](const Concept& part, auto& self) -> void {
    switch (part.kind()) {
      case ConceptKind::Top:
        return;
      case ConceptKind::Atom:
        t.nodes[at].labels.push_back(part.name());
        return;
      case ConceptKind::And:
        for (const Concept& k : part.operands()) self(k, self);
        return;
      case ConceptKind::Exists: {
        std::size_t child = t.nodes.size();
        DescriptionTree::Node n;
        n.parent = at;
        n.depth = t.nodes[at].depth + 1;
        t.nodes.push_back(std::move(n));
        t.nodes[at].edges.push_back({part.name(), child});
        build_tree(part.filler(), child, t);
        return;
      }
      case ConceptKind::Bot:
        throw UnsupportedShape("description trees cannot represent Bot: " + render(c));
      default:
        throw UnsupportedShape("not an EL concept: " + render(c));
    }
  };
  visit(c, visit);
  auto& labels = t.nodes[at].labels;
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
}

Concept tree_concept(const DescriptionTree& t, std::size_t at) {
  std::vector<Concept> parts;
  for (const auto& l : t.nodes[at].labels) parts.push_back(Concept::atom(l));
  for (const auto& e : t.nodes[at].edges)
    parts.push_back(Concept::exists(e.role, tree_concept(t, e.target)));
  return Concept::conj(std::move(parts));
}

// EL conjunction split into its names and existentials grouped per role.
struct ElParts {
  std::vector<Concept> atoms;
  std::map<std::string, std::vector<Concept>> groups;

  Concept assemble() const {
    std::vector<Concept> parts = atoms;
    for (const auto& [role, fillers] : groups)
      for (const Concept& f : fillers) parts.push_back(Concept::exists(role, f));
    return Concept::conj(std::move(parts));
  }
};

void merge_into(ElParts& into, const ElParts& from) {
  into.atoms.insert(into.atoms.end(), from.atoms.begin(), from.atoms.end());
  for (const auto& [role, fillers] : from.groups) {
    auto& g = into.groups[role];
    g.insert(g.end(), fillers.begin(), fillers.end());
  }
}

// Keeps the most specific fillers of a group; among equivalent fillers the
// first one survives.
std::vector<Concept> prune_group(std::vector<Concept> fillers) {
  std::sort(fillers.begin(), fillers.end());
  fillers.erase(std::unique(fillers.begin(), fillers.end()), fillers.end());
  std::vector<bool> dropped(fillers.size(), false);
  for (std::size_t i = 0; i < fillers.size(); ++i) {
    for (std::size_t j = 0; j < fillers.size() && !dropped[i]; ++j) {
      if (i == j || dropped[j]) continue;
      // exists r.F_j [= exists r.F_i iff F_j [= F_i
      if (subsumes_empty(fillers[j], fillers[i]) &&
          (j < i || !subsumes_empty(fillers[i], fillers[j])))
        dropped[i] = true;
    }
  }
  std::vector<Concept> kept;
  for (std::size_t i = 0; i < fillers.size(); ++i)
    if (!dropped[i]) kept.push_back(fillers[i]);
  return kept;
}

// Disjuncts of c, each an EL concept in grouped form.
std::vector<ElParts> grouped_disjuncts(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top:
      return {ElParts{}};
    case ConceptKind::Bot:
      return {};
    case ConceptKind::Atom: {
      ElParts p;
      p.atoms.push_back(c);
      return {p};
    }
    case ConceptKind::Or: {
      std::vector<ElParts> out;
      for (const Concept& k : c.operands()) {
        auto ds = grouped_disjuncts(k);
        out.insert(out.end(), ds.begin(), ds.end());
      }
      return out;
    }
    case ConceptKind::And: {
      std::vector<ElParts> acc{ElParts{}};
      for (const Concept& k : c.operands()) {
        auto ds = grouped_disjuncts(k);
        std::vector<ElParts> next;
        for (const auto& a : acc) {
          for (const auto& d : ds) {
            ElParts m = a;
            merge_into(m, d);
            next.push_back(std::move(m));
          }
        }
        acc = std::move(next);
        if (acc.empty()) break;
      }
      return acc;
    }
    case ConceptKind::Exists: {
      std::vector<ElParts> out;
      for (const auto& d : grouped_disjuncts(c.filler())) {
        ElParts p;
        p.groups[c.name()].push_back(d.assemble());
        out.push_back(std::move(p));
      }
      return out;
    }
    default:
      throw UnsupportedShape("not an ELU concept: " + render(c));
  }
}

Concept normalize_el(ElParts p) {
  for (auto& [role, fillers] : p.groups) {
    std::vector<Concept> normalized;
    for (const Concept& f : fillers) normalized.push_back(to_grouped_normal_form(f));
    fillers = prune_group(std::move(normalized));
  }
  return p.assemble();
}

void collect_literals(const Concept& c, std::vector<std::vector<Concept>>& out, bool cnf) {
  // Computes clauses (cnf) or terms (!cnf) of an NNF, quantifier-free concept.
  ConceptKind outer = cnf ? ConceptKind::And : ConceptKind::Or;
  ConceptKind inner = cnf ? ConceptKind::Or : ConceptKind::And;
  ConceptKind unit = cnf ? ConceptKind::Top : ConceptKind::Bot;
  ConceptKind zero = cnf ? ConceptKind::Bot : ConceptKind::Top;
  if (c.is(unit)) return;
  if (c.is(zero)) {
    out.push_back({});
    return;
  }
  if (c.is(ConceptKind::Atom) || c.is(ConceptKind::Not)) {
    out.push_back({c});
    return;
  }
  if (c.is(outer)) {
    for (const Concept& k : c.operands()) collect_literals(k, out, cnf);
    return;
  }
  if (c.is(inner)) {
    std::vector<std::vector<Concept>> acc{{}};
    for (const Concept& k : c.operands()) {
      std::vector<std::vector<Concept>> sub;
      collect_literals(k, sub, cnf);
      std::vector<std::vector<Concept>> next;
      for (const auto& a : acc) {
        for (const auto& s : sub) {
          auto m = a;
          m.insert(m.end(), s.begin(), s.end());
          next.push_back(std::move(m));
        }
      }
      acc = std::move(next);
    }
    out.insert(out.end(), acc.begin(), acc.end());
    return;
  }
  throw UnsupportedShape("quantifier in propositional body: " + render(c));
}

std::vector<Clause> normal_clauses(const Concept& body, bool cnf) {
  std::vector<std::vector<Concept>> raw;
  collect_literals(to_nnf(body), raw, cnf);
  std::vector<Clause> out;
  for (auto& cl : raw) {
    std::sort(cl.begin(), cl.end());
    cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
    bool complementary = false;
    for (const Concept& l : cl)
      if (l.is(ConceptKind::Not) && std::binary_search(cl.begin(), cl.end(), l.filler()))
        complementary = true;
    if (!complementary) out.push_back(std::move(cl));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Concept to_nnf(const Concept& c) { return nnf(c, false); }

std::size_t DescriptionTree::height() const {
  std::size_t h = 0;
  for (const auto& n : nodes) h = std::max(h, n.depth);
  return h;
}

DescriptionTree DescriptionTree::restricted(const std::vector<bool>& keep) const {
  DescriptionTree out;
  std::vector<std::size_t> index(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!keep[i]) continue;
    index[i] = out.nodes.size();
    Node n;
    n.labels = nodes[i].labels;
    n.depth = nodes[i].depth;
    n.parent = i == 0 ? 0 : index[nodes[i].parent];
    out.nodes.push_back(std::move(n));
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!keep[i]) continue;
    for (const Edge& e : nodes[i].edges)
      if (keep[e.target]) out.nodes[index[i]].edges.push_back({e.role, index[e.target]});
  }
  return out;
}

DescriptionTree to_description_tree(const Concept& c) {
  DescriptionTree t;
  t.nodes.emplace_back();
  build_tree(c, 0, t);
  return t;
}

Concept from_description_tree(const DescriptionTree& t) {
  if (t.nodes.empty()) return Concept::top();
  return tree_concept(t, 0);
}

Concept to_grouped_normal_form(const Concept& c) {
  std::vector<Concept> disjuncts;
  for (auto& d : grouped_disjuncts(c)) disjuncts.push_back(normalize_el(std::move(d)));
  return Concept::disj(std::move(disjuncts));
}

Concept PrefixForm::wrap(const Concept& new_body) const {
  Concept c = new_body;
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    c = it->first == Quantifier::Exists ? Concept::exists(it->second, c)
                                        : Concept::forall(it->second, c);
  }
  return c;
}

bool is_quantifier_free(const Concept& c) {
  if (c.is_quantifier()) return false;
  for (const Concept& k : c.operands())
    if (!is_quantifier_free(k)) return false;
  return true;
}

PrefixForm to_prefix_form(const Concept& c) {
  PrefixForm pf;
  Concept cur = c;
  while (cur.is_quantifier()) {
    pf.prefix.emplace_back(cur.is(ConceptKind::Exists) ? Quantifier::Exists : Quantifier::Forall,
                           cur.name());
    cur = cur.filler();
  }
  if (!is_quantifier_free(cur))
    throw UnsupportedShape("quantifier below a boolean constructor: " + render(c));
  pf.body = cur;
  return pf;
}

std::vector<Clause> cnf_clauses(const Concept& body) { return normal_clauses(body, true); }
std::vector<Clause> dnf_terms(const Concept& body) { return normal_clauses(body, false); }

Concept body_to_cnf(const Concept& body) {
  std::vector<Concept> clauses;
  for (const Clause& cl : cnf_clauses(body)) clauses.push_back(Concept::disj(cl));
  return Concept::conj(std::move(clauses));
}

Concept body_to_dnf(const Concept& body) {
  std::vector<Concept> terms;
  for (const Clause& t : dnf_terms(body)) terms.push_back(Concept::conj(t));
  return Concept::disj(std::move(terms));
}

}  // namespace relaxrev
