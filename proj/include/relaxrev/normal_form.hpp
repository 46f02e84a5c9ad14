#ifndef RELAXREV_NORMAL_FORM_HPP_
#define RELAXREV_NORMAL_FORM_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "relaxrev/concept.hpp"

namespace relaxrev {

// Negation pushed down to concept names.
Concept to_nnf(const Concept& c);

// EL description tree. nodes[0] is the root; children always have larger
// indices than their parent.
struct DescriptionTree {
  struct Edge {
    std::string role;
    std::size_t target = 0;
  };
  struct Node {
    std::vector<std::string> labels;  // sorted, no duplicates
    std::vector<Edge> edges;
    std::size_t parent = 0;  // root points to itself
    std::size_t depth = 0;
  };
  std::vector<Node> nodes;

  std::size_t height() const;
  bool is_leaf(std::size_t i) const { return nodes[i].edges.empty(); }
  // Copy keeping only nodes for which keep[i] holds; keep[0] must be true
  // and kept nodes must have kept parents.
  DescriptionTree restricted(const std::vector<bool>& keep) const;
};

// Throws UnsupportedShape on Bot or non-EL constructors.
DescriptionTree to_description_tree(const Concept& c);
Concept from_description_tree(const DescriptionTree& t);

// ELU input; result is a disjunction of EL concepts with existentials
// grouped per role, fillers themselves grouped, and no conjunct of a group
// subsuming another (decided with the empty TBox). Bot when c is empty.
Concept to_grouped_normal_form(const Concept& c);

enum class Quantifier { Exists, Forall };

struct PrefixForm {
  std::vector<std::pair<Quantifier, std::string>> prefix;
  Concept body;

  // The prefix applied to a new body.
  Concept wrap(const Concept& new_body) const;
  Concept concept_of() const { return wrap(body); }
};

bool is_quantifier_free(const Concept& c);
// Throws UnsupportedShape if a quantifier occurs below And/Or/Not.
PrefixForm to_prefix_form(const Concept& c);

// Literals are Atom or Not(Atom). Tautological clauses and contradictory
// terms are dropped, literals are sorted and unique, clauses sorted and
// unique. No clauses means Top (CNF) / Bot (DNF); an empty clause means Bot
// (CNF) / an empty term Top (DNF).
using Clause = std::vector<Concept>;
std::vector<Clause> cnf_clauses(const Concept& body);
std::vector<Clause> dnf_terms(const Concept& body);

Concept body_to_cnf(const Concept& body);
Concept body_to_dnf(const Concept& body);

}  // namespace relaxrev

#endif  // RELAXREV_NORMAL_FORM_HPP_
