// Seeded generators and brute-force reference computations for tests.
#ifndef RELAXREV_TESTS_GENERATORS_HPP_
#define RELAXREV_TESTS_GENERATORS_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "relaxrev/concept.hpp"
#include "relaxrev/oracle.hpp"
#include "relaxrev/relax.hpp"

namespace testgen {

using relaxrev::Concept;
using relaxrev::Dialect;
using relaxrev::KnowledgeBase;
using relaxrev::Sentence;
using relaxrev::Signature;
using Rng = std::mt19937_64;

inline std::size_t below(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }
inline bool coin(Rng& rng, unsigned percent) { return rng() % 100 < percent; }

struct Names {
  std::vector<std::string> atoms{"A", "B", "C"};
  std::vector<std::string> roles{"r", "s"};
};

// Random concept of the dialect with role depth <= depth and at most
// `budget` constructor nodes (approximately; smart constructors may shrink
// the result).
inline Concept random_concept(Rng& rng, Dialect d, std::size_t depth, std::size_t budget,
                              const Names& names = {}) {
  auto atom = [&] { return Concept::atom(names.atoms[below(rng, names.atoms.size())]); };
  if (budget <= 1) {
    if (coin(rng, 8)) return Concept::top();
    if (d == Dialect::ALC && coin(rng, 25)) return Concept::negate(atom());
    return atom();
  }
  std::vector<int> choices{0, 1};  // atom, and
  if (depth > 0) choices.push_back(2);  // exists
  if (d != Dialect::EL) choices.push_back(3);  // or
  if (d == Dialect::ALC) {
    choices.push_back(4);  // not
    if (depth > 0) choices.push_back(5);  // forall
  }
  const int pick = choices[below(rng, choices.size())];
  switch (pick) {
    case 0:
      return atom();
    case 1:
    case 3: {
      const bool is_or = pick == 3;
      std::size_t left = 1 + below(rng, budget - 2 > 0 ? budget - 2 : 1);
      std::size_t right = budget - 1 > left ? budget - 1 - left : 1;
      Concept a = random_concept(rng, d, depth, left, names);
      Concept b = random_concept(rng, d, depth, right, names);
      return is_or ? Concept::disj({a, b}) : Concept::conj({a, b});
    }
    case 2:
      return Concept::exists(names.roles[below(rng, names.roles.size())],
                             random_concept(rng, d, depth - 1, budget - 1, names));
    case 4:
      return Concept::negate(random_concept(rng, d, depth, budget - 1, names));
    case 5:
      return Concept::forall(names.roles[below(rng, names.roles.size())],
                             random_concept(rng, d, depth - 1, budget - 1, names));
  }
  return atom();
}

// Quantifier-free concept in the dialect (no quantifier at all).
inline Concept random_body(Rng& rng, Dialect d, std::size_t budget, const Names& names = {}) {
  return random_concept(rng, d, 0, budget, names);
}

// Q1 r1. ... Qk rk. body, with Forall only in ALC.
inline Concept random_prefix_concept(Rng& rng, Dialect d, std::size_t max_depth,
                                     std::size_t budget, const Names& names = {}) {
  std::size_t k = below(rng, max_depth + 1);
  if (budget <= k) k = budget - 1;
  Concept c = random_body(rng, d, budget - k, names);
  for (std::size_t i = 0; i < k; ++i) {
    const std::string& r = names.roles[below(rng, names.roles.size())];
    c = d == Dialect::ALC && coin(rng, 50) ? Concept::forall(r, c) : Concept::exists(r, c);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Truth tables of quantifier-free concepts, computed without the library.

inline bool truth(const Concept& c, const std::map<std::string, bool>& v) {
  using relaxrev::ConceptKind;
  switch (c.kind()) {
    case ConceptKind::Top:
      return true;
    case ConceptKind::Bot:
      return false;
    case ConceptKind::Atom:
      return v.at(c.name());
    case ConceptKind::Not:
      return !truth(c.operands()[0], v);
    case ConceptKind::And:
      return std::all_of(c.operands().begin(), c.operands().end(),
                         [&](const Concept& k) { return truth(k, v); });
    case ConceptKind::Or:
      return std::any_of(c.operands().begin(), c.operands().end(),
                         [&](const Concept& k) { return truth(k, v); });
    default:
      throw std::logic_error("quantifier in a propositional body");
  }
}

// Assignments as bit masks over `atoms`.
inline std::set<unsigned> models_of(const Concept& c, const std::vector<std::string>& atoms) {
  std::set<unsigned> out;
  for (unsigned m = 0; m < (1u << atoms.size()); ++m) {
    std::map<std::string, bool> v;
    for (std::size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = (m >> i) & 1;
    if (truth(c, v)) out.insert(m);
  }
  return out;
}

// Hamming ball of radius 1 around a set of assignments.
inline std::set<unsigned> dilate(const std::set<unsigned>& s, std::size_t n) {
  std::set<unsigned> out = s;
  for (unsigned m : s)
    for (std::size_t i = 0; i < n; ++i) out.insert(m ^ (1u << i));
  return out;
}

// Assignments whose whole radius-1 ball lies in s.
inline std::set<unsigned> erode(const std::set<unsigned>& s, std::size_t n) {
  std::set<unsigned> out;
  for (unsigned m : s) {
    bool inside = true;
    for (std::size_t i = 0; i < n && inside; ++i) inside = s.count(m ^ (1u << i)) > 0;
    if (inside) out.insert(m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Knowledge bases for the revision suites.

// Small signature: concepts A, B (C), role r (optional), individual a.
struct KbShape {
  std::vector<std::string> atoms{"A", "B"};
  std::vector<std::string> roles;
  std::vector<std::string> individuals{"a"};
};

inline KbShape random_shape(Rng& rng) {
  KbShape s;
  if (coin(rng, 40)) s.atoms.push_back("C");
  if (coin(rng, 40)) s.roles.push_back("r");
  if (coin(rng, 30)) s.individuals.push_back("b");
  return s;
}

inline Concept random_literal(Rng& rng, const KbShape& s, unsigned neg_percent = 35) {
  Concept a = Concept::atom(s.atoms[below(rng, s.atoms.size())]);
  return coin(rng, neg_percent) ? Concept::negate(a) : a;
}

inline Concept random_small_concept(Rng& rng, const KbShape& s) {
  switch (below(rng, s.roles.empty() ? 3 : 5)) {
    case 0:
      return Concept::conj({random_literal(rng, s), random_literal(rng, s)});
    case 1:
      return Concept::disj({random_literal(rng, s), random_literal(rng, s)});
    case 2:
      return random_literal(rng, s);
    case 3:
      return Concept::exists(s.roles[0], random_literal(rng, s));
    default:
      return Concept::forall(s.roles[0], random_literal(rng, s));
  }
}

inline Sentence random_sentence(Rng& rng, const KbShape& s) {
  unsigned pick = static_cast<unsigned>(below(rng, 10));
  if (pick < 4)
    return Sentence::instance_of(s.individuals[below(rng, s.individuals.size())],
                                 random_small_concept(rng, s));
  if (pick == 4 && !s.roles.empty())
    return Sentence::role_fact(s.individuals[below(rng, s.individuals.size())],
                               s.individuals[below(rng, s.individuals.size())], s.roles[0]);
  return Sentence::gci(random_literal(rng, s, 15), random_small_concept(rng, s));
}

inline Signature signature_of(const KbShape& s) { return Signature(s.atoms, s.roles, s.individuals); }

inline KnowledgeBase random_kb(Rng& rng, const KbShape& s, std::size_t min_size,
                               std::size_t max_size) {
  KnowledgeBase kb(Dialect::ALC, signature_of(s));
  std::size_t n = min_size + below(rng, max_size - min_size + 1);
  for (std::size_t guard = 0; kb.size() < n && guard < 50; ++guard) kb.add(random_sentence(rng, s));
  return kb;
}

// ---------------------------------------------------------------------------
// Rank by exhaustive search over degree maps (no per-sentence shortcut).

inline std::optional<std::size_t> brute_force_rank(const relaxrev::FiniteInterpretation& I,
                                                   const KnowledgeBase& kb,
                                                   relaxrev::FormulaRelaxMode mode,
                                                   const relaxrev::ConceptOperator& op,
                                                   std::size_t max_sum) {
  for (std::size_t total = 0; total <= max_sum; ++total) {
    std::vector<std::size_t> k(kb.size(), 0);
    // Odometer over maps with entries <= total; keep those of sum total.
    while (true) {
      std::size_t sum = 0;
      for (std::size_t x : k) sum += x;
      if (sum == total) {
        KnowledgeBase relaxed = relaxrev::relax_theory(kb, relaxrev::DegreeMap(k), mode, op);
        if (relaxrev::satisfies(I, relaxed)) return total;
      }
      std::size_t i = 0;
      while (i < k.size() && k[i] == total) k[i++] = 0;
      if (i == k.size()) break;
      ++k[i];
    }
  }
  return std::nullopt;
}

}  // namespace testgen

#endif  // RELAXREV_TESTS_GENERATORS_HPP_
