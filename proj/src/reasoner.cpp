#include "relaxrev/reasoner.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "relaxrev/error.hpp"
#include "relaxrev/normal_form.hpp"
#include "relaxrev/syntax.hpp"

namespace relaxrev {

namespace {

// Not producible by the parser, so it cannot clash with user names.
const char* const kFreshName = "\x01fresh";

constexpr std::size_t kPoolResetThreshold = 200'000;
constexpr std::size_t kMemoLimit = 400'000;

struct Entry {
  ConceptKind kind = ConceptKind::Top;
  int role = -1;
  std::vector<int> kids;  // And/Or operands, quantifier filler, Not operand
  int neg = -1;
  Concept value;
};

// Interned NNF concepts closed under negation.
class Pool {
 public:
  int intern(const Concept& c) {
    if (auto it = ids_.find(c); it != ids_.end()) return it->second;
    Entry e;
    e.kind = c.kind();
    e.value = c;
    if (c.is_quantifier()) {
      e.role = role_id(c.name());
      e.kids.push_back(intern(c.filler()));
    } else {
      for (const Concept& k : c.operands()) e.kids.push_back(intern(k));
    }
    int id = static_cast<int>(entries_.size());
    entries_.push_back(std::move(e));
    ids_.emplace(c, id);
    return id;
  }

  void close_negations() {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].neg >= 0) continue;
      Concept c = entries_[i].value;
      int n = intern(to_nnf(Concept::negate(c)));
      entries_[i].neg = n;
      if (entries_[n].neg < 0) entries_[n].neg = static_cast<int>(i);
    }
  }

  int role_id(const std::string& r) {
    auto [it, inserted] = roles_.emplace(r, static_cast<int>(role_names_.size()));
    if (inserted) role_names_.push_back(r);
    return it->second;
  }
  const std::string& role_name(int id) const { return role_names_[id]; }

  const Entry& operator[](int i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<Concept, int, ConceptHash> ids_;
  std::unordered_map<std::string, int> roles_;
  std::vector<std::string> role_names_;
};

struct Trigger {
  std::vector<int> atoms;  // all must be present
  int consequence = -1;
};

struct TNode {
  std::vector<int> label;  // sorted
  std::vector<std::pair<int, int>> edges;  // (role, target)
  int parent = -1;
  std::string name;  // individual name for root nodes
};

struct Graph {
  std::vector<TNode> nodes;
  std::vector<std::pair<int, int>> todo;
  std::size_t todo_head = 0;
  std::vector<std::pair<int, int>> ors;
  std::size_t or_head = 0;
  std::size_t first_open = 0;
};

bool has(const std::vector<int>& label, int c) {
  return std::binary_search(label.begin(), label.end(), c);
}

}  // namespace

struct Reasoner::Impl {
  KnowledgeBase kb;
  ReasonerOptions options;
  Pool pool;
  std::vector<int> universal;
  std::unordered_map<int, std::vector<Trigger>> triggers;  // keyed by atom entry id
  std::vector<std::pair<std::string, int>> abox_labels;
  std::vector<std::tuple<std::string, std::string, int>> abox_edges;
  std::vector<std::string> individuals;
  std::map<std::vector<std::pair<int, int>>, bool> memo;
  std::optional<bool> abox_sat;
  std::size_t created = 0;
  std::size_t budget_left = 0;
  std::string witness;

  Impl(const KnowledgeBase& k, ReasonerOptions o) : kb(k), options(o) { load(); }

  void load() {
    pool = Pool{};
    universal.clear();
    triggers.clear();
    abox_labels.clear();
    abox_edges.clear();
    individuals.clear();
    memo.clear();
    abox_sat.reset();
    auto note_individual = [&](const std::string& a) {
      if (std::find(individuals.begin(), individuals.end(), a) == individuals.end())
        individuals.push_back(a);
    };
    for (const Sentence& s : kb.sentences()) {
      switch (s.kind()) {
        case SentenceKind::Gci:
          load_gci(s.lhs(), s.rhs());
          break;
        case SentenceKind::InstanceOf:
          note_individual(s.individual());
          abox_labels.emplace_back(s.individual(), pool.intern(to_nnf(s.asserted())));
          break;
        case SentenceKind::RoleFact:
          if (s.universal_role()) break;
          note_individual(s.individual());
          note_individual(s.object());
          abox_edges.emplace_back(s.individual(), s.object(), pool.role_id(s.role()));
          break;
      }
    }
    pool.close_negations();
  }

  void load_gci(const Concept& lhs, const Concept& rhs) {
    Concept l = to_nnf(lhs);
    Concept r = to_nnf(rhs);
    if (l.is_bot() || r.is_top()) return;
    if (l.is_top()) {
      universal.push_back(pool.intern(r));
      return;
    }
    std::vector<Concept> atoms;
    std::vector<Concept> rest;
    if (l.is(ConceptKind::Atom)) {
      atoms.push_back(l);
    } else if (l.is(ConceptKind::And)) {
      for (const Concept& k : l.operands()) (k.is(ConceptKind::Atom) ? atoms : rest).push_back(k);
    }
    if (atoms.empty()) {
      universal.push_back(pool.intern(Concept::disj({to_nnf(Concept::negate(l)), r})));
      return;
    }
    Concept consequence = r;
    if (!rest.empty())
      consequence = Concept::disj({to_nnf(Concept::negate(Concept::conj(rest))), r});
    Trigger t;
    for (const Concept& a : atoms) t.atoms.push_back(pool.intern(a));
    t.consequence = pool.intern(consequence);
    // Indexed under every premise atom so that whichever arrives last fires it.
    for (int a : t.atoms) triggers[a].push_back(t);
  }

  void maybe_reset() {
    if (pool.size() > kPoolResetThreshold) load();
    if (memo.size() > kMemoLimit) memo.clear();
  }

  // ---- tableau ------------------------------------------------------------

  void charge() {
    ++created;
    if (budget_left == 0)
      throw ResourceExceeded("tableau budget of " + std::to_string(options.node_budget) +
                             " exhausted");
    --budget_left;
  }

  // Returns false on clash.
  bool add(Graph& g, int x, int c) {
    const Entry& e = pool[c];
    if (e.kind == ConceptKind::Bot) return false;
    auto& label = g.nodes[x].label;
    auto it = std::lower_bound(label.begin(), label.end(), c);
    if (it != label.end() && *it == c) return true;
    if (e.neg >= 0 && has(label, e.neg)) return false;
    label.insert(it, c);
    g.todo.emplace_back(x, c);
    if (e.kind == ConceptKind::Or) g.ors.emplace_back(x, c);
    return true;
  }

  bool add_edge(Graph& g, int x, int role, int y) {
    g.nodes[x].edges.emplace_back(role, y);
    // Copy: add() may reallocate x's label.
    std::vector<int> label = g.nodes[x].label;
    for (int c : label) {
      const Entry& e = pool[c];
      if (e.kind == ConceptKind::Forall && e.role == role && !add(g, y, e.kids[0])) return false;
    }
    return true;
  }

  int new_node(Graph& g, int parent, std::string name) {
    charge();
    TNode n;
    n.parent = parent;
    n.name = std::move(name);
    g.nodes.push_back(std::move(n));
    return static_cast<int>(g.nodes.size()) - 1;
  }

  bool init_node(Graph& g, int x) {
    for (int u : universal)
      if (!add(g, x, u)) return false;
    return true;
  }

  bool propagate(Graph& g) {
    while (g.todo_head < g.todo.size()) {
      auto [x, c] = g.todo[g.todo_head++];
      const Entry& e = pool[c];
      switch (e.kind) {
        case ConceptKind::And:
          for (int k : e.kids)
            if (!add(g, x, k)) return false;
          break;
        case ConceptKind::Forall: {
          auto edges = g.nodes[x].edges;
          for (auto [role, y] : edges)
            if (role == e.role && !add(g, y, e.kids[0])) return false;
          break;
        }
        case ConceptKind::Atom: {
          auto it = triggers.find(c);
          if (it == triggers.end()) break;
          for (const Trigger& t : it->second) {
            bool ready = std::all_of(t.atoms.begin(), t.atoms.end(),
                                     [&](int a) { return has(g.nodes[x].label, a); });
            if (ready && !add(g, x, t.consequence)) return false;
          }
          break;
        }
        default:
          break;
      }
    }
    return true;
  }

  bool blocked(const Graph& g, int x) const {
    const auto& label = g.nodes[x].label;
    for (int a = g.nodes[x].parent; a >= 0; a = g.nodes[a].parent) {
      const auto& al = g.nodes[a].label;
      if (std::includes(al.begin(), al.end(), label.begin(), label.end())) return true;
    }
    return false;
  }

  enum class OrStep { Done, Unit, Clash, Branch };

  OrStep resolve_ors(Graph& g, int& bx, std::vector<int>& choices) {
    bool branch_found = false;
    for (std::size_t i = g.or_head; i < g.ors.size(); ++i) {
      auto [x, c] = g.ors[i];
      const auto& label = g.nodes[x].label;
      const Entry& e = pool[c];
      bool satisfied = false;
      std::vector<int> open;
      for (int k : e.kids) {
        if (has(label, k)) {
          satisfied = true;
          break;
        }
        if (pool[k].kind == ConceptKind::Bot) continue;
        if (pool[k].neg >= 0 && has(label, pool[k].neg)) continue;
        open.push_back(k);
      }
      if (satisfied) {
        std::swap(g.ors[i], g.ors[g.or_head]);
        ++g.or_head;
        continue;
      }
      if (open.empty()) return OrStep::Clash;
      if (open.size() == 1) return add(g, x, open[0]) ? OrStep::Unit : OrStep::Clash;
      if (!branch_found) {
        branch_found = true;
        bx = x;
        choices = std::move(open);
      }
    }
    return branch_found ? OrStep::Branch : OrStep::Done;
  }

  // Returns true if it created a successor, false if every node is complete.
  // Sets clash on failure while attaching the successor.
  bool generate(Graph& g, bool& clash) {
    for (std::size_t x = g.first_open; x < g.nodes.size(); ++x) {
      int xi = static_cast<int>(x);
      if (!blocked(g, xi)) {
        std::vector<int> label = g.nodes[x].label;
        for (int c : label) {
          const Entry& e = pool[c];
          if (e.kind != ConceptKind::Exists) continue;
          bool satisfied = false;
          for (auto [role, y] : g.nodes[x].edges) {
            if (role == e.role && has(g.nodes[y].label, e.kids[0])) {
              satisfied = true;
              break;
            }
          }
          if (satisfied) continue;
          int y = new_node(g, xi, {});
          clash = !(add(g, y, e.kids[0]) && init_node(g, y) && add_edge(g, xi, e.role, y));
          return true;
        }
      }
      g.first_open = x + 1;
    }
    return false;
  }

  bool solve(Graph& g) {
    for (;;) {
      if (!propagate(g)) return false;
      int bx = -1;
      std::vector<int> choices;
      switch (resolve_ors(g, bx, choices)) {
        case OrStep::Clash:
          return false;
        case OrStep::Unit:
          continue;
        case OrStep::Branch:
          for (std::size_t j = 0; j < choices.size(); ++j) {
            charge();
            Graph h = g;
            bool ok = true;
            for (std::size_t i = 0; i < j && ok; ++i) ok = add(h, bx, pool[choices[i]].neg);
            ok = ok && add(h, bx, choices[j]);
            if (ok && solve(h)) {
              g = std::move(h);
              return true;
            }
          }
          return false;
        case OrStep::Done:
          break;
      }
      bool clash = false;
      if (!generate(g, clash)) return true;
      if (clash) return false;
    }
  }

  std::string describe(const Graph& g) const {
    std::ostringstream out;
    for (std::size_t x = 0; x < g.nodes.size(); ++x) {
      const TNode& n = g.nodes[x];
      out << "node " << x;
      if (!n.name.empty()) out << " (" << (n.name == kFreshName ? "x" : n.name) << ")";
      out << ":";
      bool first = true;
      for (int c : n.label) {
        const Entry& e = pool[c];
        if (e.kind != ConceptKind::Atom && e.kind != ConceptKind::Not) continue;
        if (e.value == Concept::atom(kFreshName) ||
            (e.kind == ConceptKind::Not && e.value.filler() == Concept::atom(kFreshName)))
          continue;
        out << (first ? " " : ", ") << render(e.value);
        first = false;
      }
      out << "\n";
      for (auto [role, y] : n.edges) out << "  " << pool.role_name(role) << " -> node " << y << "\n";
    }
    return out.str();
  }

  // extra: (individual index into `individuals`, or -1 for a fresh element,
  // concept id). The ABox is included only when with_abox is set.
  bool run(const std::vector<std::pair<int, int>>& extra, bool with_abox, bool want_witness) {
    std::vector<std::pair<int, int>> key = extra;
    key.emplace_back(with_abox ? 1 : 0, -1);
    if (!want_witness) {
      if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    budget_left = options.node_budget;
    Graph g;
    std::unordered_map<std::string, int> roots;
    bool ok = true;
    auto root = [&](const std::string& name) {
      auto it = roots.find(name);
      if (it != roots.end()) return it->second;
      int x = new_node(g, -1, name);
      roots.emplace(name, x);
      ok = ok && init_node(g, x);
      return x;
    };
    if (with_abox) {
      for (const auto& a : individuals) root(a);
      for (const auto& [a, b, role] : abox_edges) ok = ok && add_edge(g, root(a), role, root(b));
      for (const auto& [a, c] : abox_labels) ok = ok && add(g, root(a), c);
    }
    for (auto [ind, c] : extra) {
      std::string name = ind < 0 ? std::string(kFreshName) : individuals[ind];
      ok = ok && add(g, root(name), c);
    }
    if (g.nodes.empty()) root(kFreshName);
    bool sat = ok && solve(g);
    if (sat && want_witness) witness = describe(g);
    memo[key] = sat;
    return sat;
  }

  int individual_index(const std::string& a) {
    auto it = std::find(individuals.begin(), individuals.end(), a);
    if (it == individuals.end()) return -1;
    return static_cast<int>(it - individuals.begin());
  }

  int intern_query(const Concept& c) {
    int id = pool.intern(to_nnf(c));
    pool.close_negations();
    return id;
  }

  bool kb_satisfiable() {
    if (!abox_sat) abox_sat = run({}, true, false);
    return *abox_sat;
  }

  // x : c is satisfiable together with the KB, x fresh. Individuals never
  // interact with a fresh element, so the ABox can be checked separately.
  bool concept_satisfiable(const Concept& c) {
    maybe_reset();
    if (!kb_satisfiable()) return false;
    return run({{-1, intern_query(c)}}, false, false);
  }

  EntailmentVerdict entails(const Sentence& s, bool want_witness) {
    maybe_reset();
    EntailmentVerdict v;
    bool sat = false;
    switch (s.kind()) {
      case SentenceKind::Gci: {
        int q = intern_query(Concept::conj({s.lhs(), Concept::negate(s.rhs())}));
        if (want_witness)
          sat = run({{-1, q}}, true, true);
        else
          sat = kb_satisfiable() && run({{-1, q}}, false, false);
        break;
      }
      case SentenceKind::InstanceOf: {
        int q = intern_query(Concept::negate(s.asserted()));
        int a = individual_index(s.individual());
        sat = run({{a, q}}, true, want_witness);
        break;
      }
      case SentenceKind::RoleFact: {
        if (s.universal_role()) {
          v.holds = true;
          return v;
        }
        Concept fresh = Concept::atom(kFreshName);
        int qa = intern_query(Concept::forall(s.role(), Concept::negate(fresh)));
        int qb = intern_query(fresh);
        int a = individual_index(s.individual());
        int b = individual_index(s.object());
        if (a < 0 || b < 0 || s.individual() == s.object()) {
          // Without a connecting fact the edge can always be absent, unless
          // the KB itself has no model.
          if (a >= 0 && a == b) {
            sat = run({{a, qa}, {b, qb}}, true, want_witness);
          } else {
            sat = kb_satisfiable();
            if (sat && want_witness) run({}, true, true);
          }
        } else {
          sat = run({{a, qa}, {b, qb}}, true, want_witness);
        }
        break;
      }
    }
    v.holds = !sat;
    if (!v.holds && want_witness) v.witness = witness;
    return v;
  }
};

ReasonerOptions ReasonerOptions::from_environment() {
  ReasonerOptions o;
  if (const char* env = std::getenv("RELAXREV_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) o.node_budget = static_cast<std::size_t>(v);
  }
  return o;
}

Reasoner::Reasoner(const KnowledgeBase& kb, ReasonerOptions options)
    : impl_(std::make_unique<Impl>(kb, options)) {}
Reasoner::~Reasoner() = default;
Reasoner::Reasoner(Reasoner&&) noexcept = default;
Reasoner& Reasoner::operator=(Reasoner&&) noexcept = default;

bool Reasoner::is_satisfiable() { return impl_->kb_satisfiable(); }

bool Reasoner::is_satisfiable(const Concept& c) { return impl_->concept_satisfiable(c); }

bool Reasoner::subsumes(const Concept& sub, const Concept& sup) {
  if (sub == sup || sub.is_bot() || sup.is_top()) return true;
  return !impl_->concept_satisfiable(Concept::conj({sub, Concept::negate(sup)}));
}

bool Reasoner::equivalent(const Concept& a, const Concept& b) {
  return subsumes(a, b) && subsumes(b, a);
}

bool Reasoner::entails(const Sentence& s) { return impl_->entails(s, false).holds; }

EntailmentVerdict Reasoner::entails_verbose(const Sentence& s, bool want_witness) {
  return impl_->entails(s, want_witness);
}

bool Reasoner::is_coherent() { return unsat_named_concepts().empty(); }

std::vector<std::string> Reasoner::unsat_named_concepts() {
  std::vector<std::string> out;
  for (const auto& n : impl_->kb.signature().concept_names())
    if (!is_satisfiable(Concept::atom(n))) out.push_back(n);
  return out;
}

std::size_t Reasoner::nodes_created() const { return impl_->created; }

bool is_satisfiable(const KnowledgeBase& kb) {
  return Reasoner(kb, ReasonerOptions::from_environment()).is_satisfiable();
}

bool entails(const KnowledgeBase& kb, const Sentence& s) {
  return Reasoner(kb, ReasonerOptions::from_environment()).entails(s);
}

bool subsumes(const KnowledgeBase& kb, const Concept& sub, const Concept& sup) {
  return Reasoner(kb, ReasonerOptions::from_environment()).subsumes(sub, sup);
}

bool equivalent(const KnowledgeBase& kb, const Concept& a, const Concept& b) {
  return Reasoner(kb, ReasonerOptions::from_environment()).equivalent(a, b);
}

bool is_consistent_generalized(const KnowledgeBase& kb) { return is_satisfiable(kb); }

bool is_coherent(const KnowledgeBase& kb) {
  return Reasoner(kb, ReasonerOptions::from_environment()).is_coherent();
}

std::vector<std::string> unsat_named_concepts(const KnowledgeBase& kb) {
  return Reasoner(kb, ReasonerOptions::from_environment()).unsat_named_concepts();
}

namespace {

Reasoner& empty_reasoner() {
  thread_local Reasoner r{KnowledgeBase{}, ReasonerOptions::from_environment()};
  return r;
}

}  // namespace

bool subsumes_empty(const Concept& sub, const Concept& sup) {
  return empty_reasoner().subsumes(sub, sup);
}

bool equivalent_empty(const Concept& a, const Concept& b) {
  return empty_reasoner().equivalent(a, b);
}

}  // namespace relaxrev
