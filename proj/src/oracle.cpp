#include "relaxrev/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "relaxrev/error.hpp"
#include "relaxrev/reasoner.hpp"
#include "relaxrev/syntax.hpp"

namespace relaxrev {

namespace {

std::size_t index_in(const std::vector<std::string>& names, const std::string& n,
                     const char* sort) {
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end())
    throw InvalidArgument(std::string(sort) + " '" + n + "' is not in the interpretation's signature");
  return static_cast<std::size_t>(it - names.begin());
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::uint64_t low_bits(std::size_t n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

}  // namespace

InterpretationSpace::InterpretationSpace(Signature sig, std::size_t max_domain,
                                         std::size_t bit_cap)
    : sig_(std::make_shared<const Signature>(std::move(sig))), max_domain_(max_domain) {
  if (max_domain == 0) throw InvalidArgument("domain size must be positive");
  const std::size_t nc = sig_->concept_names().size();
  const std::size_t nr = sig_->role_names().size();
  const std::size_t ni = sig_->individuals().size();
  const std::size_t total_cap = std::size_t{1} << (bit_cap + 2);
  offsets_.push_back(0);
  for (std::size_t n = 1; n <= max_domain; ++n) {
    std::size_t bits = n * nc + n * n * nr;
    if (bits > bit_cap)
      throw ResourceExceeded("domain size " + std::to_string(n) + " needs " +
                             std::to_string(bits) + " bits (cap " + std::to_string(bit_cap) + ")");
    double inds = 1;
    for (std::size_t i = 0; i < ni; ++i) inds *= static_cast<double>(n);
    double here = static_cast<double>(std::size_t{1} << bits) * inds;
    if (static_cast<double>(offsets_.back()) + here > static_cast<double>(total_cap))
      throw ResourceExceeded("more than " + std::to_string(total_cap) +
                             " interpretations up to domain size " + std::to_string(n));
    offsets_.push_back(offsets_.back() + (std::size_t{1} << bits) * ipow(n, ni));
  }
}

std::pair<std::size_t, std::size_t> InterpretationSpace::range(std::size_t domain_size) const {
  if (domain_size == 0 || domain_size > max_domain_)
    throw InvalidArgument("domain size out of range");
  return {offsets_[domain_size - 1], offsets_[domain_size]};
}

std::size_t InterpretationSpace::domain_of(std::size_t id) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), id);
  if (it == offsets_.end()) throw InvalidArgument("interpretation id out of range");
  return static_cast<std::size_t>(it - offsets_.begin());
}

void InterpretationSpace::decode(std::size_t id, FiniteInterpretation& out) const {
  const std::size_t n = domain_of(id);
  const std::size_t nc = sig_->concept_names().size();
  const std::size_t nr = sig_->role_names().size();
  const std::size_t ni = sig_->individuals().size();
  const std::size_t bits = n * nc + n * n * nr;
  std::size_t local = id - offsets_[n - 1];
  std::uint64_t ext = local & low_bits(bits);
  std::size_t inds = local >> bits;

  out.signature = sig_;
  out.domain_size = n;
  out.concept_ext.resize(nc);
  const std::uint64_t m = low_bits(n);
  for (std::size_t c = 0; c < nc; ++c) {
    out.concept_ext[c] = ext & m;
    ext >>= n;
  }
  out.role_ext.resize(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    out.role_ext[r].resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      out.role_ext[r][x] = ext & m;
      ext >>= n;
    }
  }
  out.ind_map.resize(ni);
  for (std::size_t i = 0; i < ni; ++i) {
    out.ind_map[i] = inds % n;
    inds /= n;
  }
}

FiniteInterpretation InterpretationSpace::at(std::size_t id) const {
  FiniteInterpretation I;
  decode(id, I);
  return I;
}

std::vector<FiniteInterpretation> enumerate_interpretations(const Signature& sig, std::size_t n,
                                                            std::size_t bit_cap) {
  const std::size_t bits = n * sig.concept_names().size() + n * n * sig.role_names().size();
  if (n == 0) throw InvalidArgument("domain size must be positive");
  if (bits > bit_cap)
    throw ResourceExceeded("domain size " + std::to_string(n) + " needs " + std::to_string(bits) +
                           " bits (cap " + std::to_string(bit_cap) + ")");
  // Only size n is materialized; smaller sizes are skipped by id.
  InterpretationSpace space(sig, n, std::max(bit_cap, bits));
  auto [first, last] = space.range(n);
  std::vector<FiniteInterpretation> out(last - first);
  for (std::size_t id = first; id < last; ++id) space.decode(id, out[id - first]);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Program {
  struct Op {
    ConceptKind kind;
    std::size_t index = 0;  // concept or role index
    std::vector<int> kids;
  };
  struct Check {
    SentenceKind kind;
    int lhs = -1;
    int rhs = -1;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t role = 0;
    bool universal = false;
  };
  Signature sig;
  std::vector<Op> ops;
  std::unordered_map<Concept, int> memo;
  std::vector<Check> checks;

  int compile(const Concept& c) {
    if (auto it = memo.find(c); it != memo.end()) return it->second;
    Op op{c.kind(), 0, {}};
    switch (c.kind()) {
      case ConceptKind::Top:
      case ConceptKind::Bot:
        break;
      case ConceptKind::Atom:
        op.index = index_in(sig.concept_names(), c.name(), "concept name");
        break;
      case ConceptKind::Not:
      case ConceptKind::And:
      case ConceptKind::Or:
        for (const Concept& k : c.operands()) op.kids.push_back(compile(k));
        break;
      case ConceptKind::Exists:
      case ConceptKind::Forall:
        op.index = index_in(sig.role_names(), c.name(), "role");
        op.kids.push_back(compile(c.filler()));
        break;
    }
    ops.push_back(std::move(op));
    int id = static_cast<int>(ops.size()) - 1;
    memo.emplace(c, id);
    return id;
  }

  std::uint64_t eval(int id, const FiniteInterpretation& I) const {
    const Op& op = ops[static_cast<std::size_t>(id)];
    const std::uint64_t full = I.full();
    switch (op.kind) {
      case ConceptKind::Top:
        return full;
      case ConceptKind::Bot:
        return 0;
      case ConceptKind::Atom:
        return I.concept_ext[op.index] & full;
      case ConceptKind::Not:
        return ~eval(op.kids[0], I) & full;
      case ConceptKind::And: {
        std::uint64_t m = full;
        for (int k : op.kids) {
          m &= eval(k, I);
          if (!m) break;
        }
        return m;
      }
      case ConceptKind::Or: {
        std::uint64_t m = 0;
        for (int k : op.kids) {
          m |= eval(k, I);
          if (m == full) break;
        }
        return m;
      }
      case ConceptKind::Exists:
      case ConceptKind::Forall: {
        const std::uint64_t f = eval(op.kids[0], I);
        const auto& succ = I.role_ext[op.index];
        std::uint64_t m = 0;
        for (std::size_t x = 0; x < I.domain_size; ++x) {
          bool in = op.kind == ConceptKind::Exists ? (succ[x] & f) != 0 : (succ[x] & ~f) == 0;
          if (in) m |= std::uint64_t{1} << x;
        }
        return m;
      }
    }
    return 0;
  }

  void add(const Sentence& s) {
    Check ch{s.kind()};
    switch (s.kind()) {
      case SentenceKind::Gci:
        ch.lhs = compile(s.lhs());
        ch.rhs = compile(s.rhs());
        break;
      case SentenceKind::InstanceOf:
        ch.a = index_in(sig.individuals(), s.individual(), "individual");
        ch.rhs = compile(s.asserted());
        break;
      case SentenceKind::RoleFact:
        ch.a = index_in(sig.individuals(), s.individual(), "individual");
        ch.b = index_in(sig.individuals(), s.object(), "individual");
        ch.universal = s.universal_role();
        if (!ch.universal) ch.role = index_in(sig.role_names(), s.role(), "role");
        break;
    }
    checks.push_back(ch);
  }

  bool holds(const Check& ch, const FiniteInterpretation& I) const {
    switch (ch.kind) {
      case SentenceKind::Gci:
        return (eval(ch.lhs, I) & ~eval(ch.rhs, I)) == 0;
      case SentenceKind::InstanceOf:
        return (eval(ch.rhs, I) >> I.ind_map[ch.a]) & 1;
      case SentenceKind::RoleFact:
        return ch.universal || ((I.role_ext[ch.role][I.ind_map[ch.a]] >> I.ind_map[ch.b]) & 1);
    }
    return false;
  }
};

}  // namespace

struct CompiledKb::Impl : Program {};

CompiledKb::CompiledKb(const KnowledgeBase& kb, const Signature& sig)
    : impl_(std::make_unique<Impl>()) {
  impl_->sig = sig;
  for (const Sentence& s : kb.sentences()) impl_->add(s);
}
CompiledKb::~CompiledKb() = default;
CompiledKb::CompiledKb(CompiledKb&&) noexcept = default;
CompiledKb& CompiledKb::operator=(CompiledKb&&) noexcept = default;

std::size_t CompiledKb::size() const { return impl_->checks.size(); }

bool CompiledKb::holds(const FiniteInterpretation& I, std::size_t sentence) const {
  return impl_->holds(impl_->checks[sentence], I);
}

bool CompiledKb::holds(const FiniteInterpretation& I) const {
  for (const auto& ch : impl_->checks)
    if (!impl_->holds(ch, I)) return false;
  return true;
}

bool satisfies(const FiniteInterpretation& I, const Sentence& s) {
  KnowledgeBase kb;
  kb.add(s);
  return satisfies(I, kb);
}

bool satisfies(const FiniteInterpretation& I, const KnowledgeBase& kb) {
  return CompiledKb(kb, *I.signature).holds(I);
}

std::uint64_t extension(const FiniteInterpretation& I, const Concept& c) {
  Program impl;
  impl.sig = *I.signature;
  return impl.eval(impl.compile(c), I);
}

ModelSet model_set(const KnowledgeBase& kb, const InterpretationSpace& space) {
  CompiledKb compiled(kb, space.signature());
  ModelSet out(space.size(), false);
  FiniteInterpretation I;
  for (std::size_t id = 0; id < space.size(); ++id) {
    space.decode(id, I);
    out[id] = compiled.holds(I);
  }
  return out;
}

ModelSet model_set(const KnowledgeBase& kb, std::size_t n) {
  return model_set(kb, InterpretationSpace(kb.signature(), n));
}

std::size_t count(const ModelSet& m) { return static_cast<std::size_t>(std::count(m.begin(), m.end(), true)); }

bool subset_of(const ModelSet& a, const ModelSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Ranks

namespace {

// levels[i][k] = the k-fold relaxation of sentence i, compiled; shorter
// lists where relaxation stops applying.
struct Ladder {
  std::vector<std::vector<CompiledKb>> levels;

  Ladder(const KnowledgeBase& kb, const Signature& sig, const RankSpec& spec) {
    Reasoner elig(spec.eligibility);
    for (const Sentence& s : kb.sentences()) {
      std::vector<CompiledKb> rungs;
      for (std::size_t k = 0; k <= spec.max_sum; ++k) {
        KnowledgeBase one;
        try {
          one.add(relax_formula(s, spec.mode, spec.op, k, elig));
        } catch (const NotEnoughExceptions&) {
          break;
        } catch (const UnsupportedShape&) {
          break;
        }
        rungs.emplace_back(one, sig);
      }
      levels.push_back(std::move(rungs));
    }
  }

  std::optional<std::size_t> rank(const FiniteInterpretation& I, std::size_t max_sum) const {
    std::size_t total = 0;
    for (const auto& rungs : levels) {
      std::size_t k = 0;
      while (k < rungs.size() && !rungs[k].holds(I)) ++k;
      if (k == rungs.size()) return std::nullopt;
      total += k;
      if (total > max_sum) return std::nullopt;
    }
    return total;
  }
};

}  // namespace

std::optional<std::size_t> rank(const FiniteInterpretation& I, const KnowledgeBase& kb,
                                const RankSpec& spec) {
  return Ladder(kb, *I.signature, spec).rank(I, spec.max_sum);
}

RankTable rank_table(const KnowledgeBase& kb, const InterpretationSpace& space,
                     const RankSpec& spec) {
  Ladder ladder(kb, space.signature(), spec);
  RankTable t;
  t.rank.resize(space.size());
  FiniteInterpretation I;
  for (std::size_t id = 0; id < space.size(); ++id) {
    space.decode(id, I);
    t.rank[id] = ladder.rank(I, spec.max_sum);
  }
  return t;
}

std::string describe(const FiniteInterpretation& I) {
  const Signature& sig = *I.signature;
  std::ostringstream os;
  os << "[n=" << I.domain_size;
  for (std::size_t c = 0; c < sig.concept_names().size(); ++c)
    os << ' ' << sig.concept_names()[c] << '=' << I.concept_ext[c];
  for (std::size_t r = 0; r < sig.role_names().size(); ++r) {
    os << ' ' << sig.role_names()[r] << "=";
    for (std::size_t x = 0; x < I.domain_size; ++x) os << (x ? "," : "") << I.role_ext[r][x];
  }
  for (std::size_t i = 0; i < sig.individuals().size(); ++i)
    os << ' ' << sig.individuals()[i] << "->" << I.ind_map[i];
  os << ']';
  return os.str();
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Holds:
      return "HOLDS";
    case Status::Fails:
      return "FAILS";
    case Status::NotDecidable:
      return "UNDECIDED";
  }
  return "?";
}

namespace {

std::string render_verdict(const Verdict& v, const char* prefix, std::optional<std::uint64_t> seed) {
  std::ostringstream os;
  os << prefix << ' ' << v.name << ": " << status_name(v.status);
  if (v.status == Status::Fails && seed) os << " seed=" << *seed;
  if (!v.scope.empty()) os << " (" << v.scope << ")";
  if (!v.evidence.empty()) os << " -- " << v.evidence;
  os << '\n';
  return os.str();
}

std::string domain_scope(std::size_t n) { return "domain<=" + std::to_string(n); }

std::string kb_inline(const KnowledgeBase& kb) {
  std::string out = "{";
  for (std::size_t i = 0; i < kb.size(); ++i) {
    if (i) out += " ";
    out += render(kb[i]);
  }
  return out + "}";
}

Signature merged_signature(std::initializer_list<const KnowledgeBase*> kbs) {
  Signature sig;
  for (const KnowledgeBase* kb : kbs) sig = sig.merged(kb->signature());
  return sig;
}

std::string rank_text(const std::optional<std::size_t>& r) {
  return r ? std::to_string(*r) : std::string("unreached");
}

std::string describe(const InterpretationSpace& space, std::size_t id) {
  return "#" + std::to_string(id) + describe(space.at(id));
}

}  // namespace

// ---------------------------------------------------------------------------
// Faithful assignment

bool FaReport::all_hold() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.status == Status::Holds; });
}

std::string FaReport::render() const {
  std::string out;
  for (const Verdict& v : verdicts) out += render_verdict(v, "FA", std::nullopt);
  return out;
}

std::vector<KnowledgeBase> equivalent_variants(const KnowledgeBase& kb, std::uint64_t seed,
                                               std::size_t how_many) {
  std::mt19937_64 rng(seed);
  std::vector<Concept> atoms;
  for (const auto& n : kb.signature().concept_names()) atoms.push_back(Concept::atom(n));
  if (atoms.empty()) atoms.push_back(Concept::top());
  auto pick = [&]() -> Concept {
    Concept a = atoms[rng() % atoms.size()];
    return rng() % 2 ? a : Concept::negate(a);
  };

  Reasoner reasoner(kb);
  std::vector<KnowledgeBase> out;
  for (std::size_t attempt = 0; out.size() < how_many && attempt < 8 * how_many + 8; ++attempt) {
    std::optional<Sentence> extra;
    if (!kb.empty() && rng() % 4 != 0) {
      const Sentence& s = kb[rng() % kb.size()];
      switch (s.kind()) {
        case SentenceKind::Gci:
          extra = rng() % 2 ? Sentence::gci(Concept::conj({s.lhs(), pick()}), s.rhs())
                            : Sentence::gci(s.lhs(), Concept::disj({s.rhs(), pick()}));
          break;
        case SentenceKind::InstanceOf:
          extra = Sentence::instance_of(s.individual(), Concept::disj({s.asserted(), pick()}));
          break;
        case SentenceKind::RoleFact:
          if (s.universal_role()) break;
          extra = Sentence::instance_of(s.individual(), Concept::exists(s.role(), Concept::top()));
          break;
      }
    } else {
      Concept a = pick();
      extra = Sentence::gci(a, Concept::disj({a, pick()}));
    }
    if (!extra || kb.contains(*extra) || !reasoner.entails(*extra)) continue;
    KnowledgeBase v = kb;
    v.add(*extra);
    v.set_dialect(std::max(v.dialect(), v.minimal_dialect()));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  return out;
}

FaReport check_faithful_assignment(const KnowledgeBase& kb, const RankSpec& spec, std::size_t n,
                                   std::vector<KnowledgeBase> variants, std::uint64_t seed) {
  if (variants.empty()) variants = equivalent_variants(kb, seed);
  Signature sig = kb.signature();
  for (const auto& v : variants) sig = sig.merged(v.signature());
  InterpretationSpace space(sig, n);
  RankTable table = rank_table(kb, space, spec);
  ModelSet models = model_set(kb, space);

  FaReport report;
  report.unreached = static_cast<std::size_t>(
      std::count(table.rank.begin(), table.rank.end(), std::nullopt));
  const std::string scope = domain_scope(n);

  // (1) models pairwise non-strict: all have the same rank (0).
  Verdict v1{"FA1", Status::Holds, scope, ""};
  for (std::size_t id = 0; id < space.size(); ++id) {
    if (models[id] && table.rank[id] != std::size_t{0}) {
      v1.status = Status::Fails;
      v1.evidence = "model " + describe(space, id) + " has rank " + rank_text(table.rank[id]);
      break;
    }
  }
  report.verdicts.push_back(v1);

  // (2) models strictly below non-models.
  Verdict v2{"FA2", Status::Holds, scope, ""};
  std::size_t undecided = 0;
  for (std::size_t id = 0; id < space.size(); ++id) {
    if (models[id]) continue;
    if (!table.rank[id]) {
      ++undecided;  // unreached is maximal, so strictly above rank 0
      continue;
    }
    if (*table.rank[id] == 0) {
      v2.status = Status::Fails;
      v2.evidence = "non-model " + describe(space, id) + " has rank 0";
      break;
    }
  }
  if (v2.status == Status::Holds && undecided > 0)
    v2.evidence = std::to_string(undecided) + " unreached non-models";
  report.verdicts.push_back(v2);

  // (3) equal model sets give the same pre-order.
  Verdict v3{"FA3", Status::Holds, scope, ""};
  std::size_t skipped_pairs = 0;
  for (const KnowledgeBase& other : variants) {
    if (model_set(other, space) != models) continue;
    ++report.variants_checked;
    RankTable t2 = rank_table(other, space, spec);
    // Same pre-order iff rank values map to each other monotonically.
    std::map<std::size_t, std::set<std::size_t>> forward;
    std::map<std::size_t, std::set<std::size_t>> backward;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> sample;
    for (std::size_t id = 0; id < space.size(); ++id) {
      if (!table.rank[id] || !t2.rank[id]) {
        if (table.rank[id] || t2.rank[id]) ++skipped_pairs;
        continue;
      }
      forward[*table.rank[id]].insert(*t2.rank[id]);
      backward[*t2.rank[id]].insert(*table.rank[id]);
      sample.emplace(std::make_pair(*table.rank[id], *t2.rank[id]), id);
    }
    bool ok = true;
    for (const auto& [r, s] : forward) ok = ok && s.size() == 1;
    for (const auto& [r, s] : backward) ok = ok && s.size() == 1;
    if (ok) {
      std::optional<std::size_t> prev;
      for (const auto& [r, s] : forward) {
        if (prev && *s.begin() <= *prev) ok = false;
        prev = *s.begin();
      }
    }
    if (!ok) {
      v3.status = Status::Fails;
      std::ostringstream os;
      os << "variant " << kb_inline(other) << " ranks (kb->variant):";
      for (const auto& [pair, id] : sample)
        os << ' ' << pair.first << "->" << pair.second << " e.g. " << describe(space, id);
      v3.evidence = os.str();
      break;
    }
  }
  if (v3.status == Status::Holds) {
    if (report.variants_checked == 0) {
      v3.status = Status::NotDecidable;
      v3.evidence = "no equivalent variant available";
    } else if (skipped_pairs > 0) {
      v3.evidence = std::to_string(skipped_pairs) + " interpretations reached under only one side";
    }
  }
  report.verdicts.push_back(v3);
  return report;
}

// ---------------------------------------------------------------------------
// Postulates

bool PostulateReport::all_hold() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.status == Status::Holds; });
}

std::string PostulateReport::render() const {
  std::string out;
  for (const Verdict& v : verdicts) out += render_verdict(v, "POSTULATE", seed);
  return out;
}

namespace {

std::set<Sentence> as_set(const KnowledgeBase& kb) {
  return {kb.sentences().begin(), kb.sentences().end()};
}

bool same_sentences(const KnowledgeBase& a, const KnowledgeBase& b) {
  return as_set(a) == as_set(b);
}

// Relevance by its definition: every phi of T missing from the result has
// a T-subset X containing T cap result with X + T' consistent and
// X + phi + T' inconsistent.
std::optional<Sentence> relevance_violation(const KnowledgeBase& t, const KnowledgeBase& tp,
                                            const KnowledgeBase& result,
                                            const ReasonerOptions& options) {
  std::vector<std::size_t> must;
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < t.size(); ++i)
    (result.contains(t[i]) ? must : free).push_back(i);
  if (free.size() > 16) throw ResourceExceeded("relevance check over more than 16 sentences");
  for (std::size_t phi : free) {
    bool found = false;
    for (std::uint32_t mask = 0; !found && mask < (std::uint32_t{1} << free.size()); ++mask) {
      if (mask & (std::uint32_t{1} << (std::find(free.begin(), free.end(), phi) - free.begin())))
        continue;
      std::vector<std::size_t> idx = must;
      for (std::size_t j = 0; j < free.size(); ++j)
        if (mask & (std::uint32_t{1} << j)) idx.push_back(free[j]);
      std::sort(idx.begin(), idx.end());
      KnowledgeBase x = t.subset(idx).united(tp);
      if (!Reasoner(x, options).is_satisfiable()) continue;
      KnowledgeBase with = x;
      with.add(t[phi]);
      if (!Reasoner(with, options).is_satisfiable()) found = true;
    }
    if (!found) return t[phi];
  }
  return std::nullopt;
}

// A random sentence over the names of sig (atoms possibly negated).
Sentence sample_sentence(const Signature& sig, std::mt19937_64& rng) {
  std::vector<Concept> atoms;
  for (const auto& n : sig.concept_names()) atoms.push_back(Concept::atom(n));
  if (atoms.empty()) atoms.push_back(Concept::top());
  auto lit = [&]() {
    Concept a = atoms[rng() % atoms.size()];
    return rng() % 3 == 0 ? Concept::negate(a) : a;
  };
  auto make = [&]() {
    switch (rng() % 4) {
      case 0:
        return Concept::conj({lit(), lit()});
      case 1:
        return Concept::disj({lit(), lit()});
      case 2:
        if (!sig.role_names().empty())
          return Concept::exists(sig.role_names()[rng() % sig.role_names().size()], lit());
        [[fallthrough]];
      default:
        return lit();
    }
  };
  if (!sig.individuals().empty() && rng() % 2 == 0)
    return Sentence::instance_of(sig.individuals()[rng() % sig.individuals().size()], make());
  return Sentence::gci(lit(), make());
}

}  // namespace

PostulateReport check_postulates(const KnowledgeBase& t, const KnowledgeBase& t_prime,
                                 const RevisionConfig& config, const PostulateOptions& options) {
  if (config.conflict != ConflictKind::Unsat)
    throw InvalidArgument("postulates are checked with the unsat conflict predicate");
  const ReasonerOptions& ropt = config.reasoner;
  ReviseFn revise_fn = options.revise_fn;
  if (!revise_fn) {
    revise_fn = [&config](const KnowledgeBase& a, const KnowledgeBase& b) {
      return revise(a, b, config).revised;
    };
  }
  auto consistent = [&](const KnowledgeBase& kb) { return Reasoner(kb, ropt).is_satisfiable(); };

  std::mt19937_64 rng(options.seed);
  PostulateReport report;
  report.seed = options.seed;
  report.max_domain = options.max_domain;
  report.t = t;
  report.t_prime = t_prime;
  if (options.t_second) {
    report.t_second = *options.t_second;
  } else {
    Signature sig = t.signature().merged(t_prime.signature());
    KnowledgeBase tss(Dialect::ALC, {});
    tss.add(sample_sentence(sig, rng));
    report.t_second = tss;
  }
  const KnowledgeBase& t2nd = report.t_second;
  const std::string scope = domain_scope(options.max_domain);

  std::optional<KnowledgeBase> result;
  std::string result_error;
  try {
    result = revise_fn(t, t_prime);
  } catch (const ConflictingInput& e) {
    result_error = e.what();
  } catch (const BudgetExceeded& e) {
    result_error = e.what();
  }
  const bool tp_consistent = consistent(t_prime);

  std::vector<KnowledgeBase> t_vars = equivalent_variants(t, rng(), 2);
  std::vector<KnowledgeBase> tp_vars = equivalent_variants(t_prime, rng(), 2);
  Signature sig = merged_signature({&t, &t_prime, &t2nd});
  for (const auto& v : t_vars) sig = sig.merged(v.signature());
  for (const auto& v : tp_vars) sig = sig.merged(v.signature());
  if (result) sig = sig.merged(result->signature());
  InterpretationSpace space(sig, options.max_domain);

  auto undecided = [&](const char* name) {
    return Verdict{name, tp_consistent ? Status::NotDecidable : Status::Holds, "exact",
                   tp_consistent ? "no result: " + result_error : "T' inconsistent: vacuous"};
  };

  // G1
  if (!result) {
    report.verdicts.push_back(undecided("G1"));
  } else {
    ModelSet mr = model_set(*result, space);
    ModelSet mp = model_set(t_prime, space);
    Verdict v{"G1", Status::Holds, scope, ""};
    for (std::size_t id = 0; id < space.size(); ++id) {
      if (mr[id] && !mp[id]) {
        v.status = Status::Fails;
        v.evidence = "result model " + describe(space, id) + " violates T'";
        break;
      }
    }
    report.verdicts.push_back(v);
  }

  // G2
  {
    KnowledgeBase un = t.united(t_prime);
    Verdict v{"G2", Status::Holds, "exact", ""};
    if (consistent(un)) {
      if (!result) {
        v.status = Status::Fails;
        v.evidence = "no result for a consistent union: " + result_error;
      } else if (!same_sentences(*result, un)) {
        v.status = Status::Fails;
        v.evidence = "result " + kb_inline(*result) + " differs from T+T' " + kb_inline(un);
      }
    } else {
      v.evidence = "T+T' inconsistent: vacuous";
    }
    report.verdicts.push_back(v);
  }

  // G3
  {
    Verdict v{"G3", Status::Holds, "exact", ""};
    if (tp_consistent) {
      if (!result) {
        v.status = Status::Fails;
        v.evidence = "no result for consistent T': " + result_error;
      } else if (!consistent(*result)) {
        v.status = Status::Fails;
        v.evidence = "result " + kb_inline(*result) + " is inconsistent";
      }
    } else {
      v.evidence = "T' inconsistent: vacuous";
    }
    report.verdicts.push_back(v);
  }

  // G4
  if (!result) {
    report.verdicts.push_back(undecided("G4"));
  } else {
    Verdict v{"G4", Status::Holds, scope, ""};
    ModelSet base = model_set(*result, space);
    std::vector<std::pair<KnowledgeBase, KnowledgeBase>> pairs;
    for (const auto& a : t_vars) pairs.emplace_back(a, t_prime);
    for (const auto& b : tp_vars) pairs.emplace_back(t, b);
    if (!t_vars.empty() && !tp_vars.empty()) pairs.emplace_back(t_vars[0], tp_vars[0]);
    for (const auto& [a, b] : pairs) {
      KnowledgeBase other;
      try {
        other = revise_fn(a, b);
      } catch (const Error& e) {
        v.status = Status::Fails;
        v.evidence = "variant (" + kb_inline(a) + ", " + kb_inline(b) + ") has no result: " + e.what();
        break;
      }
      Signature s2 = other.signature();
      bool fits = true;
      for (const auto& n : s2.concept_names()) fits = fits && sig.has_concept(n);
      for (const auto& n : s2.role_names()) fits = fits && sig.has_role(n);
      for (const auto& n : s2.individuals()) fits = fits && sig.has_individual(n);
      if (!fits) continue;
      ModelSet mo = model_set(other, space);
      if (mo != base) {
        v.status = Status::Fails;
        for (std::size_t id = 0; id < space.size(); ++id) {
          if (mo[id] != base[id]) {
            v.evidence = "variant (" + kb_inline(a) + ", " + kb_inline(b) + ") gives " +
                         kb_inline(other) + " vs " + kb_inline(*result) + "; " +
                         describe(space, id) + " is a model of only the " +
                         (base[id] ? "original" : "variant") + " result";
            break;
          }
        }
        break;
      }
    }
    report.verdicts.push_back(v);
  }

  // T o (T' + T'') for G5 and G6.
  KnowledgeBase tp_tss = t_prime.united(t2nd);
  std::optional<KnowledgeBase> result2;
  std::string result2_error;
  try {
    result2 = revise_fn(t, tp_tss);
  } catch (const ConflictingInput& e) {
    result2_error = e.what();
  } catch (const BudgetExceeded& e) {
    result2_error = e.what();
  }
  const bool tp_tss_consistent = consistent(tp_tss);

  // G5
  {
    Verdict v{"G5", Status::Holds, scope, ""};
    if (!tp_tss_consistent) {
      v.evidence = "T'+T'' inconsistent: vacuous";
    } else if (!result || !result2) {
      v.status = Status::NotDecidable;
      v.evidence = "no result: " + (result ? result2_error : result_error);
    } else {
      ModelSet lhs = model_set(*result, space);
      ModelSet m2 = model_set(t2nd, space);
      ModelSet rhs = model_set(*result2, space);
      for (std::size_t id = 0; id < space.size(); ++id) {
        if (lhs[id] && m2[id] && !rhs[id]) {
          v.status = Status::Fails;
          v.evidence = "T''=" + kb_inline(t2nd) + "; " + describe(space, id) +
                       " models (T o T') + T'' but not T o (T'+T'') = " + kb_inline(*result2);
          break;
        }
      }
    }
    report.verdicts.push_back(v);
  }

  // G6
  {
    Verdict v{"G6", Status::Holds, "exact", ""};
    if (!consistent(t.united(tp_tss))) {
      v.evidence = "T+T'+T'' inconsistent: vacuous";
    } else if (!result || !result2) {
      v.status = Status::Fails;
      v.evidence = "no result: " + (result ? result2_error : result_error);
    } else {
      KnowledgeBase rhs = result->united(t2nd);
      if (!same_sentences(*result2, rhs)) {
        v.status = Status::Fails;
        v.evidence = "T''=" + kb_inline(t2nd) + "; " + kb_inline(*result2) + " vs " + kb_inline(rhs);
      }
    }
    report.verdicts.push_back(v);
  }

  // Relevance
  if (!result) {
    report.verdicts.push_back(undecided("Relevance"));
  } else {
    Verdict v{"Relevance", Status::Holds, "exact", ""};
    if (auto bad = relevance_violation(t, t_prime, *result, ropt)) {
      v.status = Status::Fails;
      v.evidence = "no witness set for removed sentence " + render(*bad);
    }
    report.verdicts.push_back(v);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Representation

RepresentationReport check_representation(const KnowledgeBase& t, const KnowledgeBase& t_prime,
                                          const RevisionConfig& config, std::size_t n,
                                          std::size_t max_sum) {
  RepresentationReport rep;
  KnowledgeBase result;
  try {
    result = revise(t, t_prime, config).revised;
  } catch (const ConflictingInput& e) {
    rep.status = Status::NotDecidable;
    rep.evidence = e.what();
    return rep;
  }
  Signature sig = merged_signature({&t, &t_prime, &result});
  InterpretationSpace space(sig, n);

  KnowledgeBase absurd;
  absurd.add(Sentence::gci(Concept::top(), Concept::bot()));
  rep.m_star = count(model_set(absurd, space));

  RankSpec spec;
  spec.mode = config.mode;
  spec.op = config.op;
  spec.max_sum = max_sum;
  spec.eligibility = config.eligibility == Eligibility::Union ? t.united(t_prime) : t_prime;
  RankTable table = rank_table(t, space, spec);
  ModelSet mp = model_set(t_prime, space);
  ModelSet mr = model_set(result, space);
  rep.result_models = count(mr);

  std::optional<std::size_t> best;
  bool any_unreached = false;
  for (std::size_t id = 0; id < space.size(); ++id) {
    if (!mp[id]) continue;
    if (!table.rank[id]) {
      any_unreached = true;
      continue;
    }
    if (!best || *table.rank[id] < *best) best = table.rank[id];
  }
  rep.minimal_rank = best;
  if (!best) {
    rep.status = Status::NotDecidable;
    rep.evidence = "no model of T' reached within max_sum " + std::to_string(max_sum);
    return rep;
  }
  (void)any_unreached;  // unreached ranks are maximal, never minimal

  std::ostringstream diff;
  std::size_t shown = 0;
  std::size_t mismatches = 0;
  for (std::size_t id = 0; id < space.size(); ++id) {
    bool minimal = mp[id] && table.rank[id] == best;
    if (minimal) ++rep.minimal_models;
    if (minimal == mr[id]) continue;
    ++mismatches;
    if (shown++ < 4)
      diff << (shown > 1 ? "; " : "") << (mr[id] ? "only in result: " : "only minimal: ")
           << describe(space, id) << " rank " << rank_text(table.rank[id]);
  }
  if (rep.m_star != 0) {
    rep.status = Status::Fails;
    rep.evidence = "interpretations satisfying Top [= Bot: " + std::to_string(rep.m_star);
  } else if (mismatches > 0) {
    rep.status = Status::Fails;
    rep.evidence = std::to_string(mismatches) + " differing interpretations (min rank " +
                   std::to_string(*best) + ", result " + kb_inline(result) + "): " + diff.str();
  }
  return rep;
}

}  // namespace relaxrev
