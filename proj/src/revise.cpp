#include "relaxrev/revise.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "relaxrev/error.hpp"
#include "relaxrev/syntax.hpp"

namespace relaxrev {

namespace {

using Mask = std::uint32_t;

KnowledgeBase subset_of(const KnowledgeBase& kb, Mask mask) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < kb.size(); ++i)
    if (mask & (Mask{1} << i)) idx.push_back(i);
  return kb.subset(idx);
}

// All ways of writing `total` as an ordered sum of `parts` nonnegative
// numbers, first position largest first: (1,0) before (0,1).
void compositions(std::size_t total, std::size_t parts, std::vector<std::size_t>& cur,
                  std::vector<DegreeMap>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.emplace_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t first = total + 1; first-- > 0;) {
    cur.push_back(first);
    compositions(total - first, parts, cur, out);
    cur.pop_back();
  }
}

std::vector<DegreeMap> compositions(std::size_t total, std::size_t parts) {
  std::vector<DegreeMap> out;
  if (parts == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  std::vector<std::size_t> cur;
  compositions(total, parts, cur, out);
  return out;
}

Direction required_direction(FormulaRelaxMode mode) {
  return mode == FormulaRelaxMode::RelaxRHS ? Direction::Relax : Direction::Retract;
}

std::size_t modified_size(const Sentence& s, FormulaRelaxMode mode) {
  switch (s.kind()) {
    case SentenceKind::Gci:
      return mode == FormulaRelaxMode::RelaxRHS ? s.rhs().size() : s.lhs().size();
    case SentenceKind::InstanceOf:
      return s.asserted().size();
    case SentenceKind::RoleFact:
      return 1;
  }
  return 0;
}

KnowledgeBase candidate_kb(const KnowledgeBase& conflicting, const DegreeMap& k,
                           const KnowledgeBase& retained, const KnowledgeBase& t2,
                           const RevisionConfig& config, Reasoner& eligibility) {
  KnowledgeBase relaxed = relax_theory(conflicting, k, config.mode, config.op, eligibility);
  return relaxed.united(retained).united(t2);
}

std::vector<DegreeMap> search(const KnowledgeBase& conflicting, const KnowledgeBase& retained,
                              const KnowledgeBase& t2, const RevisionConfig& config,
                              Reasoner& eligibility, const Signature& sig,
                              std::vector<TraceEntry>* trace, std::size_t partition) {
  if (config.op.direction() != required_direction(config.mode)) {
    throw InvalidArgument(std::string(operator_name(config.op.id())) +
                          " does not fit mode " + std::string(mode_name(config.mode)));
  }
  std::size_t tried = 0;
  for (std::size_t s = 0; s <= config.max_total_degree; ++s) {
    std::vector<DegreeMap> passing;
    for (const DegreeMap& k : compositions(s, conflicting.size())) {
      TraceEntry entry;
      entry.partition = partition;
      entry.degrees = k;
      ++tried;
      try {
        KnowledgeBase cand = candidate_kb(conflicting, k, retained, t2, config, eligibility);
        entry.verdict = has_conflict(cand, config.conflict, config.reasoner, sig)
                            ? TraceEntry::Verdict::Conflict
                            : TraceEntry::Verdict::Passed;
      } catch (const NotEnoughExceptions& e) {
        entry.verdict = TraceEntry::Verdict::NotApplicable;
        entry.note = e.what();
      } catch (const UnsupportedShape& e) {
        entry.verdict = TraceEntry::Verdict::NotApplicable;
        entry.note = e.what();
      }
      if (trace) trace->push_back(entry);
      if (entry.verdict == TraceEntry::Verdict::Passed) {
        passing.push_back(k);
        if (!config.enumerate_all_minima) break;
      }
    }
    if (!passing.empty()) return passing;
  }
  throw BudgetExceeded("no degree map of total <= " + std::to_string(config.max_total_degree) +
                       " resolves the conflict (" + std::to_string(tried) +
                       " candidates tried)");
}

Reasoner eligibility_reasoner(const KnowledgeBase& t1, const KnowledgeBase& t2,
                              const RevisionConfig& config) {
  if (config.eligibility == Eligibility::Union) return Reasoner(t1.united(t2), config.reasoner);
  return Reasoner(t2, config.reasoner);
}

KnowledgeBase assemble(const KnowledgeBase& t1, const KnowledgeBase& t2, const Partition& p,
                       const DegreeMap& degrees, const RevisionConfig& config,
                       Reasoner& eligibility) {
  KnowledgeBase out(std::max(t1.dialect(), t2.dialect()),
                    t1.signature().merged(t2.signature()));
  for (std::size_t i = 0; i < t1.size(); ++i) {
    auto it = std::find(p.conflicting.begin(), p.conflicting.end(), i);
    if (it == p.conflicting.end()) {
      out.add(t1[i]);
    } else {
      std::size_t k = degrees.k[static_cast<std::size_t>(it - p.conflicting.begin())];
      out.add(relax_formula(t1[i], config.mode, config.op, k, eligibility));
    }
  }
  for (const Sentence& s : t2.sentences()) out.add(s);
  out.set_dialect(std::max(out.dialect(), out.minimal_dialect()));
  return out;
}

std::string index_list(const std::vector<std::size_t>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + "}";
}

std::string comma_list(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::vector<std::size_t> spread(const Partition& p, const DegreeMap& d, std::size_t n) {
  std::vector<std::size_t> out(n, 0);
  for (std::size_t j = 0; j < p.conflicting.size() && j < d.size(); ++j)
    out[p.conflicting[j]] = d.k[j];
  return out;
}

}  // namespace

std::string_view conflict_name(ConflictKind k) {
  return k == ConflictKind::Unsat ? "unsat" : "incoherence";
}

std::optional<ConflictKind> parse_conflict(std::string_view text) {
  if (text == "unsat") return ConflictKind::Unsat;
  if (text == "incoherence") return ConflictKind::Incoherence;
  return std::nullopt;
}

bool has_conflict(const KnowledgeBase& kb, ConflictKind kind, const ReasonerOptions& options,
                  const Signature& sig) {
  Reasoner r(kb, options);
  if (!r.is_satisfiable()) return true;
  if (kind == ConflictKind::Unsat) return false;
  const auto& names = sig.empty() ? kb.signature().concept_names() : sig.concept_names();
  for (const auto& n : names)
    if (!r.is_satisfiable(Concept::atom(n))) return true;
  return false;
}

std::vector<std::size_t> RevisionResult::full_degrees(std::size_t t1_size) const {
  return spread(partition, degrees, t1_size);
}

std::vector<Partition> find_partitions(const KnowledgeBase& t1, const KnowledgeBase& t2,
                                       ConflictKind conflict, const ReasonerOptions& options,
                                       std::size_t budget) {
  std::size_t n = t1.size();
  if (n > budget || n > 30) {
    throw ResourceExceeded("old belief has " + std::to_string(n) +
                           " sentences; partition budget is " + std::to_string(budget));
  }
  Signature sig = t1.signature().merged(t2.signature());
  std::vector<Mask> maximal;
  std::vector<Mask> conflicts;
  std::vector<Mask> by_size[32];
  for (Mask m = 0; m < (Mask{1} << n); ++m) by_size[std::popcount(m)].push_back(m);
  for (std::size_t size = n + 1; size-- > 0;) {
    for (Mask m : by_size[size]) {
      bool covered = std::any_of(maximal.begin(), maximal.end(),
                                 [&](Mask big) { return (m & big) == m; });
      if (covered) continue;
      bool known_bad = std::any_of(conflicts.begin(), conflicts.end(),
                                   [&](Mask bad) { return (m & bad) == bad; });
      if (known_bad) continue;
      if (has_conflict(subset_of(t1, m).united(t2), conflict, options, sig))
        conflicts.push_back(m);
      else
        maximal.push_back(m);
    }
  }
  std::vector<Partition> out;
  for (Mask m : maximal) {
    Partition p;
    for (std::size_t i = 0; i < n; ++i)
      ((m & (Mask{1} << i)) ? p.retained : p.conflicting).push_back(i);
    out.push_back(std::move(p));
  }
  std::stable_sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    if (a.retained.size() != b.retained.size()) return a.retained.size() > b.retained.size();
    return a.conflicting < b.conflicting;
  });
  return out;
}

std::vector<DegreeMap> minimal_degree_search(const KnowledgeBase& conflicting,
                                             const KnowledgeBase& retained,
                                             const KnowledgeBase& t2, const RevisionConfig& config,
                                             std::vector<TraceEntry>* trace) {
  Reasoner elig = eligibility_reasoner(conflicting.united(retained), t2, config);
  Signature sig = conflicting.signature().merged(retained.signature()).merged(t2.signature());
  return search(conflicting, retained, t2, config, elig, sig, trace, 0);
}

KnowledgeBase assemble_revision(const KnowledgeBase& t1, const KnowledgeBase& t2,
                                const Partition& p, const DegreeMap& degrees,
                                const RevisionConfig& config) {
  Reasoner elig = eligibility_reasoner(t1, t2, config);
  return assemble(t1, t2, p, degrees, config, elig);
}

RevisionResult revise(const KnowledgeBase& t1, const KnowledgeBase& t2,
                      const RevisionConfig& config) {
  Signature sig = t1.signature().merged(t2.signature());
  if (has_conflict(t2, config.conflict, config.reasoner, sig))
    throw ConflictingInput("the new belief has a conflict on its own (" +
                           std::string(conflict_name(config.conflict)) + ")");
  RevisionResult result;
  result.partitions =
      find_partitions(t1, t2, config.conflict, config.reasoner, config.partition_budget);
  Reasoner elig = eligibility_reasoner(t1, t2, config);

  struct Candidate {
    std::size_t partition;
    std::size_t order;  // position in the search order of that partition
    DegreeMap degrees;
    std::size_t modified;
  };
  std::vector<Candidate> best;
  std::optional<std::size_t> best_cost;
  for (std::size_t pi = 0; pi < result.partitions.size(); ++pi) {
    const Partition& p = result.partitions[pi];
    RevisionConfig bounded = config;
    if (best_cost) bounded.max_total_degree = std::min(config.max_total_degree, *best_cost);
    std::vector<DegreeMap> found;
    try {
      found = search(t1.subset(p.conflicting), t1.subset(p.retained), t2, bounded, elig, sig,
                     &result.trace, pi);
    } catch (const BudgetExceeded&) {
      continue;
    }
    std::size_t cost = found.front().total();
    if (!best_cost || cost < *best_cost) {
      best.clear();
      best_cost = cost;
    }
    for (std::size_t j = 0; j < found.size(); ++j) {
      std::size_t modified = 0;
      for (std::size_t c = 0; c < p.conflicting.size(); ++c)
        if (found[j].k[c] > 0) modified += modified_size(t1[p.conflicting[c]], config.mode);
      best.push_back({pi, j, found[j], modified});
    }
  }
  if (!best_cost) {
    std::size_t na = std::count_if(result.trace.begin(), result.trace.end(), [](const auto& e) {
      return e.verdict == TraceEntry::Verdict::NotApplicable;
    });
    throw BudgetExceeded("no repair of total degree <= " +
                         std::to_string(config.max_total_degree) + " over " +
                         std::to_string(result.partitions.size()) + " partition(s); " +
                         std::to_string(result.trace.size()) + " candidates tried, " +
                         std::to_string(na) + " not applicable");
  }
  std::stable_sort(best.begin(), best.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.modified, a.partition, a.order) < std::tie(b.modified, b.partition, b.order);
  });
  const Candidate& win = best.front();
  result.chosen = win.partition;
  result.partition = result.partitions[win.partition];
  result.degrees = win.degrees;
  result.total_cost = *best_cost;
  result.revised = assemble(t1, t2, result.partition, result.degrees, config, elig);
  for (std::size_t i = 1; i < best.size(); ++i)
    result.alternatives.push_back({best[i].partition, best[i].degrees});
  return result;
}

bool check_relevance(const KnowledgeBase& t1, const KnowledgeBase& t2,
                     const RevisionResult& result, ConflictKind conflict,
                     const ReasonerOptions& options) {
  Signature sig = t1.signature().merged(t2.signature());
  std::vector<std::size_t> x_idx;
  std::vector<std::size_t> removed;
  for (std::size_t i = 0; i < t1.size(); ++i) {
    bool retained = std::find(result.partition.retained.begin(), result.partition.retained.end(),
                              i) != result.partition.retained.end();
    bool kept = result.revised.contains(t1[i]);
    if (retained || kept) x_idx.push_back(i);
    if (!kept) removed.push_back(i);
  }
  if (removed.empty()) return true;
  KnowledgeBase x = t1.subset(x_idx);
  if (has_conflict(x.united(t2), conflict, options, sig)) return false;
  for (std::size_t i : removed) {
    KnowledgeBase with = x;
    with.add(t1[i]);
    if (!has_conflict(with.united(t2), conflict, options, sig)) return false;
  }
  return true;
}

std::string render_report(const KnowledgeBase& t1, const RevisionResult& result,
                          const RevisionConfig& config) {
  std::ostringstream out;
  out << "operator: " << operator_name(config.op.id()) << "\n";
  out << "mode: " << mode_name(config.mode) << "\n";
  out << "conflict: " << conflict_name(config.conflict) << "\n";
  out << "partitions: " << result.partitions.size() << "\n";
  for (std::size_t i = 0; i < result.partitions.size(); ++i) {
    const Partition& p = result.partitions[i];
    out << "  [" << i << "] conflicting " << index_list(p.conflicting) << " retained "
        << index_list(p.retained) << "\n";
  }
  out << "chosen partition: " << result.chosen << "\n";
  out << "degrees: " << index_list(result.full_degrees(t1.size())) << "\n";
  out << "cost: " << result.total_cost << "\n";
  out << "alternatives: " << result.alternatives.size() << "\n";
  for (const Alternative& a : result.alternatives) {
    out << "  partition " << a.partition << " degrees "
        << index_list(spread(result.partitions[a.partition], a.degrees, t1.size())) << "\n";
  }
  out << "candidates tried: " << result.trace.size() << "\n";
  out << "revised:\n";
  for (const Sentence& s : result.revised.sentences()) out << "  " << render(s) << "\n";
  return out.str();
}

std::string render_porcelain(const KnowledgeBase& t1, const RevisionResult& result,
                             const RevisionConfig& config) {
  std::ostringstream out;
  out << "operator=" << operator_name(config.op.id()) << "\n";
  out << "mode=" << mode_name(config.mode) << "\n";
  out << "conflict=" << conflict_name(config.conflict) << "\n";
  out << "partitions=" << result.partitions.size() << "\n";
  out << "partition.conflicting=" << comma_list(result.partition.conflicting) << "\n";
  out << "partition.retained=" << comma_list(result.partition.retained) << "\n";
  out << "degrees=" << comma_list(result.full_degrees(t1.size())) << "\n";
  out << "cost=" << result.total_cost << "\n";
  out << "alternatives=" << result.alternatives.size() << "\n";
  for (std::size_t i = 0; i < result.alternatives.size(); ++i) {
    const Alternative& a = result.alternatives[i];
    out << "alternative." << i << ".degrees="
        << comma_list(spread(result.partitions[a.partition], a.degrees, t1.size())) << "\n";
  }
  out << "candidates=" << result.trace.size() << "\n";
  for (std::size_t i = 0; i < result.revised.size(); ++i)
    out << "sentence." << i << "=" << render(result.revised[i]) << "\n";
  return out.str();
}

}  // namespace relaxrev
