#include "relaxrev/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "relaxrev/error.hpp"
#include "relaxrev/oracle.hpp"
#include "relaxrev/reasoner.hpp"
#include "relaxrev/relax.hpp"
#include "relaxrev/revise.hpp"
#include "relaxrev/syntax.hpp"

namespace relaxrev {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

KnowledgeBase load_kb(const std::string& path) {
  try {
    return parse_kb(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

std::size_t parse_count(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size() || v[0] == '-')
    throw UsageError(key + ": expected a nonnegative integer, got '" + v + "'");
  return static_cast<std::size_t>(n);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw UsageError(key + ": expected true or false, got '" + v + "'");
}

// "[A, some r.(B | C)]" -> concepts, splitting on top-level commas.
std::vector<Concept> parse_exception_list(const std::string& text) {
  std::string s = trim(text);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw UsageError("exceptions: missing ']'");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<Concept> out;
  int depth = 0;
  std::string cur;
  auto flush = [&] {
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(parse_concept(t));
    cur.clear();
  };
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      flush();
    } else {
      cur += ch;
    }
  }
  flush();
  return out;
}

// Settings from defaults, RELAXREV_BUDGET, the config file and flags, in
// increasing precedence.
struct Settings {
  std::map<std::string, std::string> values;

  static const std::vector<std::string>& keys() {
    static const std::vector<std::string> k = {
        "operator", "mode",   "conflict", "exceptions", "degree",   "max_total_degree",
        "eligibility", "enumerate_all_minima", "partition_budget", "budget",
        "domain", "max_sum", "seed"};
    return k;
  }

  void set(const std::string& key, const std::string& value) {
    if (std::find(keys().begin(), keys().end(), key) == keys().end())
      throw UsageError("unknown setting '" + key + "'");
    values[key] = value;
  }

  void load(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
      ++no;
      std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      std::size_t eq = t.find('=');
      if (eq == std::string::npos)
        throw UsageError(path + ":" + std::to_string(no) + ": expected 'key = value'");
      set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
  }

  std::optional<std::string> get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
  }

  std::size_t count_or(const std::string& key, std::size_t fallback) const {
    auto v = get(key);
    return v ? parse_count(key, *v) : fallback;
  }

  ReasonerOptions reasoner() const {
    ReasonerOptions o = ReasonerOptions::from_environment();
    o.node_budget = count_or("budget", o.node_budget);
    return o;
  }

  std::optional<OperatorId> op_id() const {
    auto v = get("operator");
    if (!v) return std::nullopt;
    auto id = parse_operator_id(*v);
    if (!id) throw UsageError("unknown operator '" + *v + "'");
    return id;
  }

  ConceptOperator op(OperatorId fallback) const {
    OperatorId id = op_id().value_or(fallback);
    std::vector<Concept> ex;
    if (auto v = get("exceptions")) ex = parse_exception_list(*v);
    return ConceptOperator(id, ex, count_or("degree", 1));
  }

  FormulaRelaxMode mode(const ConceptOperator& op) const {
    if (auto v = get("mode")) {
      auto m = parse_mode(*v);
      if (!m) throw UsageError("unknown mode '" + *v + "' (rhs or lhs)");
      return *m;
    }
    return op.direction() == Direction::Relax ? FormulaRelaxMode::RelaxRHS
                                              : FormulaRelaxMode::RetractLHS;
  }

  RevisionConfig revision(ConflictKind default_conflict) const {
    RevisionConfig c;
    c.op = op(c.op.id());
    c.mode = mode(c.op);
    c.conflict = default_conflict;
    if (auto v = get("conflict")) {
      auto k = parse_conflict(*v);
      if (!k) throw UsageError("unknown conflict '" + *v + "' (unsat or incoherence)");
      c.conflict = *k;
    }
    c.max_total_degree = count_or("max_total_degree", c.max_total_degree);
    c.partition_budget = count_or("partition_budget", c.partition_budget);
    if (auto v = get("enumerate_all_minima")) c.enumerate_all_minima = parse_bool("enumerate_all_minima", *v);
    if (auto v = get("eligibility")) {
      if (*v == "new") {
        c.eligibility = Eligibility::NewBelief;
      } else if (*v == "all") {
        c.eligibility = Eligibility::Union;
      } else {
        throw UsageError("eligibility: expected new or all, got '" + *v + "'");
      }
    }
    c.reasoner = reasoner();
    return c;
  }

  // Rejects bad values up front, whichever command ends up using them.
  void validate() const {
    revision(ConflictKind::Unsat);
    for (const char* key : {"domain", "max_sum", "seed"}) count_or(key, 0);
  }
};

// Flags shared by the subcommands; empty strings mean "not given".
struct Flags {
  std::string config;
  std::string op, mode, conflict, exceptions, degree, max_degree, eligibility, budget;
  std::string domain, max_sum, seed;
  bool porcelain = false;

  Settings settings() const {
    Settings s;
    if (!config.empty()) s.load(config);
    auto put = [&](const char* key, const std::string& v) {
      if (!v.empty()) s.set(key, v);
    };
    put("operator", op);
    put("mode", mode);
    put("conflict", conflict);
    put("exceptions", exceptions);
    put("degree", degree);
    put("max_total_degree", max_degree);
    put("eligibility", eligibility);
    put("budget", budget);
    put("domain", domain);
    put("max_sum", max_sum);
    put("seed", seed);
    s.validate();
    return s;
  }
};

void add_operator_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--op", f.op, "Operator (rho_top, kappa_bot, rho_exceptions, ...)");
  cmd->add_option("--mode", f.mode, "Formula relaxation mode: rhs or lhs");
  cmd->add_option("--exceptions", f.exceptions, "Exception concepts, e.g. \"[Tweety, some r.A]\"");
  cmd->add_option("--degree", f.degree, "Exceptions added per application");
}

void warn_dialect(const KnowledgeBase& before, const KnowledgeBase& after, std::ostream& err) {
  if (after.dialect() > before.dialect())
    err << "warning: output dialect raised from " << dialect_name(before.dialect()) << " to "
        << dialect_name(after.dialect()) << "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string default_output(const std::string& old_path) {
  std::filesystem::path p(old_path);
  p.replace_extension();
  return p.string() + ".revised.kb";
}

int cmd_check(const std::string& path, const Flags& f, std::ostream& out) {
  KnowledgeBase kb = load_kb(path);
  Reasoner r(kb, f.settings().reasoner());
  bool sat = r.is_satisfiable();
  std::vector<std::string> empty = sat ? r.unsat_named_concepts() : std::vector<std::string>{};
  std::string names;
  for (const auto& n : empty) names += (names.empty() ? "" : ", ") + n;
  if (f.porcelain) {
    out << "satisfiable=" << (sat ? "true" : "false") << "\n";
    out << "coherent=" << (sat && empty.empty() ? "true" : "false") << "\n";
    out << "unsat_concepts=" << names << "\n";
  } else {
    out << (sat ? "SATISFIABLE" : "UNSATISFIABLE") << "\n";
    if (sat) out << (empty.empty() ? "COHERENT" : "INCOHERENT: " + names) << "\n";
  }
  return sat ? kExitOk : kExitNegative;
}

int cmd_entails(const std::string& path, const std::string& sentence, bool witness,
                const Flags& f, std::ostream& out) {
  KnowledgeBase kb = load_kb(path);
  Sentence s = parse_sentence(sentence);
  Reasoner r(kb, f.settings().reasoner());
  EntailmentVerdict v = r.entails_verbose(s, witness);
  if (f.porcelain) {
    out << "entailed=" << (v.holds ? "true" : "false") << "\n";
    if (v.witness) {
      std::string w = trim(*v.witness);
      std::replace(w.begin(), w.end(), '\n', ';');
      out << "witness=" << w << "\n";
    }
  } else {
    out << (v.holds ? "ENTAILED" : "NOT ENTAILED") << "\n";
    if (v.witness) out << "counter-model: " << trim(*v.witness) << "\n";
  }
  return v.holds ? kExitOk : kExitNegative;
}

int cmd_relax(const std::string& path, const std::string& k_text,
              const std::vector<std::size_t>& only, const std::string& against, const Flags& f,
              std::ostream& out, std::ostream& err) {
  KnowledgeBase kb = load_kb(path);
  Settings s = f.settings();
  ConceptOperator op = s.op(OperatorId::RhoTop);
  FormulaRelaxMode mode = s.mode(op);
  std::size_t k = parse_count("k", k_text);
  DegreeMap degrees = DegreeMap::zeros(kb.size());
  for (std::size_t i = 0; i < kb.size(); ++i) {
    if (only.empty() || std::find(only.begin(), only.end(), i) != only.end()) degrees.k[i] = k;
  }
  for (std::size_t i : only)
    if (i >= kb.size()) throw UsageError("sentence index " + std::to_string(i) + " out of range");
  Reasoner elig(against.empty() ? kb : load_kb(against), s.reasoner());
  KnowledgeBase relaxed = relax_theory(kb, degrees, mode, op, elig);
  warn_dialect(kb, relaxed, err);
  out << render(relaxed);
  return kExitOk;
}

int cmd_revise(const std::string& old_path, const std::string& new_path, std::string output,
               bool trace, const Flags& f, std::ostream& out, std::ostream& err) {
  KnowledgeBase t1 = load_kb(old_path);
  KnowledgeBase t2 = load_kb(new_path);
  RevisionConfig config = f.settings().revision(ConflictKind::Incoherence);
  RevisionResult result = revise(t1, t2, config);
  KnowledgeBase before(std::max(t1.dialect(), t2.dialect()));
  warn_dialect(before, result.revised, err);
  if (output.empty()) output = default_output(old_path);
  if (output != "-") write_file(output, render(result.revised));
  if (f.porcelain) {
    out << render_porcelain(t1, result, config);
    if (output != "-") out << "output=" << output << "\n";
  } else {
    out << render_report(t1, result, config);
    if (trace) {
      out << "trace:\n";
      for (const TraceEntry& e : result.trace) {
        out << "  partition " << e.partition << " degrees";
        for (std::size_t k : e.degrees.k) out << ' ' << k;
        out << ": "
            << (e.verdict == TraceEntry::Verdict::Passed     ? "passed"
                : e.verdict == TraceEntry::Verdict::Conflict ? "conflict"
                                                             : "not applicable");
        if (!e.note.empty()) out << " (" << e.note << ")";
        out << "\n";
      }
    }
    if (output != "-") out << "written: " << output << "\n";
  }
  if (output == "-") out << render(result.revised);
  return kExitOk;
}

int cmd_verify(const std::string& old_path, const std::string& new_path,
               const std::string& second_path, const Flags& f, std::ostream& out) {
  KnowledgeBase t1 = load_kb(old_path);
  KnowledgeBase t2 = load_kb(new_path);
  Settings s = f.settings();
  RevisionConfig config = s.revision(ConflictKind::Unsat);
  if (config.conflict != ConflictKind::Unsat)
    throw UsageError("verify works with conflict = unsat");
  PostulateOptions po;
  po.max_domain = s.count_or("domain", 2);
  po.seed = s.count_or("seed", 1);
  if (!second_path.empty()) po.t_second = load_kb(second_path);
  PostulateReport report = check_postulates(t1, t2, config, po);
  std::size_t max_sum = s.count_or("max_sum", 4);
  RepresentationReport rep = check_representation(t1, t2, config, po.max_domain, max_sum);
  if (f.porcelain) {
    for (const Verdict& v : report.verdicts) {
      std::string name = v.name;
      std::transform(name.begin(), name.end(), name.begin(), ::tolower);
      std::string st(status_name(v.status));
      std::transform(st.begin(), st.end(), st.begin(), ::tolower);
      out << "postulate." << name << "=" << st << "\n";
    }
    std::string st(status_name(rep.status));
    std::transform(st.begin(), st.end(), st.begin(), ::tolower);
    out << "representation=" << st << "\n";
    out << "seed=" << po.seed << "\n";
    out << "domain=" << po.max_domain << "\n";
  } else {
    out << report.render();
    out << "REPRESENTATION: " << status_name(rep.status) << " (domain<=" << po.max_domain
        << ", max_sum=" << max_sum << ")";
    if (!rep.evidence.empty()) out << " -- " << rep.evidence;
    out << "\n";
  }
  bool failed = rep.status == Status::Fails;
  for (const Verdict& v : report.verdicts) failed = failed || v.status == Status::Fails;
  return failed ? kExitNegative : kExitOk;
}

int cmd_rank(const std::string& path, const Flags& f, std::ostream& out) {
  KnowledgeBase kb = load_kb(path);
  Settings s = f.settings();
  RankSpec spec;
  spec.op = s.op(OperatorId::RhoTop);
  spec.mode = s.mode(spec.op);
  spec.max_sum = s.count_or("max_sum", 4);
  spec.eligibility = kb;
  InterpretationSpace space(kb.signature(), s.count_or("domain", 1));
  RankTable table = rank_table(kb, space, spec);
  if (!f.porcelain) out << "interpretations: " << space.size() << "\n";
  for (std::size_t id = 0; id < space.size(); ++id) {
    std::string r = table.rank[id] ? std::to_string(*table.rank[id]) : "unreached";
    if (f.porcelain) {
      out << "rank." << id << "=" << r << "\n";
    } else {
      out << id << "\t" << r << "\t" << describe(space.at(id)) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relaxation-based revision of description-logic knowledge bases"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "Settings file with 'key = value' lines");

  std::string kb_path, old_path, new_path, second_path, sentence, k_text = "1", output, against;
  std::vector<std::size_t> only;
  bool witness = false;
  bool trace = false;

  auto* check = app.add_subcommand("check", "Satisfiability and coherence of a KB");
  check->add_option("kb", kb_path)->required();

  auto* ent = app.add_subcommand("entails", "Does the KB entail a sentence");
  ent->add_option("kb", kb_path)->required();
  ent->add_option("sentence", sentence, "e.g. \"A [= B\"")->required();
  ent->add_flag("--witness", witness, "Print a counter-model when not entailed");

  auto* rel = app.add_subcommand("relax", "Relax every (or selected) sentence k times");
  rel->add_option("kb", kb_path)->required();
  rel->add_option("--k", k_text, "Number of applications");
  rel->add_option("--sentence", only, "Only these sentence indices (0-based)");
  rel->add_option("--against", against, "KB deciding exception eligibility (default: the input)");
  add_operator_flags(rel, f);

  auto* rev = app.add_subcommand("revise", "Revise OLD by NEW");
  rev->add_option("old", old_path)->required();
  rev->add_option("new", new_path)->required();
  rev->add_option("--conflict", f.conflict, "unsat or incoherence");
  rev->add_option("--max-degree", f.max_degree, "Largest total degree searched");
  rev->add_option("--eligibility", f.eligibility, "Exception side conditions against new or all");
  rev->add_option("-o,--output", output, "Revised KB file ('-' for standard output)");
  rev->add_flag("--trace", trace, "List every candidate degree map");
  add_operator_flags(rev, f);

  auto* ver = app.add_subcommand("verify", "Check the revision postulates on OLD and NEW");
  ver->add_option("old", old_path)->required();
  ver->add_option("new", new_path)->required();
  ver->add_option("--domain", f.domain, "Largest domain size enumerated");
  ver->add_option("--seed", f.seed, "Seed for the sampled third KB and variants");
  ver->add_option("--max-sum", f.max_sum, "Rank budget for the representation check");
  ver->add_option("--third", second_path, "KB used as T'' instead of a sampled one");
  add_operator_flags(ver, f);

  auto* rk = app.add_subcommand("rank", "Rank of every small interpretation w.r.t. a KB");
  rk->add_option("kb", kb_path)->required();
  rk->add_option("--domain", f.domain, "Largest domain size enumerated");
  rk->add_option("--max-sum", f.max_sum, "Ranks above this are reported unreached");
  add_operator_flags(rk, f);

  for (auto* cmd : {check, ent, rel, rev, ver, rk}) {
    cmd->add_flag("--porcelain", f.porcelain, "key=value output");
    cmd->add_option("--budget", f.budget, "Reasoner node budget");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(kb_path, f, out);
    if (ent->parsed()) return cmd_entails(kb_path, sentence, witness, f, out);
    if (rel->parsed()) return cmd_relax(kb_path, k_text, only, against, f, out, err);
    if (rev->parsed()) return cmd_revise(old_path, new_path, output, trace, f, out, err);
    if (ver->parsed()) return cmd_verify(old_path, new_path, second_path, f, out);
    if (rk->parsed()) return cmd_rank(kb_path, f, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ConflictingInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace relaxrev
