#include "relaxrev/syntax.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <utility>

#include "relaxrev/error.hpp"

namespace relaxrev {

namespace {

std::string describe(const std::vector<std::string>& expected, const std::string& found) {
  std::string msg = "expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
    msg += expected[i];
  }
  msg += ", found " + found;
  return msg;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
                       const std::string& found)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
            describe(expected, found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Name, Subsumed, Amp, Bar, LParen, RParen, Dot, Colon, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLocation loc;
};

bool is_keyword(std::string_view s) {
  return s == "Top" || s == "Bot" || s == "some" || s == "only" || s == "not" ||
         s == "dialect" || s == "signature" || s == kUniversalRoleName;
}

std::string show(const Token& t) {
  switch (t.kind) {
    case Tok::Name: return "'" + t.text + "'";
    case Tok::End: return "end of input";
    default: return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourceLocation loc{line_, col_};
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", loc});
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          advance();
        }
        out.push_back({Tok::Name, std::string(text_.substr(start, pos_ - start)), loc});
        continue;
      }
      if (c == '[' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
        advance();
        advance();
        out.push_back({Tok::Subsumed, "[=", loc});
        continue;
      }
      Tok kind;
      switch (c) {
        case '&': kind = Tok::Amp; break;
        case '|': kind = Tok::Bar; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '.': kind = Tok::Dot; break;
        case ':': kind = Tok::Colon; break;
        case ',': kind = Tok::Comma; break;
        default:
          throw ParseError(loc.line, loc.column, {"a name or punctuation"},
                           "'" + std::string(1, c) + "'");
      }
      advance();
      out.push_back({kind, std::string(1, c), loc});
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  ParsedKb kb() {
    ParsedKb out;
    expect_word("dialect");
    const Token& d = expect(Tok::Name, "EL, ELU or ALC");
    auto dialect = parse_dialect(d.text);
    if (!dialect) throw ParseError(d.loc.line, d.loc.column, {"EL", "ELU", "ALC"}, show(d));
    out.kb.set_dialect(*dialect);
    if (at_word("signature")) {
      signature(out.kb.signature());
      declared_ = out.kb.signature();
    }
    while (peek().kind != Tok::End) {
      SourceLocation loc = peek().loc;
      Sentence s = sentence();
      expect(Tok::Dot, "'.'");
      Dialect need = s.minimal_dialect();
      if (need > *dialect) {
        throw DialectViolation(std::to_string(loc.line) + ":" + std::to_string(loc.column) +
                               ": sentence needs " + std::string(dialect_name(need)) +
                               " but the declared dialect is " +
                               std::string(dialect_name(*dialect)));
      }
      if (out.kb.add(s)) out.locations.push_back(loc);
    }
    return out;
  }

  Concept standalone_concept() {
    Concept c = disjunction();
    expect(Tok::End, "end of input");
    return c;
  }

  Sentence standalone_sentence() {
    Sentence s = sentence();
    if (peek().kind == Tok::Dot) next();
    expect(Tok::End, "end of input");
    return s;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.loc.line, t.loc.column, std::move(expected), show(t));
  }

  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail({what});
    return next();
  }

  bool at_word(std::string_view w) const {
    return peek().kind == Tok::Name && peek().text == w;
  }

  void expect_word(std::string_view w) {
    if (!at_word(w)) fail({"'" + std::string(w) + "'"});
    next();
  }

  std::string plain_name(const std::string& what) {
    if (peek().kind != Tok::Name || is_keyword(peek().text)) fail({what});
    return next().text;
  }

  void signature(Signature& sig) {
    expect_word("signature");
    for (;;) {
      if (at_word("end")) {
        next();
        return;
      }
      std::string section;
      if (at_word("concepts") || at_word("roles") || at_word("individuals")) {
        section = next().text;
      } else {
        fail({"'concepts'", "'roles'", "'individuals'", "'end'"});
      }
      expect(Tok::Colon, "':'");
      while (peek().kind == Tok::Name && !at_word("concepts") && !at_word("roles") &&
             !at_word("individuals") && !at_word("end")) {
        const Token& t = peek();
        std::string n = plain_name("a name");
        try {
          if (section == "concepts") sig.add_concept(n);
          else if (section == "roles") sig.add_role(n);
          else sig.add_individual(n);
        } catch (const InvalidArgument&) {
          throw ParseError(t.loc.line, t.loc.column, {"a name not declared in another section"},
                           show(t));
        }
        if (peek().kind == Tok::Comma) next();
      }
    }
  }

  // Declared signatures are closed; otherwise names are collected by
  // KnowledgeBase::add. Either way a name may only have one sort.
  enum class Sort { Concept, Role, Individual };
  std::string use_name(const std::string& what, Sort sort) {
    const Token& t = peek();
    std::string n = plain_name(what);
    auto clash = [&](std::string expected) {
      throw ParseError(t.loc.line, t.loc.column, {std::move(expected)}, show(t));
    };
    if (declared_) {
      bool ok = sort == Sort::Concept ? declared_->has_concept(n)
                : sort == Sort::Role  ? declared_->has_role(n)
                                      : declared_->has_individual(n);
      if (!ok) clash("a declared " + what);
    }
    try {
      if (sort == Sort::Concept) seen_.add_concept(n);
      else if (sort == Sort::Role) seen_.add_role(n);
      else seen_.add_individual(n);
    } catch (const InvalidArgument&) {
      clash(what + " (the name is already used with another sort)");
    }
    return n;
  }

  Sentence sentence() {
    if (peek().kind == Tok::LParen && peek(1).kind == Tok::Name && peek(2).kind == Tok::Comma) {
      next();
      std::string a = use_name("individual", Sort::Individual);
      expect(Tok::Comma, "','");
      std::string b = use_name("individual", Sort::Individual);
      expect(Tok::RParen, "')'");
      expect(Tok::Colon, "':'");
      if (at_word(kUniversalRoleName)) {
        next();
        return Sentence::universal_role_fact(a, b);
      }
      std::string r = use_name("role name", Sort::Role);
      return Sentence::role_fact(a, b, r);
    }
    if (peek().kind == Tok::Name && !is_keyword(peek().text) && peek(1).kind == Tok::Colon) {
      std::string a = use_name("individual", Sort::Individual);
      next();
      return Sentence::instance_of(a, disjunction());
    }
    Concept lhs = disjunction();
    expect(Tok::Subsumed, "'[='");
    Concept rhs = disjunction();
    return Sentence::gci(lhs, rhs);
  }

  Concept disjunction() {
    std::vector<Concept> parts{conjunction()};
    while (peek().kind == Tok::Bar) {
      next();
      parts.push_back(conjunction());
    }
    return parts.size() == 1 ? parts.front() : Concept::disj(std::move(parts));
  }

  Concept conjunction() {
    std::vector<Concept> parts{unary()};
    while (peek().kind == Tok::Amp) {
      next();
      parts.push_back(unary());
    }
    return parts.size() == 1 ? parts.front() : Concept::conj(std::move(parts));
  }

  Concept unary() {
    if (at_word("not")) {
      next();
      return Concept::negate(unary());
    }
    if (at_word("some") || at_word("only")) {
      bool some = next().text == "some";
      std::string r = use_name("role name", Sort::Role);
      expect(Tok::Dot, "'.'");
      // A nested quantifier or negation needs no parentheses.
      Concept f = at_word("some") || at_word("only") || at_word("not") ? unary() : primary();
      return some ? Concept::exists(r, f) : Concept::forall(r, f);
    }
    return primary();
  }

  Concept primary() {
    if (at_word("Top")) {
      next();
      return Concept::top();
    }
    if (at_word("Bot")) {
      next();
      return Concept::bot();
    }
    if (peek().kind == Tok::LParen) {
      next();
      Concept c = disjunction();
      expect(Tok::RParen, "')'");
      return c;
    }
    if (peek().kind == Tok::Name && !is_keyword(peek().text)) {
      return Concept::atom(use_name("concept name", Sort::Concept));
    }
    fail({"'Top'", "'Bot'", "a concept name", "'('", "'not'", "'some'", "'only'"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::optional<Signature> declared_;
  Signature seen_;
};

}  // namespace

ParsedKb parse_kb_located(std::string_view text) { return Parser(text).kb(); }

KnowledgeBase parse_kb(std::string_view text) { return parse_kb_located(text).kb; }

Concept parse_concept(std::string_view text) { return Parser(text).standalone_concept(); }

Sentence parse_sentence(std::string_view text) { return Parser(text).standalone_sentence(); }

// --- rendering -------------------------------------------------------------

namespace {

void render_into(const Concept& c, std::string& out);

void render_primary(const Concept& c, std::string& out) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bot:
    case ConceptKind::Atom: render_into(c, out); return;
    default:
      out += '(';
      render_into(c, out);
      out += ')';
  }
}

void render_unary(const Concept& c, std::string& out) {
  if (c.is(ConceptKind::And) || c.is(ConceptKind::Or)) {
    render_primary(c, out);
  } else {
    render_into(c, out);
  }
}

void render_into(const Concept& c, std::string& out) {
  switch (c.kind()) {
    case ConceptKind::Top: out += "Top"; return;
    case ConceptKind::Bot: out += "Bot"; return;
    case ConceptKind::Atom: out += c.name(); return;
    case ConceptKind::Not:
      out += "not ";
      render_unary(c.filler(), out);
      return;
    case ConceptKind::And: {
      bool first = true;
      for (const Concept& g : c.operands()) {
        if (!first) out += " & ";
        first = false;
        render_unary(g, out);
      }
      return;
    }
    case ConceptKind::Or: {
      bool first = true;
      for (const Concept& g : c.operands()) {
        if (!first) out += " | ";
        first = false;
        render_into(g, out);
      }
      return;
    }
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      out += c.is(ConceptKind::Exists) ? "some " : "only ";
      out += c.name();
      out += '.';
      render_primary(c.filler(), out);
      return;
  }
}

void render_names(const char* section, const std::vector<std::string>& names, std::string& out) {
  if (names.empty()) return;
  out += "  ";
  out += section;
  out += ":";
  for (std::size_t i = 0; i < names.size(); ++i) {
    out += i == 0 ? " " : ", ";
    out += names[i];
  }
  out += '\n';
}

}  // namespace

std::string render(const Concept& c) {
  std::string out;
  render_into(c, out);
  return out;
}

std::string render(const Sentence& s) {
  switch (s.kind()) {
    case SentenceKind::Gci: return render(s.lhs()) + " [= " + render(s.rhs()) + ".";
    case SentenceKind::InstanceOf: return s.individual() + " : " + render(s.asserted()) + ".";
    case SentenceKind::RoleFact:
      return "(" + s.individual() + ", " + s.object() + ") : " +
             (s.universal_role() ? std::string(kUniversalRoleName) : s.role()) + ".";
  }
  return {};
}

std::string render(const KnowledgeBase& kb) {
  std::string out = "dialect ";
  out += dialect_name(kb.dialect());
  out += '\n';
  const Signature& sig = kb.signature();
  if (!sig.empty()) {
    out += "signature\n";
    render_names("concepts", sig.concept_names(), out);
    render_names("roles", sig.role_names(), out);
    render_names("individuals", sig.individuals(), out);
    out += "end\n";
  }
  for (const Sentence& s : kb.sentences()) {
    out += render(s);
    out += '\n';
  }
  return out;
}

}  // namespace relaxrev
