#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "relaxrev/cli.hpp"
#include "relaxrev/reasoner.hpp"
#include "relaxrev/syntax.hpp"

using namespace relaxrev;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(RELAXREV_TEST_DATA_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  Scratch() {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("relaxrev_cli_" + std::to_string(rd()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name, std::ios::binary) << text;
    return (dir / name).string();
  }
};

}  // namespace

TEST_CASE("check") {
  Run ok = run({"check", data("tweety_old.kb")});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out == "SATISFIABLE\nCOHERENT\n");
  Run bad = run({"check", data("inconsistent.kb")});
  CHECK(bad.code == kExitNegative);
  CHECK(bad.out.find("UNSATISFIABLE") != std::string::npos);
  Run inc = run({"check", data("judge_old.kb")});
  CHECK(inc.code == kExitOk);
  Scratch s;
  Run incoherent = run({"check", s.write("u.kb", "dialect EL\nA & B [= Bot.\nC [= A & B.\n")});
  CHECK(incoherent.out == "SATISFIABLE\nINCOHERENT: C\n");
}

TEST_CASE("porcelain check") {
  Run r = run({"check", "--porcelain", data("inconsistent.kb")});
  CHECK(r.code == kExitNegative);
  CHECK(r.out.find("satisfiable=false\n") == 0);
}

TEST_CASE("entails") {
  Run yes = run({"entails", data("tweety_old.kb"), "Tweety [= Flies"});
  CHECK(yes.code == kExitOk);
  CHECK(yes.out == "ENTAILED\n");
  Run no = run({"entails", data("tweety_old.kb"), "Flies [= Tweety", "--witness"});
  CHECK(no.code == kExitNegative);
  CHECK(no.out.rfind("NOT ENTAILED\ncounter-model: ", 0) == 0);
  CHECK(no.out.back() == '\n');
  CHECK(no.out[no.out.size() - 2] != '\n');
}

TEST_CASE("revise the tweety example to standard output") {
  Run r = run({"revise", data("tweety_old.kb"), data("tweety_new.kb"), "--op", "kappa_bot", "--mode",
               "lhs", "--conflict", "incoherence", "-o", "-"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("cost: 1\n") != std::string::npos);
  CHECK(r.out.find("Bot [= Bird.\n") != std::string::npos);
}

TEST_CASE("revise writes next to the old belief by default") {
  Scratch s;
  std::string old_path = s.write("old.kb", slurp(data("tweety_old.kb")));
  std::string new_path = s.write("new.kb", slurp(data("tweety_new.kb")));
  Run r = run({"revise", old_path, new_path, "--op", "kappa_bot", "--mode", "lhs", "--conflict",
               "incoherence"});
  REQUIRE(r.code == kExitOk);
  fs::path out = s.dir / "old.revised.kb";
  REQUIRE(fs::exists(out));
  KnowledgeBase revised = parse_kb(slurp(out));
  CHECK(revised.contains(parse_sentence("Bot [= Bird.")));
  CHECK(is_coherent(revised));
  CHECK(run({"check", out.string()}).code == kExitOk);
}

TEST_CASE("conflict-free revision is the concatenation") {
  Scratch s;
  std::string a = s.write("a.kb", "dialect ALC\nA [= B.\n");
  std::string b = s.write("b.kb", "dialect ALC\nB [= E.\n");
  Run r = run({"revise", a, b, "-o", "-", "--porcelain"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("cost=0\n") != std::string::npos);
  CHECK(r.out.find("sentence.0=A [= B.\nsentence.1=B [= E.\n") != std::string::npos);
}

TEST_CASE("output is byte-identical across runs") {
  std::vector<std::string> args{"revise", data("rich_old.kb"), data("rich_new.kb"), "--op", "rho_q",
                                "--mode", "rhs", "-o", "-", "--trace"};
  Run first = run(args);
  Run second = run(args);
  CHECK(first.code == kExitOk);
  CHECK(first.out == second.out);
  CHECK(first.out.find("some hasChild.Rich") != std::string::npos);
}

TEST_CASE("dialect upgrade warning") {
  Run r = run({"revise", data("tweety_old.kb"), data("tweety_new.kb"), "--op", "rho_exceptions",
               "--exceptions", "[Tweety]", "--mode", "rhs", "--conflict", "incoherence", "-o", "-"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("Flies | Tweety") != std::string::npos);
  CHECK(r.err.find("ELU") != std::string::npos);
}

TEST_CASE("config file and flag precedence") {
  Scratch s;
  std::string cfg = s.write("c.cfg", "operator = kappa_bot\nmode = lhs\nconflict = incoherence\n");
  Run from_file = run({"--config", cfg, "revise", data("tweety_old.kb"), data("tweety_new.kb"),
                       "-o", "-", "--porcelain"});
  CHECK(from_file.code == kExitOk);
  CHECK(from_file.out.find("operator=kappa_bot\n") != std::string::npos);
  Run flag_wins = run({"--config", cfg, "revise", data("rich_old.kb"), data("rich_new.kb"), "--op",
                       "rho_q", "--mode", "rhs", "-o", "-", "--porcelain"});
  CHECK(flag_wins.out.find("operator=rho_q\n") != std::string::npos);
  std::string broken = s.write("b.cfg", "operator = nonsense\n");
  CHECK(run({"--config", broken, "check", data("tweety_old.kb")}).code == kExitUsage);
}

TEST_CASE("relax") {
  Run r = run({"relax", data("tweety_old.kb"), "--op", "kappa_bot", "--mode", "lhs", "--k", "1",
               "--sentence", "0"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("Bot [= Bird.\nBird [= Flies.\n") != std::string::npos);
}

TEST_CASE("verify") {
  Scratch s;
  std::string a = s.write("a.kb", "dialect ALC\na : A.\n");
  std::string b = s.write("b.kb", "dialect ALC\na : not A.\n");
  Run r = run({"verify", a, b, "--op", "rho_top", "--mode", "rhs", "--domain", "1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("POSTULATE G3: HOLDS") != std::string::npos);
  CHECK(r.out.find("REPRESENTATION: HOLDS") != std::string::npos);
}

TEST_CASE("rank") {
  Run r = run({"rank", data("tweety_old.kb"), "--domain", "1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("interpretations: 8\n") == 0);
}

TEST_CASE("exit codes for errors") {
  Scratch s;
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"check", (s.dir / "missing.kb").string()}).code == kExitUsage);
  Run parse = run({"check", s.write("bad.kb", "dialect EL\nA [= (B.\n")});
  CHECK(parse.code == kExitUsage);
  CHECK(parse.err.find(":2:8:") != std::string::npos);
  std::string deep = s.write("deep.kb", "dialect ALC\na : some r.(some r.(some r.A)).\n");
  CHECK(run({"check", deep, "--budget", "2"}).code == kExitBudget);
  Run conflicting = run({"revise", data("tweety_old.kb"), data("inconsistent.kb"), "-o", "-"});
  CHECK(conflicting.code == kExitNegative);
}
