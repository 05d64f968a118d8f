#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "uhom/cli.hpp"
#include "uhom/errors.hpp"
#include "uhom/morphisms.hpp"
#include "uhom/session.hpp"

using namespace uhom;
using uhom::cli::CommandRequest;
namespace fs = std::filesystem;

namespace {

const fs::path kSessions = UHOM_SESSIONS_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> corpus_sessions() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(kSessions))
    if (e.path().extension() == ".ses") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

struct Run {
  int code;
  std::string out;
};

// Runs the installed tool; stderr is folded into the captured text.
Run tool(const std::string& args) {
  std::string cmd = std::string("\"") + UHTOOL_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

CommandRequest request(std::string command, std::vector<std::string> args) {
  CommandRequest r;
  r.command = std::move(command);
  r.args = std::move(args);
  r.timings = false;
  return r;
}

}  // namespace

TEST(Parse, CuspSession) {
  auto ast = parse_session(slurp(kSessions / "cusp.ses"));
  EXPECT_EQ(ast.rings.size() + ast.maps.size(), 3u);
  ASSERT_EQ(ast.maps.size(), 1u);
  EXPECT_EQ(ast.maps[0].span.line, 5u);
  EXPECT_EQ(ast.maps[0].image_spans[1].column, 36u);
  EXPECT_EQ(ast.rings[0].relation_spans[0].column, 20u);
}

TEST(Parse, ArityErrorNamesTheLine) {
  const char* text = "field Q\nring A = [x, y] / ()\nring B = [t] / ()\nmap f : A -> B = { x -> t^2 }\n";
  try {
    parse_session(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("arity"), std::string::npos);
  }
}

TEST(Parse, FrobeniusSubringIsWellDefined) {
  Session s = load_session(slurp(kSessions / "frobenius_subring.ses"));
  EXPECT_EQ(s.field().characteristic(), 2u);
  EXPECT_EQ(s.map("f").images().size(), 3u);
}

TEST(Parse, Diagnostics) {
  auto error_at = [](const char* text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_session(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  EXPECT_EQ(error_at("field Q\nring A = [x] / (x +* 1)\n"), (std::pair<std::size_t, std::size_t>{2, 20}));
  EXPECT_EQ(error_at("field Q\n\n  ring A = [x / (x)\n").first, 3u);
  EXPECT_EQ(error_at("field Q\nring A = [x] / ()\nmap f : A -> Z = { x -> 1 }\n"),
            (std::pair<std::size_t, std::size_t>{3, 14}));
  EXPECT_EQ(error_at("ring A = [x] / ()\n").first, 1u);
  EXPECT_THROW(parse_session("field F 6\n"), ScopeError);
  EXPECT_THROW(load_session("field Q\nring A = [x] / (x^2)\nring B = [t] / ()\nmap f : A -> B = { x -> t }\n"),
               IllDefinedMap);
}

TEST(Parse, EmptyAndConstantRings) {
  auto ast = parse_session("field F 3\nring K = [] / ()\nring A = [x] / (x^9)\nmap f : A -> K = { x -> 0 }\nmap g : K -> A = {}\n");
  EXPECT_EQ(ast.rings[0].variables.size(), 0u);
  EXPECT_EQ(print_session(ast),
            "field F 3\nring K = [] / ()\nring A = [x] / (x^9)\nmap f : A -> K = { x -> 0 }\nmap g : K -> A = {}\n");
}

// Property: printing is a fixed point of parsing on every corpus session.
TEST(RoundTrip, CorpusSessions) {
  auto files = corpus_sessions();
  ASSERT_GE(files.size(), 6u);
  for (const auto& f : files) {
    auto ast = parse_session(slurp(f));
    auto printed = print_session(ast);
    auto again = parse_session(printed);
    EXPECT_TRUE(again == ast) << f;
    EXPECT_EQ(print_session(again), printed) << f;
  }
}

TEST(RoundTrip, ResultSessionsFeedBack) {
  auto out = cli::run_command(request("wn", {"nu_tacnode"}), slurp(kSessions / "tacnode.ses"));
  ASSERT_EQ(out.exit_code, 0) << out.report.dump();
  std::string session = out.report["result"]["session"];
  // The weak normalization is the crossing of two lines: p -> s, q -> s'.
  session += "map iso : C -> nu_tacnode_wn = { p -> w1, q -> w2 - w1 }\n";
  auto check = request("check", {"iso"});
  check.property = "isomorphism";
  auto r = cli::run_command(check, session);
  ASSERT_EQ(r.exit_code, 0) << r.report.dump();
  EXPECT_EQ(r.report["verdicts"]["isomorphism"], true);
}

TEST(Commands, CuspCheck) {
  auto out = cli::run_command(request("check", {"nu"}), slurp(kSessions / "cusp.ses"));
  ASSERT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.report["verdicts"]["universal_homeomorphism"], true);
  EXPECT_EQ(out.report["certificates"]["diagonal"][0]["exponent"], 3);
  EXPECT_EQ(out.report["schema_version"], cli::kSchemaVersion);
  EXPECT_FALSE(out.report.contains("timings"));
}

TEST(Commands, GaussianRadicialIsFalseWithExitZero) {
  auto req = request("check", {"f"});
  req.property = "radicial";
  auto out = cli::run_command(req, slurp(kSessions / "gaussian.ses"));
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.report["verdicts"]["radicial"], false);
  EXPECT_EQ(out.report["verdicts"].size(), 1u);
}

TEST(Commands, UnknownVerdictsCarryReasons) {
  auto out = cli::run_command(request("check", {"nil"}), slurp(kSessions / "finite.ses"));
  ASSERT_EQ(out.exit_code, 0);
  for (const auto& [k, v] : out.report["verdicts"].items())
    if (v.is_null()) EXPECT_TRUE(out.report["reasons"].contains(k)) << k;
}

TEST(Commands, Oracle) {
  const auto text = slurp(kSessions / "finite.ses");
  auto roots = request("oracle", {"roots", "D"});
  roots.poly = "t^2 + t";
  EXPECT_EQ(cli::run_command(roots, text).report["result"]["count"], 2);
  EXPECT_EQ(cli::run_command(request("oracle", {"homs", "D", "D"}), text).report["result"]["count"], 2);
  EXPECT_EQ(cli::run_command(request("oracle", {"rank", "F4"}), text).report["result"]["separable_rank"], 2);
  EXPECT_EQ(cli::run_command(request("oracle", {"nilpotents", "D"}), text).report["result"]["elements"],
            (nlohmann::ordered_json{"0", "x"}));
  EXPECT_EQ(cli::run_command(request("oracle", {"shuffle", "D"}), text).exit_code, cli::kExitParse);
}

TEST(Commands, GbOrders) {
  const auto text = slurp(kSessions / "tacnode.ses");
  auto gb = request("gb", {"B"});
  gb.order = "block:1,2";
  auto out = cli::run_command(gb, text);
  ASSERT_EQ(out.exit_code, 0) << out.report.dump();
  EXPECT_EQ(out.report["result"]["order"], "block(1,2)");
  gb.order = "block:1,1";
  EXPECT_EQ(cli::run_command(gb, text).exit_code, cli::kExitParse);
  gb.order = "deglex";
  EXPECT_EQ(cli::run_command(gb, text).exit_code, cli::kExitParse);
}

// Property: identical invocations give byte-identical JSON without timings.
TEST(Determinism, ByteIdenticalReports) {
  for (const auto& f : corpus_sessions()) {
    auto ast = parse_session(slurp(f));
    for (const auto& m : ast.maps) {
      std::string args = "check " + quoted(f) + " " + m.name + " --json --no-timings";
      auto a = tool(args);
      auto b = tool(args);
      EXPECT_EQ(a.code, 0) << f << " " << m.name;
      EXPECT_EQ(a.out, b.out) << f << " " << m.name;
    }
  }
  auto with_timings = cli::run_command(CommandRequest{.command = "check", .args = {"nu"}}, slurp(kSessions / "cusp.ses"));
  EXPECT_TRUE(with_timings.report.contains("timings"));
}

TEST(ExitCodes, MalformedFixtures) {
  const std::vector<std::pair<std::string, int>> cases = {
      {"unclosed_bracket", 2}, {"bad_polynomial", 2}, {"undefined_ring", 2}, {"arity_mismatch", 2},
      {"ill_defined", 2},      {"missing_field", 2},  {"duplicate_name", 2}, {"unknown_variable", 2},
      {"unknown_keyword", 2},  {"non_prime_field", 3},
  };
  for (const auto& [name, code] : cases) {
    auto r = tool("check " + quoted(kSessions / "malformed" / (name + ".ses")) + " f --json --no-timings");
    EXPECT_EQ(r.code, code) << name << "\n" << r.out;
    auto report = nlohmann::json::parse(r.out);
    EXPECT_TRUE(report.contains("error")) << name;
  }
  EXPECT_EQ(tool("check " + quoted(kSessions / "cusp.ses") + " nu").code, 0);
  EXPECT_EQ(tool("check " + quoted(kSessions / "cusp.ses") + " missing").code, 3);
  EXPECT_EQ(tool("check " + quoted(kSessions / "cusp.ses") + " nu --property flat").code, 3);
  EXPECT_EQ(tool("wn " + quoted(kSessions / "nilpotent.ses") + " f").code, 3);
  EXPECT_EQ(tool("kollar " + quoted(kSessions / "gaussian.ses") + " f").code, 3);
  EXPECT_EQ(tool("oracle enumerate " + quoted(kSessions / "finite.ses") + " D --enum-cap 2").code, 4);
  EXPECT_EQ(tool("wn " + quoted(kSessions / "tacnode.ses") + " nu_tacnode --timeout-ms 0").code, 4);
  EXPECT_EQ(tool("frobnicate").code, 2);
  EXPECT_EQ(tool("check /nonexistent/session.ses nu").code, 2);
}

// Property: random single-character corruptions of corpus sessions never
// crash and only ever produce the documented exit codes.
TEST(ExitCodes, MutatedSessions) {
  std::mt19937 rng(20261014);
  const std::string alphabet = "[](){};,:->=^*+/ #xQF0123";
  std::size_t parse_errors = 0;
  for (const auto& f : corpus_sessions()) {
    const auto text = slurp(f);
    const auto ast = parse_session(text);
    for (int trial = 0; trial < 40; ++trial) {
      std::string mutated = text;
      std::size_t pos = std::uniform_int_distribution<std::size_t>(0, text.size() - 1)(rng);
      switch (trial % 3) {
        case 0: mutated.erase(pos, 1); break;
        case 1: mutated[pos] = alphabet[rng() % alphabet.size()]; break;
        default: mutated.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
      }
      const std::string target = ast.maps.empty() ? "none" : ast.maps.front().name;
      CommandRequest req = request("check", {target});
      req.property = "integral";
      req.timeout_ms = 5000;
      auto out = cli::run_command(req, mutated);
      EXPECT_TRUE(out.exit_code == 0 || out.exit_code == 2 || out.exit_code == 3 || out.exit_code == 4)
          << f << "\n" << mutated << "\n" << out.report.dump();
      if (out.exit_code == 2 && out.report["error"].contains("line")) {
        ++parse_errors;
        std::size_t lines = static_cast<std::size_t>(std::count(mutated.begin(), mutated.end(), '\n')) + 1;
        EXPECT_LE(out.report["error"]["line"].get<std::size_t>(), lines);
      }
    }
  }
  EXPECT_GT(parse_errors, 20u);
}
