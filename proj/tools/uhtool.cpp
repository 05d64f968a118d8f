// uhtool: classify morphisms of presented algebras from a session file.
//
//   uhtool check  SESSION MAP [--property NAME]
//   uhtool wn     SESSION MAP
//   uhtool factor SESSION MAP
//   uhtool perfection SESSION RING --level N
//   uhtool kollar SESSION MAP --max-r R
//   uhtool twist  SESSION MAP --r R
//   uhtool gb     SESSION RING --order ORDER
//   uhtool oracle enumerate|nilpotents|rank SESSION RING
//   uhtool oracle roots SESSION RING --poly G
//   uhtool oracle homs  SESSION RING TARGET_RING
//
// SESSION may be '-' for standard input. Exit codes: 0 ran, 2 parse error or
// ill-defined map, 3 scope or certification failure, 4 resource cap.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "uhom/cli.hpp"

namespace {

bool read_session(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using uhom::cli::CommandRequest;
  CLI::App app{"Decide universal homeomorphisms and related properties of algebra maps"};
  app.set_version_flag("--version", std::string(uhom::cli::kToolVersion));
  app.require_subcommand(1);

  CommandRequest req;
  bool as_json = false, no_timings = false;
  std::string session_path;
  std::vector<std::string> extra;
  app.add_flag("--json", as_json, "Emit the JSON report")->configurable(false);
  app.add_flag("--no-timings", no_timings, "Omit the timing block (byte-stable output)");
  app.add_option("--nilpotency-cap", req.limits.nilpotency_cap, "Largest nilpotency exponent searched");
  app.add_option("--enum-cap", req.limits.enum_cap, "Largest finite ring the oracle enumerates");
  app.add_option("--timeout-ms", req.timeout_ms, "Wall-clock budget in milliseconds");

  auto target_command = [&](const char* name, const char* help, const char* what) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("session", session_path, "Session file or '-'")->required();
    sub->add_option(what, extra, what)->required()->expected(1);
    return sub;
  };
  auto* check = target_command("check", "Classify a map", "map");
  check->add_option("--property", req.property, "Single property (e.g. radicial, uh)");
  target_command("wn", "Weak normalization of the source in the target", "map");
  target_command("factor", "Schematic image factorization", "map");
  auto* perf = target_command("perfection", "Truncated perfection x -> x^(p^n)", "ring");
  perf->add_option("--level", req.level, "n")->required();
  auto* kollar = target_command("kollar", "Factor through a Frobenius twist", "map");
  kollar->add_option("--max-r", req.max_r, "Largest r tried");
  auto* twist = target_command("twist", "Frobenius twist B^(q), q = p^r", "map");
  twist->add_option("--r", req.r, "r")->required();
  auto* gb = target_command("gb", "Reduced Groebner basis of a ring's relations", "ring");
  gb->add_option("--order", req.order, "lex, grevlex or block:n1,n2,...");
  auto* oracle = app.add_subcommand("oracle", "Brute force over a finite F_p-algebra");
  oracle->fallthrough();
  std::string oracle_sub;
  oracle->add_option("sub", oracle_sub, "enumerate, nilpotents, roots, homs or rank")
      ->required()
      ->check(CLI::IsMember({"enumerate", "nilpotents", "roots", "homs", "rank"}));
  oracle->add_option("session", session_path, "Session file or '-'")->required();
  oracle->add_option("rings", extra, "Ring, then the target ring for homs")->required()->expected(1, 2);
  oracle->add_option("--poly", req.poly, "Univariate polynomial for roots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : uhom::cli::kExitParse;
  }

  req.command = app.get_subcommands().front()->get_name();
  if (req.command == "oracle") req.args.push_back(oracle_sub);
  req.args.insert(req.args.end(), extra.begin(), extra.end());
  req.timings = !no_timings;

  std::string text;
  if (!read_session(session_path, text)) {
    std::cerr << "uhtool: cannot read session file '" << session_path << "'\n";
    return uhom::cli::kExitParse;
  }
  auto outcome = uhom::cli::run_command(req, text);
  if (as_json)
    std::cout << outcome.report.dump(2) << "\n";
  else
    (outcome.exit_code == 0 ? std::cout : std::cerr) << uhom::cli::render_text(outcome.report);
  return outcome.exit_code;
}
