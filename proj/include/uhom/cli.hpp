#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "uhom/groebner.hpp"

namespace uhom::cli {

inline constexpr const char* kToolName = "uhtool";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitParse = 2, kExitScope = 3, kExitCap = 4 };

struct CommandRequest {
  std::string command;            // check wn factor perfection kollar twist gb oracle
  std::vector<std::string> args;  // target name; for oracle: sub-command, ring[, ring]
  std::optional<std::string> property;
  std::uint32_t level = 1;
  std::uint32_t max_r = 16;
  std::uint32_t r = 1;
  std::string order = "grevlex";
  std::optional<std::string> poly;
  Limits limits;
  std::optional<std::uint64_t> timeout_ms;
  bool timings = true;
};

struct CommandOutcome {
  int exit_code = kExitOk;
  nlohmann::ordered_json report;
};

/// Parses the session, runs one command and returns the report. Never throws
/// for library errors; they become an `error` block and a nonzero exit code.
CommandOutcome run_command(const CommandRequest& request, std::string_view session_text);

/// Plain-text rendering of a report for terminals.
std::string render_text(const nlohmann::ordered_json& report);

/// `lex`, `grevlex` or `block:2,1`; throws ParseError otherwise.
MonomialOrder parse_order(std::string_view text, std::size_t arity);

}  // namespace uhom::cli
