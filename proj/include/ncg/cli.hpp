#pragma once

// Command dispatch for the ncg tool.  Every command produces a JSON report
// with a stable key order and an exit code: 0 all checks pass, 1 some check
// fails, 2 inconclusive within the window, 3 error.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncg/homology.hpp"

namespace ncg {

using Json = nlohmann::ordered_json;

struct CommandOptions {
  std::string command;
  std::vector<std::string> args;
  std::optional<std::string> field;
  std::optional<int> max_deg;
  std::optional<std::string> window;  // "lo,hi,hmax,cap"
  std::uint64_t seed = 0;
  bool dual_sign = false;
  /// Path of a workspace file; the built-in example when empty.
  std::string workspace;
  /// Workspace contents, used instead of `workspace` when set.
  std::optional<std::string> workspace_text;
  std::optional<std::string> match;
  std::optional<std::string> central;
  std::vector<std::string> polys;
  std::optional<int> shift;
  std::optional<int> d;
  std::optional<int> ell;
  int n = 1;
};

struct CommandResult {
  Json report;
  int exit_code = 0;
};

const std::vector<std::string>& command_names();

/// Never throws for bad input; errors become exit code 3 with an "error"
/// entry in the report next to the checks completed so far.
CommandResult run_command(const CommandOptions& opt);

int exit_code_for(Verdict v);

/// "lo,hi,hmax,cap".
Window parse_window(const std::string& text);

}  // namespace ncg
