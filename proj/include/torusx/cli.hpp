// Batch front end. A job is fully described by its JobConfig, which is echoed
// into every JSON report so runs can be reproduced.
#pragma once

#include "torusx/json_io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>

namespace torusx {

/// Resource limits; exceeding one is a refusal (exit code 1), never a
/// silent truncation. Overridable through TORUSX_* environment variables.
struct Caps {
  std::size_t max_support = 64;            // TORUSX_MAX_SUPPORT
  std::size_t max_torsion_vars = 4;        // TORUSX_MAX_TORSION_VARS
  unsigned long max_torsion_order = 30;    // TORUSX_MAX_TORSION_ORDER
  std::uint64_t density_cap = 2000000;     // TORUSX_DENSITY_CAP
  std::size_t max_amoeba_count = 1000000;  // TORUSX_MAX_AMOEBA_COUNT

  static Caps from_env();
};

struct JobConfig {
  std::string command;
  std::string polynomial;
  std::optional<std::size_t> nvars;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  bool json = true;
  Caps caps;
};

Json to_json(const JobConfig& job);

struct Report {
  int exit_code = 0;  // 0 decided, 2 mostly Unknown, 1 error
  std::string text;   // JSON document or plain lines, newline terminated
};

/// Runs one job; errors become exit code 1 with a message in `text`.
Report run(const JobConfig& job);

/// Parses the command line (CLI11) and runs; returns the process exit code.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace torusx
