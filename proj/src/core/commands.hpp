#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace levymult {

struct CommandResult {
  bool pass = false;
  std::string reason;
  std::string report;  // ends with "RESULT PASS|FAIL reason=..."
  std::vector<std::string> artifacts;

  int exit_code() const { return pass ? 0 : 1; }
};

const std::vector<std::string>& command_names();

// Runs one command; errors are caught and reported as FAIL with the error code as reason.
CommandResult run_command(const std::string& command, const RunConfig& cfg);

struct SelftestItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<SelftestItem> run_selftest(std::uint64_t seed);

}  // namespace levymult
