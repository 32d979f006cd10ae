#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hyperham::cli {

enum class Status { ok, proved_negative, budget, stage_failure, invalid, usage, parse_error, error };

std::string to_string(Status s);
int exit_code(Status s);

struct CommandResult {
  Status status = Status::ok;
  int exit = 0;
  std::uint64_t seed = 0;
  std::string payload;  // what went to stdout or --out
  double timing_ms = 0;
};

// args excludes the program name. Payload goes to `out` unless --out names
// a file; diagnostics go to `err`.
CommandResult dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperham::cli
