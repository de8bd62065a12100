#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace paretolab {

struct ExperimentInfo {
  const char* id;
  const char* command;  // verify, demo or study
  const char* description;
};

// Fixed at compile time; never empty.
std::span<const ExperimentInfo> experiment_registry();

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the paretolab binary. `args` excludes the program name.
// Returns 0 when every check passes or is NOT-APPLICABLE, 1 when a check
// fails and 2 on usage or configuration errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paretolab
