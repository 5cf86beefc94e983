#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qhcodes/budget.hpp"

namespace qh::cli {

// Exit statuses.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

struct RunConfig {
  std::string command;  // "variety", "code", "sss", "verify-all"
  std::string action;
  std::uint32_t q = 3;
  unsigned r = 3;
  std::string variety = "B";
  std::optional<std::uint32_t> alpha;
  std::optional<std::uint32_t> beta;
  bool auto_params = false;
  std::optional<std::uint32_t> p0;
  std::uint64_t seed = 1;
  std::string format = "json";
  unsigned parallel = 0;
  std::uint64_t budget = Budget::kDefaultWork;
  std::string output;
  unsigned k = 1;
  std::uint32_t secret = 0;
  std::string set;
  std::string fixture;
  std::vector<std::string> modulus;  // "p:c0,c1,...,cm"
};

// Parses argv, runs the command, writes the report to `out` (or --output)
// and diagnostics to `err`. Returns the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qh::cli
