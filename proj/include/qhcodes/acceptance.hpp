#pragma once

// The acceptance suite: one verdict per criterion, shared by `verify-all` and
// the acceptance test binary.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhcodes/budget.hpp"

namespace qh {

enum class Verdict { Pass, Fail, Skipped };
std::string_view verdict_name(Verdict v);

struct CriterionResult {
  int id = 0;
  std::string title;
  Verdict verdict = Verdict::Skipped;
  // One entry per sub-check: "name: measured (expected)".
  std::vector<std::string> checks;
  std::string detail;
  double seconds = 0.0;
};

struct ModulusOverride {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> modulus;  // monic, low to high
};

struct AcceptanceOptions {
  Budget budget;
  std::string fixture_path;
  std::uint64_t seed = 1;
  // Negative control: replace the modulus of GF(p^m). A reducible one makes
  // the field preflight fail before any criterion runs.
  std::vector<ModulusOverride> modulus_overrides;
};

struct AcceptanceRun {
  std::optional<CriterionResult> preflight_failure;
  std::vector<CriterionResult> results;
};

inline constexpr int kCriteria = 10;

// Runs the criteria in `only` (all when empty).
AcceptanceRun run_acceptance(const AcceptanceOptions& opts, const std::vector<int>& only = {});
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

// "[PASS] 1 size formulas (0.01 s)".
std::string format_line(const CriterionResult& r, bool with_timing = true);

}  // namespace qh
