// Acceptance suite runner: one PASS/FAIL line per criterion, followed by the
// sub-checks. Every criterion compares exact integers, so the pinned
// tolerance is zero.

#include <CLI11.hpp>

#include <iostream>

#include "qhcodes/acceptance.hpp"

#ifndef QHCODES_DATA_DIR
#define QHCODES_DATA_DIR "data"
#endif

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  qh::AcceptanceOptions opts;
  opts.fixture_path = std::string(QHCODES_DATA_DIR) + "/example_q2_hermitian.txt";
  app.add_option("--criterion", only, "criterion id (repeatable; all when omitted)")
      ->check(CLI::Range(1, qh::kCriteria));
  app.add_option("--fixture", opts.fixture_path, "worked-example fixture");
  app.add_option("--seed", opts.seed, "seed for the randomized checks");
  CLI11_PARSE(app, argc, argv);

  const auto run = qh::run_acceptance(opts, only);
  bool failed = false;
  if (run.preflight_failure) {
    std::cout << qh::format_line(*run.preflight_failure, false) << '\n';
    for (const auto& c : run.preflight_failure->checks) std::cout << "    " << c << '\n';
    failed = true;
  }
  for (const auto& r : run.results) {
    std::cout << qh::format_line(r) << '\n';
    for (const auto& c : r.checks) std::cout << "    " << c << '\n';
    if (!r.detail.empty()) std::cout << "    " << r.detail << '\n';
    failed = failed || r.verdict != qh::Verdict::Pass;
  }
  return failed ? 1 : 0;
}
