// Acceptance gate. Runs every library-level acceptance criterion at its
// pinned tolerance, then times an end-to-end run of the command-line
// selftest. Prints one PASS/FAIL line per criterion and exits nonzero if
// anything misses its bound.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "blocksym/selftest.hpp"

int main() {
  using namespace blocksym;

  SelftestReport report = run_acceptance_criteria(SelftestConfig{});
  for (const CriterionResult& r : report.results) std::puts(format_line(r).c_str());

  // Criterion 11: the shipped tool's selftest must pass end to end in under
  // a minute, spawned as a real child process.
  CriterionResult cli;
  cli.index = 11;
  cli.name = "command-line selftest under 60 s";
  cli.bound = 60.0;
  const std::string command = std::string(BLOCKSYM_CLI_PATH) + " selftest > /dev/null 2>&1";
  const auto start = std::chrono::steady_clock::now();
  const int status = std::system(command.c_str());
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  cli.observed = elapsed.count();
  const bool exited_clean = status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  cli.passed = exited_clean && elapsed.count() < 60.0;
  if (!exited_clean) cli.detail = "selftest subcommand exited abnormally";
  std::puts(format_line(cli).c_str());

  const bool all = report.all_passed && cli.passed;
  std::puts(all ? "acceptance: all criteria passed" : "acceptance: FAILED");
  return all ? 0 : 1;
}
