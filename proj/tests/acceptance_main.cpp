#include "polyapprox/acceptance.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria: one PASS/FAIL line per criterion"};
  polyapprox::AcceptanceOptions opt;
  bool no_budget = false;
  app.add_option("--filter", opt.filter, "Comma-separated criterion ids, tags or name fragments");
  app.add_flag("--inject-fault", opt.inject_fault, "Corrupt the reported grid step");
  app.add_flag("--no-budget", no_budget, "Do not enforce runtime budgets");
  CLI11_PARSE(app, argc, argv);
  opt.enforce_budget = !no_budget;
  const auto results = polyapprox::run_acceptance(opt);
  std::cout << polyapprox::format_report(results);
  if (results.empty()) {
    std::cerr << "no criterion matches the filter\n";
    return 1;
  }
  for (const auto& r : results) {
    if (!r.passed) return 1;
  }
  return 0;
}
