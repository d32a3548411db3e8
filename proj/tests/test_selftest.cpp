// The acceptance-suite engine: all ten library-level criteria pass at their
// shipped tolerances, over-tight overrides fail loudly, and reports are
// deterministic functions of the configuration.
#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "blocksym/selftest.hpp"

using namespace blocksym;

TEST_CASE("the acceptance suite passes with the default configuration") {
  SelftestReport report = run_acceptance_criteria();

  REQUIRE(report.results.size() == 10);
  REQUIRE(report.all_passed);
  for (size_t k = 0; k < report.results.size(); ++k) {
    const CriterionResult& r = report.results[k];
    INFO(r.name << ": " << r.detail);
    REQUIRE(r.index == static_cast<int>(k) + 1);
    REQUIRE(r.passed);
    REQUIRE(r.observed < r.bound);
    REQUIRE(!r.name.empty());
  }
}

TEST_CASE("over-tight tolerance overrides are reported as failures") {
  SelftestConfig config;
  config.tol.herstein = 0.0;
  SelftestReport report = run_acceptance_criteria(config);

  REQUIRE_FALSE(report.all_passed);
  bool saw_herstein_failure = false;
  for (const CriterionResult& r : report.results)
    if (r.index == 3) {
      saw_herstein_failure = !r.passed;
      REQUIRE(!r.detail.empty());
    }
  REQUIRE(saw_herstein_failure);
}

TEST_CASE("reports are deterministic in the configuration") {
  SelftestConfig config;
  config.seed = 4242;
  std::string once = format_report(run_acceptance_criteria(config));
  std::string twice = format_report(run_acceptance_criteria(config));
  REQUIRE(once == twice);
  REQUIRE(once.find("[PASS]") != std::string::npos);
}

TEST_CASE("the suite passes across distinct seeds") {
  for (std::uint64_t seed : {7ULL, 99ULL, 20240613ULL}) {
    SelftestConfig config;
    config.seed = seed;
    SelftestReport report = run_acceptance_criteria(config);
    INFO("seed " << seed);
    REQUIRE(report.all_passed);
  }
}

TEST_CASE("report lines carry verdict, index, name, and the two numbers") {
  CriterionResult fake;
  fake.index = 3;
  fake.name = "sample criterion";
  fake.passed = true;
  fake.observed = 1.2e-9;
  fake.bound = 1e-8;
  REQUIRE(format_line(fake) ==
          "[PASS] criterion  3: sample criterion (observed 1.20e-09, bound 1e-08)");

  fake.passed = false;
  fake.detail = "worst case at trial 7";
  REQUIRE(format_line(fake) ==
          "[FAIL] criterion  3: sample criterion (observed 1.20e-09, bound 1e-08) -- "
          "worst case at trial 7");
}
