#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ktf {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::vector<std::string> details;  // one line each
};

struct VerifyOptions {
  unsigned threads = 1;
  // Time budget for the 7-point Kuratowski 14-set search.
  double set14_budget_seconds = 600;
  // Time budget for the non-blocking 34-set search (exhaustive up to 7
  // points, then randomized at 8); 0 skips it.
  double set34_budget_seconds = 180;
  std::uint64_t seed = 1;
};

struct SuiteInfo {
  int id;
  std::string_view name;
  std::string_view summary;
  double budget_seconds;
};

const std::vector<SuiteInfo>& suites();

// Runs one suite by name or number ("counting" or "1").
CriterionResult run_suite(std::string_view name, const VerifyOptions& options);
std::vector<CriterionResult> run_all(const VerifyOptions& options);

// "PASS  3 rule-soundness  (0.41 s, budget 5 s)"
std::string summary_line(const CriterionResult& r);

}  // namespace ktf
