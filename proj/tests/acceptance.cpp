// Runs every acceptance criterion and prints one line per criterion.
// Optional arguments: suite names or numbers to run a subset.

#include <iostream>
#include <string>
#include <vector>

#include "ktf/engine.hpp"
#include "ktf/verify.hpp"

int main(int argc, char** argv) {
  ktf::VerifyOptions opt;
  opt.threads = ktf::default_threads();
  std::vector<std::string> names;
  for (int i = 1; i < argc; ++i) names.emplace_back(argv[i]);
  if (names.empty()) {
    for (const auto& s : ktf::suites()) names.emplace_back(s.name);
  }
  int failed = 0;
  for (const auto& name : names) {
    const auto r = ktf::run_suite(name, opt);
    std::cout << ktf::summary_line(r) << "\n";
    for (const auto& d : r.details) std::cout << "    " << d << "\n";
    std::cout.flush();
    failed += !r.passed;
  }
  std::cout << (names.size() - failed) << "/" << names.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
