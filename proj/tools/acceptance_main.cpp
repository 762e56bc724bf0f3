// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any failure.
// Usage: kpwave_acceptance [--fast] [--from <snapshot dir>]

#include <cstring>
#include <iostream>
#include <string>

#include "kpwave/validation/acceptance.hpp"

int main(int argc, char** argv) {
  kpwave::validation::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--fast") == 0) {
      opt.fast = true;
    } else if (std::strcmp(argv[i], "--from") == 0 && i + 1 < argc) {
      opt.from_dir = argv[++i];
    } else {
      std::cerr << "usage: kpwave_acceptance [--fast] [--from <dir>]\n";
      return 2;
    }
  }
  opt.on_result = [](const kpwave::validation::CriterionResult& r) {
    std::cout << kpwave::validation::format_result(r) << std::endl;
  };
  const auto results = kpwave::validation::run_acceptance(opt);
  return kpwave::validation::no_failures(results) ? 0 : 1;
}
