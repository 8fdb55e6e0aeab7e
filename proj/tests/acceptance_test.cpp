// One line per acceptance criterion; nonzero exit if any fails.

#include <cstdlib>
#include <iostream>
#include <string>

#include "tilt/acceptance.hpp"

int main(int argc, char** argv) {
  tilt::acceptance::Options opts;
  if (argc > 1) opts.seed = std::stoull(argv[1]);
  int failed = 0;
  for (int id = 1; id <= 13; ++id) {
    auto r = tilt::acceptance::run_criterion(id, opts);
    std::cout << tilt::acceptance::format_line(r) << std::endl;
    failed += !r.passed;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
