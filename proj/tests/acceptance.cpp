// Runs acceptance criteria 1-10 and prints one PASS/FAIL line each. With
// arguments, runs only the listed criterion numbers.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <vector>

#include "carleson/experiments.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (int i = 1; i <= 10; ++i) ids.push_back(i);
  }
  int failed = 0;
  for (int id : ids) {
    try {
      auto r = carleson::run_suite(id);
      std::printf("%s criterion %d (%s) %.1fs/%.0fs: %s\n", r.pass ? "PASS" : "FAIL", id, r.name.c_str(), r.seconds,
                  r.budget, r.detail.c_str());
      if (!r.pass) ++failed;
    } catch (const std::exception& e) {
      std::printf("FAIL criterion %d: error: %s\n", id, e.what());
      ++failed;
    }
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
