#include <cstdio>
#include <cstdlib>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int k = 1; k < argc; ++k) ids.push_back(std::atoi(argv[k]));
  if (ids.empty()) ids = noether::acceptance::criterion_ids();
  int failed = 0;
  for (int id : ids) {
    auto r = noether::acceptance::run_criterion(id);
    std::printf("%s criterion %d (%s) %.2fs/%.0fs: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.limit_seconds, r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  }
  return failed ? 1 : 0;
}
