#include "amf/selftest.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
  std::uint64_t seed = amf::kDefaultAcceptanceSeed;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  auto results = amf::run_acceptance(seed);
  bool all = true;
  int i = 0;
  for (const auto& r : results) {
    ++i;
    std::printf("[%2d/%2zu] %-32s %s\n", i, results.size(), r.name.c_str(),
                r.pass ? "PASS" : "FAIL");
    if (!r.pass) std::printf("        %s\n", r.detail.c_str());
    all = all && r.pass;
  }
  std::printf("acceptance: %s (seed %llu)\n", all ? "PASS" : "FAIL",
              static_cast<unsigned long long>(seed));
  return all ? 0 : 1;
}
