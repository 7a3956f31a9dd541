#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace amf {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs the full acceptance suite; randomized parts use the given seed.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 20240817);

inline constexpr std::uint64_t kDefaultAcceptanceSeed = 20240817;

}  // namespace amf
