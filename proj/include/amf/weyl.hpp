#pragma once

#include "amf/matrix.hpp"

#include <vector>

namespace amf {

enum class WeylType { A2, C2 };

// Finite Weyl group of rank 2, elements as (signed) permutation matrices,
// with Coxeter lengths from the two simple reflections.
struct WeylGroup {
  std::vector<IntMat> elements;
  std::vector<unsigned> lengths;
  std::vector<IntMat> simple;  // s1, s2

  static const WeylGroup& get(WeylType type);
};

// |W_L \ W / W_R| where W_L, W_R are generated by subsets of {0, 1}.
std::size_t weyl_double_cosets(WeylType type, const std::vector<int>& left_gens,
                               const std::vector<int>& right_gens);

// Sum of q^length(w) over the minimal-length representatives of W_P \ W.
Int bruhat_index(WeylType type, const std::vector<int>& parabolic_gens, const Int& q);

}  // namespace amf
