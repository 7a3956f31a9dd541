#pragma once

#include "amf/matrix.hpp"

#include <optional>
#include <vector>

namespace amf {

struct SmithForm {
  std::vector<Int> invariant_factors;  // non-negative, d1 | d2 | ... (zeros last)
  IntMat left;                         // unimodular, left * m * right diagonal
  IntMat right;                        // unimodular
};

SmithForm smith_normal_form(const IntMat& m);

// Row Hermite normal form: returns the nonzero rows (pivots positive,
// entries above a pivot reduced into [0, pivot)). Canonical basis for the
// row lattice of m.
IntMat hermite_normal_form(const IntMat& m);

// Basis of {x : m x = 0} as rows; the kernel lattice is saturated.
IntMat integer_kernel(const IntMat& m);

// Determinant via fraction-free elimination.
Int determinant(const IntMat& m);

std::size_t rank(const RatMat& m);

// Reduced row echelon form; returns pivot column indices through `pivots`.
RatMat rref(const RatMat& m, std::vector<std::size_t>* pivots = nullptr);

// Solves x * a = b for each row of b (x rows are coordinate vectors), or
// nullopt if some row of b is outside the row space of a.
std::optional<RatMat> solve_left(const RatMat& a, const RatMat& b);

// Basis of the rational right kernel, as rows.
RatMat rational_kernel(const RatMat& m);

}  // namespace amf
