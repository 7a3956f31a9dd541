#pragma once

#include "amf/lattice.hpp"
#include "amf/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace amf {

enum class Level { K, Kp, J };

std::string level_name(Level level);

struct ModelOperator {
  std::string name;
  Level level = Level::J;
  IntMat matrix;
  std::string adjoint;  // name of the partner with <r(f)x,y> = <x,r(f~)y>
  bool central_at_j = false;
};

// Finite double-coset data: three index sets with projections X_J -> X_K,
// X_J -> X_K', stabilizer-order weights, and named operators.
struct DoubleCosetModel {
  std::vector<std::string> x_k, x_kp, x_j;
  std::vector<std::size_t> pi, pip;  // indices into x_k / x_kp, one per X_J
  std::vector<Int> w_k, w_kp, w_j;
  std::vector<ModelOperator> operators;
  bool rank_one = false;
  std::optional<Int> prime_q;
  std::string provenance;

  std::size_t size(Level level) const;
  const std::vector<Int>& weights(Level level) const;
  const ModelOperator* find_operator(const std::string& name) const;
  std::vector<const ModelOperator*> operators_at(Level level) const;
  std::vector<const ModelOperator*> central_operators() const;
};

struct ValidationFailure {
  std::string code;     // stable identifier, e.g. "mass_formula"
  std::string message;  // witness detail
};

struct ValidationReport {
  bool accepted = false;
  Int index_k = 0;   // [K:J]
  Int index_kp = 0;  // [K':J]
  std::vector<ValidationFailure> failures;
};

ValidationReport validate(const DoubleCosetModel& model);

// Diagonal Gram matrix diag(w(x)^-1) of the weighted pairing at a level.
RatMat gram_matrix(const DoubleCosetModel& model, Level level);

struct AnnihilatorData {
  Int a_min;  // minimal a with a<L,L> integral
  Int b_min;  // minimal b with <v,L> integral => b v in L
};

AnnihilatorData annihilators(const DoubleCosetModel& model, Level level);

// Pullback along pi (level K) or pip (level K'): 0/1 matrix, functions on
// the parent level to functions on X_J.
IntMat pullback(const DoubleCosetModel& model, Level side);

// Adjoint of the pullback for the weighted pairings:
// (iota~ g)(x) = w(x) * sum_{y in fiber} g(y) / w_J(y).
RatMat pullback_adjoint(const DoubleCosetModel& model, Level side);

// [K:J] (side K) or [K':J] (side K'), from the mass formula.
Int mass_index(const DoubleCosetModel& model, Level side);

// Idempotent averaging projector onto pullbacks from the given side.
RatMat averaging_projector(const DoubleCosetModel& model, Level side);

struct ClassPartition {
  std::size_t num_classes = 0;
  std::vector<std::size_t> class_of;        // per X_J element
  std::vector<std::size_t> representative;  // per class, an X_J index
  std::vector<std::size_t> radius;          // chain distance to representative
  std::vector<std::size_t> block_of_k;      // induced block id per X_K element
  std::vector<std::size_t> block_of_kp;     // induced block id per X_K' element
};

// Finest partition of X_J whose blocks are unions of pi-fibers and of
// pip-fibers, with chain radii to the smallest representative per class.
ClassPartition class_partition(const DoubleCosetModel& model);

// 0/1 indicator rows of the induced partition blocks at level K (or K').
IntMat class_constant_basis(const DoubleCosetModel& model, Level side);

}  // namespace amf
