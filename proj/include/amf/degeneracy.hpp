#pragma once

#include "amf/coset_model.hpp"
#include "amf/lattice.hpp"

namespace amf {

struct BlockMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroE : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The degeneracy map delta = [iota | iota'] : functions on X_K + X_K' ->
// functions on X_J, with its weighted adjoint, the Gram matrix
// delta~ o delta, and the integral old/new lattices inside Z^{X_J}.
struct DegeneracyData {
  IntMat delta;          // n_J x (n_K + n_K')
  RatMat delta_adjoint;  // (n_K + n_K') x n_J
  RatMat delta_gram;     // delta_adjoint * delta
  Lattice old_lattice;   // Z^{X_J} meet Q*im(delta)
  Lattice new_lattice;   // Z^{X_J} meet im(delta)^perp
  Int index_k;
  Int index_kp;
};

// Builds the data and cross-checks delta~ delta against the block form
// [[ [K:J]*Id, iota~ iota' ], [ iota'~ iota, [K':J]*Id ]] with off-diagonal
// blocks recomputed through the averaging projectors; BlockMismatch if the
// routes disagree.
DegeneracyData build_degeneracy(const DoubleCosetModel& model);

// Invariant factors (>1) of (Z^{X_J} meet delta(Q-span)) / delta(Z-span).
// Always empty on a valid model; computed, not assumed.
std::vector<Int> ihara_defect(const DoubleCosetModel& model);

// Invariant factors of U' / (U' meet E^-1 delta~ delta(U)) where
// U' = U meet ker(delta)^perp, for the standard pairing on the ambient
// coordinates. delta maps ambient-U columns to ambient-V columns.
std::vector<Int> congruence_module(const Lattice& u_lattice, const Lattice& v_lattice,
                                   const IntMat& delta, const Int& e);

}  // namespace amf
