#pragma once

#include "amf/gfmat.hpp"
#include "amf/intpoly.hpp"
#include "amf/lattice.hpp"

#include <stdexcept>
#include <vector>

namespace amf {

struct NonCommuting : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A simultaneous (generalized) eigensystem of a commuting family over a
// finite field. Values live in the splitting field `field`, an extension of
// the ops' coefficient field obtained deterministically.
struct GFCharacter {
  const GFCtx* field;
  std::vector<GFElem> values;      // one per op, input order
  std::size_t multiplicity;        // dim of the joint generalized eigenspace
  std::vector<GFElem> witness;     // simultaneous eigenvector
};

std::vector<GFCharacter> simultaneous_spectra_gf(const std::vector<GFMat>& ops);

// One eigenvalue of one op on a joint component over Q: always an
// irreducible monic integer polynomial, plus the exact value when rational.
struct QValue {
  IntPoly min_poly;
  bool is_rational() const { return min_poly.degree() == 1; }
  Rat rational() const;
};

// A Galois orbit of simultaneous eigensystems over Q. The component is the
// joint generalized eigenspace of the whole orbit; orbit_size is the degree
// of the residue field, and each of the orbit_size conjugate characters has
// the stated generalized multiplicity. A true integral eigenvector witness
// is provided when the orbit is a single rational character.
struct QCharacterOrbit {
  std::vector<QValue> values;      // one per op
  std::size_t orbit_size;
  std::size_t multiplicity;
  IntMat component_basis;          // saturated, rows span the component
  std::vector<Int> witness;        // primitive integral; empty unless rational
  bool is_rational() const { return orbit_size == 1; }
};

std::vector<QCharacterOrbit> simultaneous_spectra_q(const std::vector<IntMat>& ops);

// Z-basis (as matrices, first entry the identity) of the unital matrix ring
// generated by commuting integer matrices; monomial closure with HNF
// reduction each round.
std::vector<IntMat> matrix_ring_basis(const std::vector<IntMat>& gens, std::size_t n);

// Restriction of an integer matrix to a saturated invariant lattice given by
// basis rows; throws if the lattice is not invariant.
IntMat restrict_to_lattice(const IntMat& op, const IntMat& basis_rows);

GFMat gf_restrict(const GFMat& op, const GFMat& basis_rows);

}  // namespace amf
