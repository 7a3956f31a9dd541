#pragma once

#include "amf/coset_model.hpp"

#include <random>
#include <string>
#include <vector>

namespace amf {

// Two singleton levels joined by a two-point X_J; the smallest valid model.
DoubleCosetModel tiny_model();

// tiny_model with one bad J-weight: the mass formula fails at the K point.
DoubleCosetModel broken_mass_model();

// Signed double cover of a two-vertex multigraph with q+1 parallel edges,
// plus_edges of them unflipped. Levels K and K' are both the four cover
// vertices, X_J the directed cover edges. Registered operators: the
// adjacency "t" and the deck involution "deck" at both maximal levels and
// the central deck lift "deck_j" at J. The antisymmetric adjacency
// eigenvalue is 2*plus_edges - (q+1).
DoubleCosetModel double_cover_model(const Int& q, unsigned plus_edges);

// double_cover_model tensored with a two-point auxiliary factor carrying a
// swap operator at every level ("aux", "aux_j"); the J-level swap is
// central.
DoubleCosetModel double_cover_aux_model(const Int& q, unsigned plus_edges);

struct RaisingInstance {
  std::string name;
  DoubleCosetModel model;
  Int ell;
  Int theta;           // adjacency eigenvalue of the chosen eigensystem
  long expected_n;     // valuation bound the certificate must reach
};

// The bundled synthetic raising corpus; every instance satisfies the
// level-raising congruence at its ell with the stated bound.
std::vector<RaisingInstance> raising_corpus();

// Seeded random valid model with |X_J| <= 50: random fiber structure and
// random J-weights, K/K'-weights solved from the mass formula.
DoubleCosetModel random_valid_model(std::mt19937_64& rng);

}  // namespace amf
