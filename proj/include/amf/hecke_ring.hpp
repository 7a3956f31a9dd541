#pragma once

#include "amf/spectra.hpp"

#include <map>
#include <string>
#include <vector>

namespace amf {

struct NotReduced : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotOccurring : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The unital Z-ring generated by named commuting integer matrices acting on
// Z^n, with its saturation inside End(Z^n) and trace-form data.
struct HeckeRing {
  std::vector<std::string> names;      // generator names, input order
  std::vector<IntMat> generators;
  std::size_t lattice_rank = 0;
  std::vector<IntMat> z_basis;         // basis of the generated ring
  std::vector<IntMat> saturation_basis;
  Int index = 1;                       // [saturation : ring]
  Int trace_form_disc = 0;             // of the saturated order (regular trace)
};

HeckeRing hecke_ring(const std::vector<std::string>& names, const std::vector<IntMat>& gens);

struct SaturationIndex {
  Int index;
  std::vector<Int> obstruction_primes;  // primes dividing the index
};

SaturationIndex saturation_index(const HeckeRing& ring);

// One-sided certificate: true if p divides neither the saturation index nor
// the trace-form discriminant of the saturated order; false means "not
// certified". Throws NotReduced when the rational ring has nilpotents.
bool semisimple_mod_p(const HeckeRing& ring, const Int& p);

struct RingCharacterQ {
  std::map<std::string, QValue> values;
  std::size_t orbit_size;
  std::size_t multiplicity;
  std::vector<Int> witness;  // nonempty when rational
};

struct RingCharacterGF {
  const GFCtx* field;
  std::map<std::string, GFElem> values;
  std::size_t multiplicity;
  std::vector<GFElem> witness;
};

std::vector<RingCharacterQ> characters_q(const HeckeRing& ring);
std::vector<RingCharacterGF> characters_gf(const HeckeRing& ring, const GFCtx* field);

// A characteristic-zero eigensystem descriptor reducing to a mod-ell
// character: one irreducible integer minimal polynomial per generator,
// compatible on a common generalized eigenspace.
struct LiftDescriptor {
  std::map<std::string, IntPoly> min_polys;
  std::size_t component_dim;
};

// All characteristic-zero systems whose reduction matches eta_bar; throws
// NotOccurring when eta_bar has no witness on the lattice mod ell.
std::vector<LiftDescriptor> lift_character(const HeckeRing& ring, const RingCharacterGF& eta_bar);

}  // namespace amf
