#pragma once

#include "amf/normal_forms.hpp"

#include <stdexcept>
#include <vector>

namespace amf {

struct NotSublattice : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finite-rank sublattice of Z^ambient, stored as a canonical (HNF) basis,
// one vector per row. Basis rows are linearly independent over Q.
class Lattice {
 public:
  Lattice() : ambient_(0), basis_(0, 0) {}
  explicit Lattice(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}
  Lattice(std::size_t ambient, const IntMat& generators)
      : ambient_(ambient), basis_(hermite_normal_form(generators)) {
    if (generators.cols() != ambient) throw std::invalid_argument("generator length mismatch");
  }

  static Lattice full(std::size_t n) { return Lattice(n, IntMat::identity(n)); }

  static Lattice scaled(std::size_t n, const Int& c) {
    IntMat m = IntMat::identity(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return Lattice(n, m);
  }

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMat& basis() const { return basis_; }

  bool operator==(const Lattice& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }

  bool contains(const std::vector<Int>& v) const;

 private:
  std::size_t ambient_;
  IntMat basis_;
};

Lattice lattice_intersect(const Lattice& l1, const Lattice& l2);

// (Q * L) intersect Z^ambient: the saturation of L in its rational span.
Lattice lattice_saturate(const Lattice& l);

struct QuotientInvariants {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, divisibility order
};

// Structure of sup/sub; throws NotSublattice if sub is not contained in sup.
QuotientInvariants quotient_invariants(const Lattice& sub, const Lattice& sup);

}  // namespace amf
