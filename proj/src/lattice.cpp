#include "amf/lattice.hpp"

namespace amf {

bool Lattice::contains(const std::vector<Int>& v) const {
  if (v.size() != ambient_) return false;
  RatMat b(1, ambient_);
  for (std::size_t j = 0; j < ambient_; ++j) b(0, j) = Rat(v[j]);
  auto x = solve_left(to_rat(basis_), b);
  if (!x) return false;
  return is_integral(*x);
}

Lattice lattice_intersect(const Lattice& l1, const Lattice& l2) {
  if (l1.ambient_rank() != l2.ambient_rank())
    throw std::invalid_argument("ambient rank mismatch");
  const std::size_t n = l1.ambient_rank();
  const std::size_t r1 = l1.rank(), r2 = l2.rank();
  if (r1 == 0 || r2 == 0) return Lattice(n);

  // x in both lattices iff x = a * B1 = b * B2; solve for (a, b) in the
  // integer kernel of [B1^T | -B2^T].
  IntMat m(n, r1 + r2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < r1; ++k) m(i, k) = l1.basis()(k, i);
    for (std::size_t k = 0; k < r2; ++k) m(i, r1 + k) = -l2.basis()(k, i);
  }
  IntMat ker = integer_kernel(m);
  IntMat gens(ker.rows(), n);
  for (std::size_t i = 0; i < ker.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int s = 0;
      for (std::size_t k = 0; k < r1; ++k) s += ker(i, k) * l1.basis()(k, j);
      gens(i, j) = s;
    }
  return Lattice(n, gens);
}

Lattice lattice_saturate(const Lattice& l) {
  const std::size_t n = l.ambient_rank();
  if (l.rank() == 0) return l;
  // sat(L) = integer kernel of a basis of the orthogonal complement of Q*L.
  IntMat ortho = integer_kernel(l.basis());
  if (ortho.rows() == 0) return Lattice::full(n);
  return Lattice(n, integer_kernel(ortho));
}

QuotientInvariants quotient_invariants(const Lattice& sub, const Lattice& sup) {
  if (sub.ambient_rank() != sup.ambient_rank())
    throw NotSublattice("ambient rank mismatch");
  auto coords = solve_left(to_rat(sup.basis()), to_rat(sub.basis()));
  if (!coords || !is_integral(*coords))
    throw NotSublattice("sub is not contained in sup");

  QuotientInvariants out;
  out.free_rank = sup.rank() - sub.rank();
  if (sub.rank() == 0) return out;
  SmithForm snf = smith_normal_form(to_int(*coords));
  for (const Int& d : snf.invariant_factors) {
    if (d == 0) throw NotSublattice("sub basis not independent");
    if (d > 1) out.torsion.push_back(d);
  }
  return out;
}

}  // namespace amf
