#include "amf/hecke_ring.hpp"

#include "amf/normal_forms.hpp"

#include <algorithm>
#include <numeric>

namespace amf {

namespace {

std::vector<Int> vectorize(const IntMat& m) {
  std::vector<Int> v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

IntMat rows_of(const std::vector<IntMat>& mats) {
  if (mats.empty()) return IntMat(0, 0);
  const std::size_t n2 = mats[0].rows() * mats[0].cols();
  IntMat rows(mats.size(), n2);
  for (std::size_t i = 0; i < mats.size(); ++i) rows.set_row(i, vectorize(mats[i]));
  return rows;
}

// Structure constants of a commutative matrix order in a given basis.
std::vector<RatMat> regular_representation(const std::vector<IntMat>& basis) {
  const std::size_t r = basis.size();
  RatMat rows = to_rat(rows_of(basis));
  std::vector<RatMat> reg;
  reg.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    RatMat prod(r, rows.cols());
    for (std::size_t j = 0; j < r; ++j) {
      auto v = vectorize(basis[i] * basis[j]);
      for (std::size_t c = 0; c < v.size(); ++c) prod(j, c) = Rat(v[c]);
    }
    auto coeffs = solve_left(rows, prod);
    if (!coeffs) throw std::logic_error("order not closed under multiplication");
    // Row j holds the coordinates of basis_i * basis_j: transpose for the
    // action-by-basis_i matrix.
    reg.push_back(coeffs->transpose());
  }
  return reg;
}

}  // namespace

HeckeRing hecke_ring(const std::vector<std::string>& names, const std::vector<IntMat>& gens) {
  if (names.size() != gens.size()) throw std::invalid_argument("name/generator count mismatch");
  if (gens.empty()) throw std::invalid_argument("no generators");
  const std::size_t n = gens[0].rows();
  for (const auto& g : gens)
    if (g.rows() != n || g.cols() != n) throw std::invalid_argument("generator shape mismatch");
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!commute(gens[i], gens[j])) throw NonCommuting("generators do not commute");

  HeckeRing ring;
  ring.names = names;
  ring.generators = gens;
  ring.lattice_rank = n;
  ring.z_basis = matrix_ring_basis(gens, n);

  Lattice span(n * n, rows_of(ring.z_basis));
  Lattice sat = lattice_saturate(span);
  ring.saturation_basis.clear();
  for (std::size_t i = 0; i < sat.rank(); ++i) {
    IntMat m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = sat.basis()(i, r * n + c);
    ring.saturation_basis.push_back(m);
  }
  auto quot = quotient_invariants(span, sat);
  ring.index = 1;
  for (const Int& d : quot.torsion) ring.index *= d;

  // Trace form of the saturated order under its regular representation.
  auto reg = regular_representation(ring.saturation_basis);
  const std::size_t r = reg.size();
  RatMat gram(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      Rat t = (reg[i] * reg[j]).trace();
      gram(i, j) = t;
      gram(j, i) = t;
    }
  // Entries are integers (the order is a ring); the determinant is the disc.
  IntMat gram_int(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (!is_int(gram(i, j))) throw std::logic_error("trace form not integral");
      gram_int(i, j) = num(gram(i, j));
    }
  ring.trace_form_disc = determinant(gram_int);
  return ring;
}

SaturationIndex saturation_index(const HeckeRing& ring) {
  SaturationIndex out;
  out.index = ring.index;
  Int rest = ring.index;
  for (Int p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    out.obstruction_primes.push_back(p);
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) out.obstruction_primes.push_back(rest);
  return out;
}

bool semisimple_mod_p(const HeckeRing& ring, const Int& p) {
  // Reducedness over Q: squarefree minimal polynomials on the basis, and a
  // nondegenerate trace form.
  for (const auto& b : ring.z_basis) {
    IntPoly cp = charpoly(b);
    IntPoly sf = squarefree_part(cp);
    // Minimal polynomial squarefree iff sf(b) = 0.
    IntMat val = sf.eval(b);
    if (!val.is_zero()) throw NotReduced("basis element has a nilpotent part");
  }
  if (ring.trace_form_disc == 0) throw NotReduced("degenerate trace form");
  return ring.index % p != 0 && ring.trace_form_disc % p != 0;
}

std::vector<RingCharacterQ> characters_q(const HeckeRing& ring) {
  std::vector<RingCharacterQ> out;
  for (const auto& orbit : simultaneous_spectra_q(ring.generators)) {
    RingCharacterQ ch;
    for (std::size_t i = 0; i < ring.names.size(); ++i) ch.values[ring.names[i]] = orbit.values[i];
    ch.orbit_size = orbit.orbit_size;
    ch.multiplicity = orbit.multiplicity;
    ch.witness = orbit.witness;
    out.push_back(std::move(ch));
  }
  return out;
}

std::vector<RingCharacterGF> characters_gf(const HeckeRing& ring, const GFCtx* field) {
  std::vector<GFMat> reduced;
  for (const auto& g : ring.generators) reduced.push_back(GFMat::reduce(field, g));
  std::vector<RingCharacterGF> out;
  for (const auto& ch : simultaneous_spectra_gf(reduced)) {
    RingCharacterGF rc;
    rc.field = ch.field;
    for (std::size_t i = 0; i < ring.names.size(); ++i) rc.values[ring.names[i]] = ch.values[i];
    rc.multiplicity = ch.multiplicity;
    rc.witness = ch.witness;
    out.push_back(std::move(rc));
  }
  return out;
}

std::vector<LiftDescriptor> lift_character(const HeckeRing& ring,
                                           const RingCharacterGF& eta_bar) {
  const std::size_t n = ring.lattice_rank;

  // eta_bar must occur: its joint generalized eigenspace mod ell is nonzero.
  {
    const GFCtx* ctx = eta_bar.field;
    GFMat space = GFMat::identity(ctx, n);
    for (std::size_t i = 0; i < ring.generators.size(); ++i) {
      GFMat a = GFMat::reduce(ctx, ring.generators[i]);
      const GFElem& v = eta_bar.values.at(ring.names[i]);
      for (std::size_t d = 0; d < n; ++d) a(d, d) = a(d, d) - v;
      GFMat power = GFMat::identity(ctx, n);
      for (std::size_t e = 0; e < n; ++e) power = power * a;
      space = gf_row_intersect(space, gf_kernel(power));
      if (space.rows() == 0) throw NotOccurring("character has no witness mod ell");
    }
  }

  // Candidate factors per generator: irreducible integer factors of the
  // characteristic polynomial whose reduction vanishes at eta_bar's value.
  std::vector<std::vector<std::pair<IntPoly, unsigned>>> candidates;
  for (std::size_t i = 0; i < ring.generators.size(); ++i) {
    std::vector<std::pair<IntPoly, unsigned>> mine;
    const GFElem& v = eta_bar.values.at(ring.names[i]);
    for (const auto& fac : factor_int_poly(charpoly(ring.generators[i]))) {
      GFPoly red = fac.factor.reduce(eta_bar.field);
      if (red.eval(v).is_zero()) mine.emplace_back(fac.factor, fac.multiplicity);
    }
    if (mine.empty()) throw NotOccurring("no integral factor reduces to the value");
    candidates.push_back(std::move(mine));
  }

  // Keep the combinations with a nonzero common generalized eigenspace over
  // Q whose reduction still meets eta_bar's eigenspace mod ell.
  std::vector<LiftDescriptor> out;
  std::vector<std::size_t> idx(candidates.size(), 0);
  for (;;) {
    RatMat space = to_rat(IntMat::identity(n));
    for (std::size_t i = 0; i < candidates.size() && space.rows() > 0; ++i) {
      const auto& [poly, mult] = candidates[i][idx[i]];
      IntMat power = IntMat::identity(n);
      IntMat value = poly.eval(ring.generators[i]);
      for (unsigned e = 0; e < mult; ++e) power = power * value;
      IntMat ker = integer_kernel(power);
      // Intersect row spans over Q.
      if (ker.rows() == 0) {
        space = RatMat(0, n);
        break;
      }
      IntMat stacked_a(space.rows(), n);
      for (std::size_t r = 0; r < space.rows(); ++r)
        for (std::size_t c = 0; c < n; ++c) {
          if (!is_int(space(r, c))) throw std::logic_error("expected integral basis");
          stacked_a(r, c) = num(space(r, c));
        }
      Lattice meet = lattice_intersect(lattice_saturate(Lattice(n, stacked_a)),
                                       lattice_saturate(Lattice(n, ker)));
      space = to_rat(meet.basis());
    }
    if (space.rows() > 0) {
      LiftDescriptor lift;
      for (std::size_t i = 0; i < candidates.size(); ++i)
        lift.min_polys[ring.names[i]] = candidates[i][idx[i]].first;
      lift.component_dim = space.rows();
      out.push_back(std::move(lift));
    }
    std::size_t j = 0;
    while (j < idx.size() && ++idx[j] == candidates[j].size()) {
      idx[j] = 0;
      ++j;
    }
    if (j == idx.size()) break;
  }
  std::sort(out.begin(), out.end(), [&](const LiftDescriptor& a, const LiftDescriptor& b) {
    for (const auto& name : ring.names) {
      const IntPoly& x = a.min_polys.at(name);
      const IntPoly& y = b.min_polys.at(name);
      if (!(x == y)) return x < y;
    }
    return false;
  });
  return out;
}

}  // namespace amf
