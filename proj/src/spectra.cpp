#include "amf/spectra.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <random>

namespace amf {

Rat QValue::rational() const {
  if (!is_rational()) throw std::logic_error("value is not rational");
  return Rat(-min_poly.coeff(0)) / Rat(min_poly.coeff(1));
}

IntMat restrict_to_lattice(const IntMat& op, const IntMat& basis_rows) {
  // op * B^T = B^T * A; solve rows of B*op^T in rows of B.
  auto x = solve_left(to_rat(basis_rows), to_rat(basis_rows * op.transpose()));
  if (!x || !is_integral(*x)) throw std::domain_error("lattice not invariant under operator");
  return to_int(*x).transpose();
}

GFMat gf_restrict(const GFMat& op, const GFMat& basis_rows) {
  GFMat x;
  if (!gf_solve_left(basis_rows, basis_rows * op.transpose(), &x))
    throw std::domain_error("subspace not invariant under operator");
  return x.transpose();
}

// ---------------------------------------------------------------------------
// Finite field side

namespace {

void check_commuting_gf(const std::vector<GFMat>& ops) {
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (!(ops[i] * ops[j] == ops[j] * ops[i]))
        throw NonCommuting("operators do not commute");
}

GFMat gf_shift(const GFMat& a, const GFElem& lambda) {
  GFMat s = a;
  for (std::size_t i = 0; i < a.rows(); ++i) s(i, i) = s(i, i) - lambda;
  return s;
}

GFMat gf_power(GFMat a, std::size_t e) {
  GFMat r = GFMat::identity(a.ctx(), a.rows());
  while (e) {
    if (e & 1) r = r * a;
    a = a * a;
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<GFCharacter> simultaneous_spectra_gf(const std::vector<GFMat>& ops) {
  if (ops.empty()) throw std::invalid_argument("no operators");
  const GFCtx* base = ops[0].ctx();
  const std::size_t n = ops[0].rows();
  for (const auto& m : ops) {
    if (m.ctx() != base || m.rows() != n || m.cols() != n)
      throw std::invalid_argument("operator shape/field mismatch");
  }
  check_commuting_gf(ops);

  // Splitting field: lcm of the degrees of all irreducible charpoly factors.
  unsigned m = 1;
  for (const auto& op : ops)
    for (const auto& fac : gf_factor(gf_charpoly(op)))
      m = static_cast<unsigned>(std::lcm<unsigned long, unsigned long>(
          m, static_cast<unsigned long>(fac.factor.degree())));
  const GFCtx* ext = GFCtx::get(base->p(), base->k() * m);

  std::vector<GFMat> big;
  big.reserve(ops.size());
  for (const auto& op : ops) big.push_back(op.embed(ext));

  // Refine the full space into joint generalized eigenspaces.
  std::vector<GFMat> components{GFMat::identity(ext, n)};
  std::vector<std::vector<GFElem>> values{std::vector<GFElem>()};
  for (const auto& op : big) {
    std::vector<GFMat> next_c;
    std::vector<std::vector<GFElem>> next_v;
    for (std::size_t ci = 0; ci < components.size(); ++ci) {
      const GFMat& basis = components[ci];
      GFMat a = gf_restrict(op, basis);
      auto roots = gf_roots(gf_charpoly(a));
      std::size_t covered = 0;
      for (auto& [lambda, mult] : roots) covered += mult;
      if (covered != basis.rows())
        throw std::logic_error("characteristic polynomial failed to split");
      for (auto& [lambda, mult] : roots) {
        GFMat ker = gf_kernel(gf_power(gf_shift(a, lambda), basis.rows()));
        GFMat sub = ker * basis;
        if (sub.rows() != mult) throw std::logic_error("generalized eigenspace dimension");
        next_c.push_back(sub);
        auto v = values[ci];
        v.push_back(lambda);
        next_v.push_back(std::move(v));
      }
    }
    components = std::move(next_c);
    values = std::move(next_v);
  }

  std::vector<GFCharacter> out;
  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    const GFMat& basis = components[ci];
    // Intersect honest eigenspaces inside the component for a witness.
    GFMat coords = GFMat::identity(ext, basis.rows());
    for (std::size_t oi = 0; oi < big.size(); ++oi) {
      GFMat a = gf_restrict(big[oi], basis);
      GFMat sub_a = gf_restrict(a, coords);
      GFMat ker = gf_kernel(gf_shift(sub_a, values[ci][oi]));
      coords = ker * coords;
    }
    if (coords.rows() == 0) throw std::logic_error("commuting family has no joint eigenvector");
    GFCharacter ch;
    ch.field = ext;
    ch.values = values[ci];
    ch.multiplicity = basis.rows();
    ch.witness = (coords * basis).row(0);
    out.push_back(std::move(ch));
  }
  std::sort(out.begin(), out.end(), [](const GFCharacter& a, const GFCharacter& b) {
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      Int ea = a.values[i].encode(), eb = b.values[i].encode();
      if (ea != eb) return ea < eb;
    }
    return false;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Rational side

namespace {

std::vector<Int> vectorize(const IntMat& m) {
  std::vector<Int> v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

IntMat power_int(IntMat a, std::size_t e) {
  IntMat r = IntMat::identity(a.rows());
  while (e) {
    if (e & 1) r = r * a;
    a = a * a;
    e >>= 1;
  }
  return r;
}

// Splits a component along the primary decomposition of one element's
// action; returns false if the element acts primarily (single irreducible).
bool split_component(const IntMat& elem, const IntMat& basis, std::vector<IntMat>& pieces) {
  IntMat a = restrict_to_lattice(elem, basis);
  auto factors = factor_int_poly(charpoly(a));
  if (factors.size() <= 1) return false;
  for (const auto& fac : factors) {
    IntMat pw = power_int(fac.factor.eval(a), fac.multiplicity);
    IntMat coords = integer_kernel(pw);
    pieces.push_back(hermite_normal_form(coords * basis));
  }
  return true;
}

}  // namespace

std::vector<IntMat> matrix_ring_basis(const std::vector<IntMat>& gens, std::size_t n) {
  std::vector<IntMat> basis{IntMat::identity(n)};
  IntMat span(1, n * n);
  span.set_row(0, vectorize(basis[0]));
  span = hermite_normal_form(span);

  std::vector<IntMat> frontier = basis;
  while (!frontier.empty()) {
    std::vector<IntMat> fresh;
    for (const auto& f : frontier) {
      std::vector<IntMat> candidates;
      for (const auto& g : gens) candidates.push_back(f * g);
      for (auto& c : candidates) {
        Lattice current(n * n, span);
        if (current.contains(vectorize(c))) continue;
        IntMat grown(span.rows() + 1, n * n);
        for (std::size_t i = 0; i < span.rows(); ++i) grown.set_row(i, span.row(i));
        grown.set_row(span.rows(), vectorize(c));
        span = hermite_normal_form(grown);
        basis.push_back(c);
        fresh.push_back(c);
      }
    }
    frontier = std::move(fresh);
  }
  // Swap in the HNF rows as the reported basis (canonical, still a basis of
  // the same Z-module; first generator set retained for products above).
  std::vector<IntMat> canonical;
  for (std::size_t i = 0; i < span.rows(); ++i) {
    IntMat m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = span(i, r * n + c);
    canonical.push_back(m);
  }
  return canonical;
}

std::vector<QCharacterOrbit> simultaneous_spectra_q(const std::vector<IntMat>& ops) {
  if (ops.empty()) throw std::invalid_argument("no operators");
  const std::size_t n = ops[0].rows();
  for (const auto& m : ops)
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("operator shape mismatch");
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (!commute(ops[i], ops[j])) throw NonCommuting("operators do not commute");

  // Joint primary decomposition. Components where every op acts primarily
  // may still carry several Galois orbits; a generic small combination of
  // the generators (a primitive element of the reduced local algebra)
  // separates those.
  std::mt19937_64 rng(0x5eed5eedULL);  // fixed: deterministic refinement
  std::vector<IntMat> finished;
  std::vector<std::size_t> finished_degree;  // residue field degree
  std::vector<IntMat> queue{IntMat::identity(n)};
  while (!queue.empty()) {
    IntMat basis = std::move(queue.back());
    queue.pop_back();
    const std::size_t dim = basis.rows();
    bool split = false;
    for (const auto& op : ops) {
      std::vector<IntMat> pieces;
      if (dim > 1 && split_component(op, basis, pieces)) {
        for (auto& p : pieces) queue.push_back(std::move(p));
        split = true;
        break;
      }
    }
    if (split) continue;
    if (dim == 1) {
      finished.push_back(basis);
      finished_degree.push_back(1);
      continue;
    }
    // Residue degree of the local algebra from the rank of its trace form.
    std::vector<IntMat> restricted;
    for (const auto& op : ops) restricted.push_back(restrict_to_lattice(op, basis));
    std::vector<IntMat> local_ring = matrix_ring_basis(restricted, dim);
    RatMat gram(local_ring.size(), local_ring.size());
    for (std::size_t i = 0; i < local_ring.size(); ++i)
      for (std::size_t j = i; j < local_ring.size(); ++j) {
        Rat t = Rat((local_ring[i] * local_ring[j]).trace());
        gram(i, j) = t;
        gram(j, i) = t;
      }
    const std::size_t residue_dim = rank(gram);

    // Draw a combination separating the residue characters: its squarefree
    // minimal polynomial reaches degree residue_dim exactly when primitive.
    long range = 3;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 0 && attempt % 8 == 0) range *= 2;
      IntMat h(dim, dim);
      for (const auto& r : restricted) {
        Int c = Int(rng() % (2 * range + 1)) - range;
        if (c != 0) h = h + r * c;
      }
      IntPoly sf = squarefree_part(charpoly(h));
      if (sf.degree() != residue_dim) continue;
      auto factors = factor_int_poly(sf);
      if (factors.size() == 1) {
        finished.push_back(basis);
        finished_degree.push_back(residue_dim);
      } else {
        for (const auto& fac : factors) {
          // Primary piece of h inside this component.
          auto cp = factor_int_poly(charpoly(h));
          unsigned mult = 1;
          for (auto& c : cp)
            if (c.factor == fac.factor) mult = c.multiplicity;
          IntMat pw = power_int(fac.factor.eval(h), mult);
          IntMat coords = integer_kernel(pw);
          queue.push_back(hermite_normal_form(coords * basis));
        }
      }
      break;
    }
  }

  std::vector<QCharacterOrbit> out;
  for (std::size_t ci = 0; ci < finished.size(); ++ci) {
    const IntMat& basis = finished[ci];
    QCharacterOrbit orbit;
    orbit.component_basis = basis;
    const std::size_t dim = basis.rows();
    bool all_rational = true;
    for (const auto& op : ops) {
      IntMat a = restrict_to_lattice(op, basis);
      auto factors = factor_int_poly(charpoly(a));
      if (factors.size() != 1) throw std::logic_error("component refinement incomplete");
      QValue v;
      v.min_poly = factors[0].factor;
      all_rational = all_rational && v.is_rational();
      orbit.values.push_back(std::move(v));
    }
    orbit.orbit_size = finished_degree[ci];
    if (orbit.orbit_size == 0 || dim % orbit.orbit_size != 0)
      throw std::logic_error("inconsistent residue degree");
    orbit.multiplicity = dim / orbit.orbit_size;

    if (all_rational) {
      // Joint eigenvector: intersect eigenspaces within the component.
      RatMat coords = to_rat(IntMat::identity(dim));
      for (std::size_t oi = 0; oi < ops.size(); ++oi) {
        IntMat a = restrict_to_lattice(ops[oi], basis);
        Rat lambda = orbit.values[oi].rational();
        RatMat shifted = to_rat(a);
        for (std::size_t d = 0; d < dim; ++d) shifted(d, d) -= lambda;
        // Rows x (in current coords) with x * shifted^T = 0.
        RatMat cur = coords * shifted.transpose();
        RatMat ker = rational_kernel(cur.transpose());
        coords = ker * coords;
      }
      if (coords.rows() == 0) throw std::logic_error("missing rational joint eigenvector");
      std::vector<Rat> w = (coords * to_rat(basis)).row(0);
      Int d = 1;
      for (const auto& x : w) d = lcm_int(d, den(x));
      std::vector<Int> wi(w.size());
      Int g = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        wi[i] = num(w[i] * Rat(d));
        g = gcd_int(g, wi[i]);
      }
      for (auto& x : wi) x /= g;
      orbit.witness = std::move(wi);
    }
    out.push_back(std::move(orbit));
  }

  std::sort(out.begin(), out.end(), [](const QCharacterOrbit& a, const QCharacterOrbit& b) {
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      const QValue& x = a.values[i];
      const QValue& y = b.values[i];
      if (x.min_poly == y.min_poly) continue;
      if (x.is_rational() && y.is_rational()) return x.rational() < y.rational();
      return x.min_poly < y.min_poly;
    }
    return false;
  });
  return out;
}

}  // namespace amf
