#include "amf/degeneracy.hpp"

#include "amf/normal_forms.hpp"

#include <sstream>

namespace amf {

namespace {

// K-level function recovered from a fiberwise-constant function on X_J;
// throws BlockMismatch if some fiber is not constant.
RatMat collapse_to_level(const DoubleCosetModel& model, Level side, const RatMat& on_j) {
  const auto& proj = side == Level::K ? model.pi : model.pip;
  const std::size_t n = model.size(side);
  RatMat out(n, on_j.cols());
  std::vector<bool> seen(n, false);
  for (std::size_t y = 0; y < proj.size(); ++y) {
    for (std::size_t c = 0; c < on_j.cols(); ++c) {
      if (!seen[proj[y]]) out(proj[y], c) = on_j(y, c);
      else if (out(proj[y], c) != on_j(y, c))
        throw BlockMismatch("projector image not constant on a fiber");
    }
    seen[proj[y]] = true;
  }
  return out;
}

}  // namespace

DegeneracyData build_degeneracy(const DoubleCosetModel& model) {
  DegeneracyData data;
  const std::size_t nk = model.x_k.size(), nkp = model.x_kp.size(), nj = model.x_j.size();
  IntMat iota = pullback(model, Level::K);
  IntMat iotap = pullback(model, Level::Kp);
  RatMat iota_adj = pullback_adjoint(model, Level::K);
  RatMat iotap_adj = pullback_adjoint(model, Level::Kp);
  data.index_k = mass_index(model, Level::K);
  data.index_kp = mass_index(model, Level::Kp);

  data.delta = IntMat(nj, nk + nkp);
  for (std::size_t y = 0; y < nj; ++y) {
    for (std::size_t x = 0; x < nk; ++x) data.delta(y, x) = iota(y, x);
    for (std::size_t x = 0; x < nkp; ++x) data.delta(y, nk + x) = iotap(y, x);
  }
  data.delta_adjoint = RatMat(nk + nkp, nj);
  for (std::size_t y = 0; y < nj; ++y) {
    for (std::size_t x = 0; x < nk; ++x) data.delta_adjoint(x, y) = iota_adj(x, y);
    for (std::size_t x = 0; x < nkp; ++x) data.delta_adjoint(nk + x, y) = iotap_adj(x, y);
  }
  data.delta_gram = data.delta_adjoint * to_rat(data.delta);

  // Independent route for the block form: diagonal blocks from the mass
  // indices, off-diagonal blocks through the averaging projectors.
  RatMat block(nk + nkp, nk + nkp);
  for (std::size_t x = 0; x < nk; ++x) block(x, x) = Rat(data.index_k);
  for (std::size_t x = 0; x < nkp; ++x) block(nk + x, nk + x) = Rat(data.index_kp);
  RatMat ek = averaging_projector(model, Level::K);
  RatMat ekp = averaging_projector(model, Level::Kp);
  // b: K'-functions to K-functions, [K:J] * (e_K restricted to pullbacks).
  RatMat b = collapse_to_level(model, Level::K, ek * to_rat(iotap)) * Rat(data.index_k);
  RatMat c = collapse_to_level(model, Level::Kp, ekp * to_rat(iota)) * Rat(data.index_kp);
  for (std::size_t i = 0; i < nk; ++i)
    for (std::size_t j = 0; j < nkp; ++j) block(i, nk + j) = b(i, j);
  for (std::size_t i = 0; i < nkp; ++i)
    for (std::size_t j = 0; j < nk; ++j) block(nk + i, j) = c(i, j);
  if (!(block == data.delta_gram))
    throw BlockMismatch("direct delta~ delta disagrees with the block formula");

  // Old lattice: saturation of the column span of delta inside Z^{X_J}.
  data.old_lattice = lattice_saturate(Lattice(nj, data.delta.transpose()));

  // New lattice: integral kernel of delta~ (perp of the image under the
  // weighted pairing), cleared to an integer matrix first.
  RatMat adj = data.delta_adjoint;
  Int denom = common_denominator(adj);
  IntMat adj_int = to_int(adj * Rat(denom));
  data.new_lattice = Lattice(nj, integer_kernel(adj_int));
  return data;
}

std::vector<Int> ihara_defect(const DoubleCosetModel& model) {
  DegeneracyData data = build_degeneracy(model);
  Lattice image(model.x_j.size(), data.delta.transpose());
  return quotient_invariants(image, data.old_lattice).torsion;
}

std::vector<Int> congruence_module(const Lattice& u_lattice, const Lattice& v_lattice,
                                   const IntMat& delta, const Int& e) {
  if (e == 0) throw ZeroE("E must be nonzero");
  const std::size_t amb_u = u_lattice.ambient_rank();
  if (delta.cols() != amb_u || delta.rows() != v_lattice.ambient_rank())
    throw std::invalid_argument("delta shape does not match the lattices");

  // delta must map QU into QV.
  RatMat image_rows = to_rat(u_lattice.basis() * delta.transpose());
  if (v_lattice.rank() == 0) {
    if (!image_rows.is_zero()) throw std::invalid_argument("delta image leaves QV");
  } else if (!solve_left(to_rat(v_lattice.basis()), image_rows)) {
    throw std::invalid_argument("delta image leaves QV");
  }

  // U' = U meet ker(delta)^perp: kernel vectors inside QU, then the
  // orthogonal complement within U.
  IntMat du = u_lattice.basis() * delta.transpose();  // rows: delta of basis vectors
  IntMat ker_coords = integer_kernel(du.transpose());
  // Rows of ker_coords * basis span ker(delta) meet QU.
  IntMat ker_amb = ker_coords * u_lattice.basis();
  IntMat uprime_coords = ker_amb.rows() == 0
                             ? IntMat::identity(u_lattice.rank())
                             : integer_kernel(ker_amb * u_lattice.basis().transpose());
  Lattice uprime(amb_u, uprime_coords.rows() == 0 ? IntMat(0, amb_u)
                                                  : uprime_coords * u_lattice.basis());
  if (uprime.rank() == 0) return {};

  // delta~ delta on U for the standard pairing: transpose composed with the
  // orthogonal projection back onto QU (the adjoint lands in U).
  IntMat dd = delta.transpose() * delta;
  RatMat raw = to_rat(u_lattice.basis() * dd.transpose());  // rows: dd on U basis
  const RatMat ub = to_rat(u_lattice.basis());
  RatMat gram_u = ub * ub.transpose();
  auto coeffs = solve_left(gram_u, raw * ub.transpose());
  if (!coeffs) throw std::logic_error("projection onto QU failed");
  RatMat projected = *coeffs * ub;

  // T = U' meet (1/E) * span(image)  =  (1/(E*D)) * (E*D*U' meet D*image).
  Int d_img = common_denominator(projected);
  IntMat image_int = to_int(projected * Rat(d_img));
  Int scale = e * d_img;
  IntMat scaled_uprime = uprime.basis() * scale;
  Lattice meet = lattice_intersect(Lattice(amb_u, scaled_uprime), Lattice(amb_u, image_int));
  IntMat t_basis(meet.rank(), amb_u);
  for (std::size_t i = 0; i < meet.rank(); ++i)
    for (std::size_t j = 0; j < amb_u; ++j) {
      Int v = meet.basis()(i, j);
      if (v % scale != 0) throw std::logic_error("scaled intersection not divisible");
      t_basis(i, j) = v / scale;
    }
  return quotient_invariants(Lattice(amb_u, t_basis), uprime).torsion;
}

}  // namespace amf
