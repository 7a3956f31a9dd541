#include "amf/raising.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace amf {

namespace {

std::uint64_t small_prime(const Int& ell) {
  if (!is_prime(ell)) throw std::domain_error("ell must be prime");
  if (ell >= (Int(1) << 62)) throw std::domain_error("ell out of range");
  return ell.convert_to<std::uint64_t>();
}

// Canonical comparison across finite fields of the same characteristic.
bool gf_equal_across(const GFElem& a, const GFElem& b) {
  if (a.ctx() == b.ctx()) return a == b;
  unsigned k = std::lcm(a.ctx()->k(), b.ctx()->k());
  const GFCtx* big = GFCtx::get(a.ctx()->p(), k);
  return a.ctx()->embed(a, big) == b.ctx()->embed(b, big);
}

// Joint generalized eigenspace of eta_bar for the registered K-level
// operators, as rows over eta_bar's field. Full space when none registered.
GFMat eta_eigenspace(const DoubleCosetModel& model, const ModCharacter& eta_bar) {
  const GFCtx* ctx = eta_bar.field;
  const std::size_t n = model.x_k.size();
  GFMat space = GFMat::identity(ctx, n);
  for (const ModelOperator* op : model.operators_at(Level::K)) {
    auto it = eta_bar.values.find(op->name);
    if (it == eta_bar.values.end()) continue;
    GFMat a = GFMat::reduce(ctx, op->matrix);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i) - it->second;
    GFMat power = GFMat::identity(ctx, n);
    for (std::size_t e = 0; e < n; ++e) power = power * a;
    space = gf_row_intersect(space, gf_kernel(power));
    if (space.rows() == 0) break;
  }
  return space;
}

std::vector<Int> encode_row(const std::vector<GFElem>& row) {
  std::vector<Int> out;
  out.reserve(row.size());
  for (const auto& x : row) out.push_back(x.encode());
  return out;
}

NewEigenCharacter to_new_character(const GFCharacter& ch, const std::vector<std::string>& names,
                                   const GFMat& new_basis_over_field) {
  NewEigenCharacter out;
  out.op_names = names;
  out.ell = ch.field->p();
  out.field_degree = ch.field->k();
  out.value_encodings = encode_row(ch.values);
  // Witness back in ambient X_J coordinates.
  GFMat coords(ch.field, 1, ch.witness.size());
  coords.set_row(0, ch.witness);
  out.witness_encodings = encode_row((coords * new_basis_over_field).row(0));
  out.multiplicity = ch.multiplicity;
  return out;
}

}  // namespace

RatMat e_kkp_matrix(const DoubleCosetModel& model) {
  RatMat ia = pullback_adjoint(model, Level::K);
  RatMat ipa = pullback_adjoint(model, Level::Kp);
  RatMat i = to_rat(pullback(model, Level::K));
  RatMat ip = to_rat(pullback(model, Level::Kp));
  return (ia * ip) * (ipa * i);
}

RatMat push_to_level(const DoubleCosetModel& model, Level side, const IntMat& phi) {
  RatMat adj = pullback_adjoint(model, side);
  RatMat pull = to_rat(pullback(model, side));
  Int index = mass_index(model, side);
  return (adj * to_rat(phi) * pull) * (Rat(1) / Rat(index));
}

ModCharacter reduce_character(const IntCharacter& eta, const Int& ell) {
  ModCharacter out;
  out.field = GFCtx::get(small_prime(ell), 1);
  for (const auto& [name, value] : eta.values) out.values.emplace(name, out.field->from_int(value));
  return out;
}

CongruenceCertificate raising_bound(const DoubleCosetModel& model, const IntCharacter& eta,
                                    const Int& ell) {
  small_prime(ell);  // primality check
  CongruenceCertificate cert;
  cert.ell = ell;
  cert.eta_values = eta.values;

  Int index_k = mass_index(model, Level::K);
  Int index_kp = mass_index(model, Level::Kp);
  if (index_kp % ell == 0)
    throw EllDividesIndex("ell divides [K':J] = " + index_kp.str() +
                          "; the raising criterion needs ell coprime to it");

  // Witness checks: nonzero, primitive, an eigenvector of every named
  // K-level operator with the declared eigenvalue.
  std::vector<Int> w = eta.witness;
  if (w.size() != model.x_k.size()) throw std::invalid_argument("witness length mismatch");
  Int g = 0;
  for (const Int& x : w) g = gcd_int(g, x);
  if (g == 0) throw std::invalid_argument("witness is zero");
  for (Int& x : w) x /= g;
  for (const auto& [name, value] : eta.values) {
    const ModelOperator* op = model.find_operator(name);
    if (!op || op->level != Level::K)
      throw std::invalid_argument("character value for unknown K-operator " + name);
    std::vector<Int> img = op->matrix.apply(w);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (img[i] != value * w[i])
        throw std::invalid_argument("witness is not an eigenvector of " + name);
  }

  // m = eta(e_KK') - [K:J][K':J], evaluated on the witness.
  RatMat ekk = e_kkp_matrix(model);
  std::vector<Rat> wr(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) wr[i] = Rat(w[i]);
  std::vector<Rat> img = ekk.apply(wr);
  std::size_t pivot = 0;
  while (pivot < w.size() && w[pivot] == 0) ++pivot;
  Rat lambda = img[pivot] / wr[pivot];
  for (std::size_t i = 0; i < w.size(); ++i)
    if (img[i] != lambda * wr[i])
      throw std::invalid_argument("witness is not an eigenvector of e_{K,K'}");
  cert.m_value = lambda - Rat(index_k * index_kp);
  if (cert.m_value == 0)
    throw MZero("eta(e_KK') equals [K:J][K':J]; the eigenform extends to both levels");
  cert.v_m = valuation(cert.m_value, ell);

  // Error term E = A_U B_V C^2: A_U annihilates the K+K' pairing lattice,
  // B_V the J-level dual, C the Ihara defect.
  Int a_u = lcm_int(annihilators(model, Level::K).a_min, annihilators(model, Level::Kp).a_min);
  Int b_v = annihilators(model, Level::J).b_min;
  Int c = 1;
  for (const Int& d : ihara_defect(model)) c *= d;
  cert.v_error = valuation(a_u, ell) + valuation(b_v, ell) + 2 * valuation(c, ell);
  cert.v_index_kp = valuation(index_kp, ell);

  // Primitivity of the witness modulo the class-constant functions: the
  // depth t with w in ell^t Z^{X_K} + Q*(class constants).
  IntMat cc = class_constant_basis(model, Level::K);
  IntMat quot = integer_kernel(cc);
  if (quot.rows() > 0) {
    std::vector<Int> image_coords = quot.apply(w);
    bool zero = true;
    for (const Int& x : image_coords) zero = zero && x == 0;
    if (zero) throw std::logic_error("nonvacuous witness is class-constant");
    Lattice image_lattice(quot.rows(), quot.transpose());
    RatMat q(1, image_coords.size());
    for (std::size_t i = 0; i < image_coords.size(); ++i) q(0, i) = Rat(image_coords[i]);
    auto coords = solve_left(to_rat(image_lattice.basis()), q);
    if (!coords || !is_integral(*coords)) throw std::logic_error("quotient coordinates failed");
    long t = -1;
    for (std::size_t i = 0; i < coords->cols(); ++i) {
      if ((*coords)(0, i) == 0) continue;
      long v = valuation(num((*coords)(0, i)), ell);
      if (t < 0 || v < t) t = v;
    }
    cert.v_primitivity = t < 0 ? 0 : t;
  }

  long n = cert.v_m - cert.v_error - cert.v_index_kp - cert.v_primitivity;
  cert.bound_n = n > 0 ? n : 0;
  return cert;
}

bool abelian_check(const DoubleCosetModel& model, const ModCharacter& eta_bar) {
  if (!eta_bar.field) throw std::invalid_argument("character has no field");
  GFMat space = eta_eigenspace(model, eta_bar);
  if (space.rows() == 0) return false;
  GFMat cc = GFMat::reduce(eta_bar.field, class_constant_basis(model, Level::K));
  return gf_row_intersect(space, cc).rows() > 0;
}

DetectResult detect_new_congruence(const DoubleCosetModel& model, const ModCharacter& eta_bar) {
  auto central = model.central_operators();
  if (central.empty()) throw NoCentralOps("no central-at-J operators registered");
  if (abelian_check(model, eta_bar))
    throw AbelianInput("eigensystem is class-abelian mod ell");

  const std::uint64_t p = eta_bar.field->p();
  const GFCtx* base = GFCtx::get(p, 1);
  DetectResult result;

  DegeneracyData deg = build_degeneracy(model);
  const IntMat& new_basis = deg.new_lattice.basis();
  std::vector<std::string> names;
  for (auto* op : central) names.push_back(op->name);
  if (new_basis.rows() == 0) return result;  // nothing to find

  // Spectrum of the central operators on the new subspace mod ell.
  std::vector<GFMat> restricted;
  for (auto* op : central)
    restricted.push_back(GFMat::reduce(base, restrict_to_lattice(op->matrix, new_basis)));
  std::vector<GFCharacter> spectrum = simultaneous_spectra_gf(restricted);

  // Target tuples eta_bar(e_K * phi): joint characters of the pushed
  // operators (they commute, since push(phi) push(psi) = push(phi psi))
  // restricted to the eta_bar eigenspace at level K.
  GFMat space = eta_eigenspace(model, eta_bar);
  if (space.rows() == 0)
    throw std::invalid_argument("character does not occur at level K mod ell");
  std::vector<GFMat> pushed_restricted;
  for (auto* op : central) {
    RatMat pushed = push_to_level(model, Level::K, op->matrix);
    pushed_restricted.push_back(gf_restrict(GFMat::reduce(eta_bar.field, pushed), space));
  }
  std::vector<GFCharacter> targets = simultaneous_spectra_gf(pushed_restricted);
  if (targets.size() > 1)
    result.notes.push_back(
        "push-forwards act with several joint eigensystems on the eta eigenspace");

  for (const auto& ch : spectrum) {
    GFMat basis_field = GFMat::reduce(ch.field, new_basis);
    NewEigenCharacter view = to_new_character(ch, names, basis_field);
    bool matched = false;
    for (const auto& target : targets) {
      bool ok = true;
      for (std::size_t i = 0; i < central.size() && ok; ++i)
        ok = gf_equal_across(ch.values[i], target.values[i]);
      matched = matched || ok;
    }
    if (matched) result.matches.push_back(view);
    result.all_new.push_back(std::move(view));
  }
  return result;
}

void rank_one_refine(const DoubleCosetModel& model, CongruenceCertificate& cert) {
  if (!model.rank_one) throw NotRankOne("model is not declared rank-one");
  cert.rank_one_checked = true;
  if (!cert.witness_character) {
    cert.diagnostics.push_back("rank-one refinement skipped: no witness character");
    return;
  }
  const std::uint64_t p = small_prime(cert.ell);
  const GFCtx* base = GFCtx::get(p, 1);
  auto central = model.central_operators();

  auto occurs_at = [&](Level side) {
    std::vector<GFMat> family;
    for (auto* op : central) {
      RatMat pushed = push_to_level(model, side, op->matrix);
      family.push_back(GFMat::reduce(base, pushed));
    }
    for (const auto& ch : simultaneous_spectra_gf(family)) {
      bool ok = true;
      for (std::size_t i = 0; i < central.size() && ok; ++i) {
        const GFCtx* vf = GFCtx::get(p, cert.witness_character->field_degree);
        GFElem target = vf->decode(cert.witness_character->value_encodings[i]);
        ok = gf_equal_across(ch.values[i], target);
      }
      if (ok) return true;
    }
    return false;
  };

  bool at_k = occurs_at(Level::K);
  bool at_kp = occurs_at(Level::Kp);
  cert.rank_one_flag = !at_k;
  Int index_prod = mass_index(model, Level::K) * mass_index(model, Level::Kp);
  if (at_k && at_kp && index_prod % cert.ell != 0)
    cert.diagnostics.push_back(
        "contradiction: new character occurs at K and K' with ell coprime to [K:J][K':J]");
  else if (at_k && !at_kp)
    cert.diagnostics.push_back("new character occurs at K but not at K' mod ell");
}

std::vector<IntCharacter> k_level_integral_characters(const DoubleCosetModel& model) {
  auto k_ops = model.operators_at(Level::K);
  std::vector<IntMat> family;
  std::vector<std::string> names;
  for (auto* op : k_ops) {
    family.push_back(op->matrix);
    names.push_back(op->name);
  }
  RatMat ekk = e_kkp_matrix(model);
  Int d = common_denominator(ekk);
  family.push_back(to_int(ekk * Rat(d)));

  std::vector<IntCharacter> out;
  for (const auto& orbit : simultaneous_spectra_q(family)) {
    if (!orbit.is_rational()) continue;
    IntCharacter ch;
    for (std::size_t i = 0; i < names.size(); ++i) {
      Rat v = orbit.values[i].rational();
      if (!is_int(v)) throw std::logic_error("integer matrix with non-integral eigenvalue");
      ch.values[names[i]] = num(v);
    }
    ch.witness = orbit.witness;
    out.push_back(std::move(ch));
  }
  return out;
}

}  // namespace amf
