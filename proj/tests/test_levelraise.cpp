#include "doctest.h"

#include "amf/corpus.hpp"
#include "amf/degeneracy.hpp"
#include "amf/raising.hpp"

#include <random>

using namespace amf;

TEST_CASE("degeneracy data on the tiny model") {
  DegeneracyData d = build_degeneracy(tiny_model());
  CHECK(d.index_k == 2);
  CHECK(d.index_kp == 2);
  REQUIRE(d.delta_gram.rows() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(d.delta_gram(i, j) == 2);
  // Old space: constants; new space: the sign vector.
  CHECK(d.old_lattice.rank() == 1);
  CHECK(d.new_lattice.rank() == 1);
  CHECK(d.new_lattice.contains({1, -1}));
}

TEST_CASE("degeneracy diagonal blocks equal the indices") {
  std::mt19937_64 rng(161803);
  for (int trial = 0; trial < 15; ++trial) {
    DoubleCosetModel m = random_valid_model(rng);
    DegeneracyData d = build_degeneracy(m);
    const std::size_t nk = m.x_k.size();
    for (std::size_t i = 0; i < nk; ++i) {
      for (std::size_t j = 0; j < nk; ++j)
        CHECK(d.delta_gram(i, j) == (i == j ? Rat(d.index_k) : Rat(0)));
    }
    for (std::size_t i = 0; i < m.x_kp.size(); ++i)
      CHECK(d.delta_gram(nk + i, nk + i) == Rat(d.index_kp));
    // Old and new lattices are orthogonal for the weighted pairing and
    // fill the ambient rank.
    CHECK(d.old_lattice.rank() + d.new_lattice.rank() == m.x_j.size());
    RatMat gram = gram_matrix(m, Level::J);
    RatMat cross = to_rat(d.old_lattice.basis()) * gram * to_rat(d.new_lattice.basis()).transpose();
    CHECK(cross.is_zero());
  }
}

TEST_CASE("ihara defect is trivial") {
  CHECK(ihara_defect(tiny_model()).empty());
  CHECK(ihara_defect(double_cover_model(3, 2)).empty());

  // Identity-shaped model: all three sets in bijection.
  DoubleCosetModel id;
  id.x_k = {"a", "b"};
  id.x_kp = {"c", "d"};
  id.x_j = {"1", "2"};
  id.pi = {0, 1};
  id.pip = {0, 1};
  id.w_k = {1, 1};
  id.w_kp = {1, 1};
  id.w_j = {1, 1};
  CHECK(validate(id).accepted);
  CHECK(ihara_defect(id).empty());
}

TEST_CASE("congruence module examples") {
  // U = V = Z, delta = multiplication by d, E = 1: factor d^2.
  for (Int d = 1; d <= 6; ++d) {
    auto factors = congruence_module(Lattice::full(1), Lattice::full(1), IntMat{{d}}, 1);
    if (d == 1) CHECK(factors.empty());
    else {
      REQUIRE(factors.size() == 1);
      CHECK(factors[0] == d * d);
    }
  }
  // Identity delta: trivial module.
  CHECK(congruence_module(Lattice::full(3), Lattice::full(3), IntMat::identity(3), 1).empty());
  CHECK_THROWS_AS(congruence_module(Lattice::full(1), Lattice::full(1), IntMat{{2}}, 0), ZeroE);

  // On the tiny model: U = functions on X_K + X_K', delta the pullback sum.
  DoubleCosetModel m = tiny_model();
  DegeneracyData deg = build_degeneracy(m);
  Int e = lcm_int(annihilators(m, Level::K).a_min, annihilators(m, Level::Kp).a_min) *
          annihilators(m, Level::J).b_min;
  auto factors = congruence_module(Lattice::full(2), Lattice::full(2), deg.delta, e);
  // delta~ delta(e_i) = (2,2), so the module is U'/2U'; its factor divides
  // the elementary divisor 4 of delta~ delta on ker(delta)^perp.
  REQUIRE(factors.size() == 1);
  CHECK(factors[0] == 2);
  IntMat dd = deg.delta.transpose() * deg.delta;
  std::vector<Int> image = dd.apply({1, 1});
  CHECK(image == std::vector<Int>{4, 4});
  CHECK(Int(4) % factors[0] == 0);
}

TEST_CASE("raising bound on the bundled cover") {
  DoubleCosetModel m = double_cover_model(3, 3);  // theta = 2
  auto chars = k_level_integral_characters(m);
  REQUIRE(!chars.empty());

  // The deck-odd eigensystem with t-eigenvalue theta = 2.
  std::optional<IntCharacter> eta;
  for (const auto& ch : chars)
    if (ch.values.at("deck") == -1 && ch.values.at("t") == 2) eta = ch;
  REQUIRE(eta.has_value());

  CongruenceCertificate cert = raising_bound(m, *eta, 3);
  CHECK(cert.m_value == Rat(-12));  // 4 - 16
  CHECK(cert.v_m == 1);
  CHECK(cert.v_error == 0);
  CHECK(cert.v_index_kp == 0);
  CHECK(cert.v_primitivity == 0);
  CHECK(cert.bound_n == 1);

  // The class-constant eigensystem is vacuous: e_KK' acts by [K:J][K':J].
  std::optional<IntCharacter> constant;
  for (const auto& ch : chars)
    if (ch.values.at("deck") == 1 && ch.values.at("t") == 4) constant = ch;
  REQUIRE(constant.has_value());
  CHECK_THROWS_AS(raising_bound(m, *constant, 3), MZero);

  // ell dividing [K':J] = 4 is refused.
  CHECK_THROWS_AS(raising_bound(m, *eta, 2), EllDividesIndex);
}

TEST_CASE("a deeper congruence yields bound two") {
  // theta = 4 against q+1 = 14 at ell = 3: v_3(16 - 196) = v_3(-180) = 2.
  DoubleCosetModel m = double_cover_model(13, 9);
  auto chars = k_level_integral_characters(m);
  std::optional<IntCharacter> eta;
  for (const auto& ch : chars)
    if (ch.values.at("deck") == -1 && ch.values.at("t") == 4) eta = ch;
  REQUIRE(eta.has_value());
  CongruenceCertificate cert = raising_bound(m, *eta, 3);
  CHECK(cert.m_value == Rat(-180));
  CHECK(cert.v_m == 2);
  CHECK(cert.bound_n == 2);
}

TEST_CASE("weight annihilators degrade the bound") {
  // Scaling every stabilizer by 3 keeps the model valid and the masses
  // unchanged, but A_U picks up a factor of 3 and eats the ell = 3 bound.
  DoubleCosetModel m = double_cover_model(4, 3);
  for (auto& w : m.w_k) w *= 3;
  for (auto& w : m.w_kp) w *= 3;
  for (auto& w : m.w_j) w *= 3;
  REQUIRE(validate(m).accepted);
  CHECK(annihilators(m, Level::K).a_min == 3);

  auto chars = k_level_integral_characters(m);
  std::optional<IntCharacter> eta;
  for (const auto& ch : chars)
    if (ch.values.at("deck") == -1 && ch.values.at("t") == 1) eta = ch;
  REQUIRE(eta.has_value());
  CongruenceCertificate cert = raising_bound(m, *eta, 3);
  CHECK(cert.v_m == 1);
  CHECK(cert.v_error == 1);
  CHECK(cert.bound_n == 0);
}

TEST_CASE("abelian check") {
  DoubleCosetModel m = double_cover_model(3, 3);
  auto chars = k_level_integral_characters(m);
  std::optional<IntCharacter> constant, theta;
  for (const auto& ch : chars) {
    if (ch.values.at("deck") == 1 && ch.values.at("t") == 4) constant = ch;
    if (ch.values.at("deck") == -1 && ch.values.at("t") == 2) theta = ch;
  }
  REQUIRE(constant.has_value());
  REQUIRE(theta.has_value());
  CHECK(abelian_check(m, reduce_character(*constant, 3)));
  CHECK_FALSE(abelian_check(m, reduce_character(*theta, 3)));
  // Mod 2 the theta system collapses onto the constant one.
  CHECK(abelian_check(m, reduce_character(*theta, 2)));
}

TEST_CASE("detect finds the congruent new character") {
  DoubleCosetModel m = double_cover_model(4, 3);  // theta = 1, ell = 3
  auto chars = k_level_integral_characters(m);
  std::optional<IntCharacter> eta;
  for (const auto& ch : chars)
    if (ch.values.at("deck") == -1 && ch.values.at("t") == 1) eta = ch;
  REQUIRE(eta.has_value());
  ModCharacter eta_bar = reduce_character(*eta, 3);
  DetectResult det = detect_new_congruence(m, eta_bar);
  REQUIRE(!det.matches.empty());
  // deck_j must act by eta(deck) = -1 mod 3 on the matched character.
  const GFCtx* vf = GFCtx::get(3, det.matches[0].field_degree);
  CHECK(vf->decode(det.matches[0].value_encodings[0]) == vf->from_int(-1));

  // Constant input is rejected as abelian.
  std::optional<IntCharacter> constant;
  for (const auto& ch : chars)
    if (ch.values.at("deck") == 1 && ch.values.at("t") == 5) constant = ch;
  REQUIRE(constant.has_value());
  CHECK_THROWS_AS(detect_new_congruence(m, reduce_character(*constant, 3)), AbelianInput);
}

TEST_CASE("detect with an empty new space returns nothing") {
  // pi bijective forces im(delta) to be everything, so the new space is 0;
  // pip collapses both points, keeping the class-constants to the constants
  // so a split eigensystem is still non-abelian.
  DoubleCosetModel m;
  m.x_k = {"a", "b"};
  m.x_kp = {"c"};
  m.x_j = {"1", "2"};
  m.pi = {0, 1};
  m.pip = {0, 0};
  m.w_k = {1, 1};
  m.w_kp = {1};
  m.w_j = {1, 1};
  ModelOperator s;
  s.name = "s";
  s.level = Level::K;
  s.matrix = IntMat{{2, 0}, {0, 3}};
  s.adjoint = "s";
  ModelOperator z;
  z.name = "z";
  z.level = Level::J;
  z.matrix = IntMat::identity(2);
  z.adjoint = "z";
  z.central_at_j = true;
  m.operators = {s, z};
  REQUIRE(validate(m).accepted);

  ModCharacter eta_bar;
  eta_bar.field = GFCtx::get(7, 1);
  eta_bar.values.emplace("s", eta_bar.field->from_int(2));
  CHECK_FALSE(abelian_check(m, eta_bar));
  DetectResult det = detect_new_congruence(m, eta_bar);
  CHECK(det.matches.empty());
  CHECK(det.all_new.empty());
}

TEST_CASE("no central operators is an error") {
  DoubleCosetModel m = tiny_model();
  ModCharacter eta_bar;
  eta_bar.field = GFCtx::get(3, 1);
  CHECK_THROWS_AS(detect_new_congruence(m, eta_bar), NoCentralOps);
}

TEST_CASE("rank one refinement") {
  // Hand model: swap on a two-point fiber; the new-space eigenvalue -1
  // never occurs at level K, so the refinement certifies ramification.
  DoubleCosetModel m = tiny_model();
  m.rank_one = true;
  ModelOperator swp;
  swp.name = "w";
  swp.level = Level::J;
  swp.matrix = IntMat{{0, 1}, {1, 0}};
  swp.adjoint = "w";
  swp.central_at_j = true;
  m.operators = {swp};
  REQUIRE(validate(m).accepted);

  CongruenceCertificate cert;
  cert.ell = 5;
  NewEigenCharacter ch;
  ch.op_names = {"w"};
  ch.ell = 5;
  ch.field_degree = 1;
  ch.value_encodings = {GFCtx::get(5, 1)->from_int(-1).encode()};
  ch.witness_encodings = {1, GFCtx::get(5, 1)->from_int(-1).encode()};
  ch.multiplicity = 1;
  cert.witness_character = ch;
  rank_one_refine(m, cert);
  CHECK(cert.rank_one_checked);
  CHECK(cert.rank_one_flag);

  // On the cover model the deck value occurs at both maximal levels and the
  // indices are coprime to ell: the contradiction diagnostic fires.
  DoubleCosetModel cover = double_cover_model(3, 3);
  auto chars = k_level_integral_characters(cover);
  std::optional<IntCharacter> eta;
  for (const auto& c : chars)
    if (c.values.at("deck") == -1 && c.values.at("t") == 2) eta = c;
  REQUIRE(eta.has_value());
  CongruenceCertificate cover_cert = raising_bound(cover, *eta, 3);
  DetectResult det = detect_new_congruence(cover, reduce_character(*eta, 3));
  REQUIRE(!det.matches.empty());
  cover_cert.witness_character = det.matches.front();
  rank_one_refine(cover, cover_cert);
  CHECK(cover_cert.rank_one_checked);
  CHECK_FALSE(cover_cert.rank_one_flag);
  bool contradiction = false;
  for (const auto& d : cover_cert.diagnostics)
    contradiction = contradiction || d.rfind("contradiction", 0) == 0;
  CHECK(contradiction);

  // Models without the flag are refused.
  DoubleCosetModel aux = double_cover_aux_model(3, 3);
  CongruenceCertificate dummy;
  dummy.ell = 3;
  CHECK_THROWS_AS(rank_one_refine(aux, dummy), NotRankOne);
}

TEST_CASE("valuation arithmetic of the certificate") {
  // eta(e_KK') = 13 against [K:J][K':J] = 4 at ell = 3: m = 9, v = 2.
  CHECK(valuation(Int(13 - 4), Int(3)) == 2);
  CHECK(valuation(Int(2), Int(3)) == 0);
  CHECK(valuation(Rat(9), Int(3)) == 2);
  CHECK(valuation(Rat(9) / Rat(3), Int(3)) == 1);
}
