#include "doctest.h"

#include "amf/satake.hpp"
#include "amf/weyl.hpp"

using namespace amf;

TEST_CASE("gl3 classification") {
  CHECK(classify_gl3(5, {Rat(1), Rat(2), Rat(3)}) == std::vector<std::string>{"I"});
  CHECK(classify_gl3(5, {Rat(10), Rat(2), Rat(7)}) ==
        std::vector<std::string>{"IIa", "IIb"});
  // chi * nu, chi, chi / nu for chi(q) = c: (c/5, c, 5c).
  for (Rat c : {Rat(2), Rat(Int(1)) / Rat(Int(3))}) {
    auto types = classify_gl3(5, {c / 5, c, c * 5});
    CHECK(types == std::vector<std::string>{"IIIa", "IIIb", "IIIc", "IIId"});
  }
  // Mod-ell values work the same way: nu(5) = 3 mod 7 and 6/2 = 3.
  const GFCtx* f7 = GFCtx::get(7, 1);
  auto types = classify_gl3(5, std::vector<GFElem>{f7->from_int(6), f7->from_int(2),
                                                   f7->from_int(1)});
  CHECK(types == std::vector<std::string>{"IIa", "IIb"});
}

TEST_CASE("gsp4 classification") {
  Int q = 5;
  Rat nu = Rat(1) / Rat(q);
  CHECK(classify_gsp4(q, nu * nu, nu) ==
        std::vector<std::string>{"IVa", "IVb", "IVc", "IVd"});
  CHECK(classify_gsp4(q, -nu, Rat(-1)) == std::vector<std::string>{"Va", "Vb", "Vc", "Vd"});
  CHECK(classify_gsp4(q, nu, Rat(1)) == std::vector<std::string>{"VIa", "VIb", "VIc", "VId"});
  CHECK(classify_gsp4(3, Rat(2), Rat(5)) == std::vector<std::string>{"I"});
  // chi1/chi2 = nu with chi^2 generic: family II.
  CHECK(classify_gsp4(q, Rat(2) * nu, Rat(2)) == std::vector<std::string>{"IIa", "IIb"});
  // One coordinate nu, the other generic: family III.
  CHECK(classify_gsp4(q, Rat(3), nu) == std::vector<std::string>{"IIIa", "IIIb"});
}

TEST_CASE("profiles carry the table rows") {
  CHECK(profile(Group::GL3, "I").dims == std::vector<int>{1, 3, 6});
  CHECK(profile(Group::GL3, "IIa").dims == std::vector<int>{0, 1, 3});
  CHECK(profile(Group::GL3, "IIa").generic);
  CHECK(profile(Group::GL3, "IIIa").dims == std::vector<int>{0, 0, 1});
  CHECK(profile(Group::GL3, "IIIa").square_integrable == FlagWhen::IfUnitaryParams);
  CHECK(profile(Group::GSp4, "I").dims == std::vector<int>{1, 2, 4, 4, 8});
  CHECK(profile(Group::GSp4, "IVa").dims == std::vector<int>{0, 0, 0, 0, 1});
  CHECK(profile(Group::GSp4, "IVa").square_integrable == FlagWhen::Always);
  CHECK(profile(Group::GSp4, "IVa").generic);
  CHECK(profile(Group::GSp4, "VIb").dims == std::vector<int>{0, 0, 0, 1, 1});
  CHECK(profile(Group::GSp4, "VIb").tempered == FlagWhen::Always);
  CHECK_FALSE(profile(Group::GSp4, "VIb").generic);
  CHECK(tables_intact());
}

TEST_CASE("unitary dual filter") {
  CHECK(unitary_dual_filter(Group::GL3, {"IIIa", "IIIb", "IIIc", "IIId"}) ==
        std::vector<std::string>{"IIIa"});
  CHECK(unitary_dual_filter(Group::GSp4, {"IVa", "IVb", "IVc", "IVd"}) ==
        std::vector<std::string>{"IVa"});
  CHECK(unitary_dual_filter(Group::GL3, {"I"}) == std::vector<std::string>{"I"});
}

TEST_CASE("weyl double cosets") {
  CHECK(weyl_double_cosets(WeylType::A2, {}, {}) == 6);
  CHECK(weyl_double_cosets(WeylType::A2, {}, {0}) == 3);
  CHECK(weyl_double_cosets(WeylType::C2, {}, {0}) == 4);
  CHECK(weyl_double_cosets(WeylType::C2, {}, {1}) == 4);
  CHECK(weyl_double_cosets(WeylType::A2, {0}, {1}) == 2);  // Bruhat S3: e and w0 cells merge
}

TEST_CASE("parahoric indices and the Bruhat count") {
  CHECK(parahoric_indices(Group::GL3, 2).k_over_j == 7);
  auto gsp4 = parahoric_indices(Group::GSp4, 2);
  CHECK(gsp4.k_over_j == 15);
  REQUIRE(gsp4.kp_over_j.has_value());
  CHECK(*gsp4.kp_over_j == 2);
  // Minimal coset representatives of W_P \ W have lengths 0,1,2 resp
  // 0,1,2,3; the q-count reproduces the closed forms.
  for (Int q : {2, 3, 5}) {
    CHECK(bruhat_index(WeylType::A2, {0}, q) == 1 + q + q * q);
    CHECK(bruhat_index(WeylType::C2, {0}, q) == 1 + q + q * q + q * q * q);
    CHECK(bruhat_index(WeylType::C2, {1}, q) == 1 + q + q * q + q * q * q);
  }
}

TEST_CASE("u3 congruence condition") {
  Int q = 2;
  auto r = check_u3_condition({Rat(2), Rat(1), Rat(Int(1)) / Rat(Int(2))}, q, 5);
  CHECK(r.satisfied);
  // ell | 1+q+q^2 = 7 is refused by the condition.
  r = check_u3_condition({Rat(2), Rat(1), Rat(4)}, 2, 7);
  CHECK_FALSE(r.satisfied);
  // 2^-1 = 3 mod 5.
  r = check_u3_condition({Rat(2), Rat(1), Rat(3)}, 2, 5);
  CHECK(r.satisfied);
  r = check_u3_condition({Rat(2), Rat(2), Rat(3)}, 2, 5);
  CHECK_FALSE(r.satisfied);
}

TEST_CASE("gsp4 congruence condition") {
  auto r = check_gsp4_condition({Rat(1), Rat(3), Rat(2), Rat(6)}, 3, 7);
  CHECK(r.main);  // 9 = 2, 27 = 6 mod 7
  CHECK(r.refinement);  // 81 = 4 mod 7
  r = check_gsp4_condition({Rat(1), Rat(2), Rat(4), Rat(3)}, 2, 5);
  CHECK(r.main);  // 8 = 3 mod 5
  CHECK_FALSE(r.refinement);  // 16 = 1 mod 5
  r = check_gsp4_condition({Rat(1), Rat(1), Rat(1), Rat(1)}, 3, 7);
  CHECK_FALSE(r.main);
}

TEST_CASE("exclusions") {
  CHECK(exclusions(3, 7) == std::set<std::string>{"Va", "VIa"});
  CHECK(exclusions(2, 3).empty());   // 2 = -1 and 4 = 1 mod 3
  CHECK(exclusions(4, 5).empty());   // 4 = -1 and 16 = 1 mod 5
  CHECK(exclusions(2, 5) == std::set<std::string>{"VIa"});  // 4 = -1 keeps Va
  CHECK(exclusions_by_search(3, 7) == std::set<std::string>{"Va", "VIa"});
  CHECK(exclusions_by_search(2, 5) == std::set<std::string>{"VIa"});
}

TEST_CASE("allowed types") {
  CHECK(raising_candidate_types(Group::GL3) == std::vector<std::string>{"I", "IIa"});
  CHECK(raising_candidate_types(Group::GSp4) ==
        std::vector<std::string>{"I", "IIa", "IIIa", "Va", "VIa"});
  CHECK(allowed_types(3, 7) == std::vector<std::string>{"I", "IIa", "IIIa"});
}

TEST_CASE("type-I unitarity on exact values") {
  CHECK(gl3_type_i_unitary(5, {Rat(1), Rat(-1), Rat(1)}) == Unitarity::Yes);
  CHECK(gl3_type_i_unitary(5, {Rat(1), Rat(2), Rat(3)}) == Unitarity::No);
  const GFCtx* f7 = GFCtx::get(7, 1);
  std::vector<GFElem> mod{f7->from_int(1), f7->from_int(2), f7->from_int(4)};
  CHECK(gl3_type_i_unitary(5, mod) == Unitarity::Indeterminate);
  CHECK_THROWS_AS(gl3_type_i_unitary(5, {Rat(5), Rat(1), Rat(3)}), BadParams);
}

TEST_CASE("hecke tuple and half powers") {
  auto tuple = hecke_tuple_gsp4(4, Rat(2), Rat(3), Rat(1), false);
  CHECK(tuple == std::vector<Rat>{Rat(1), Rat(2), Rat(3), Rat(6)});
  auto twisted = hecke_tuple_gsp4(4, Rat(2), Rat(3), Rat(1), true);
  CHECK(twisted[0] == Rat(8));  // 4^{3/2}
  CHECK_THROWS_AS(hecke_tuple_gsp4(3, Rat(2), Rat(3), Rat(1), true), AmbiguousHalfPower);
}
