#include "doctest.h"

#include "amf/hecke_ring.hpp"

#include <random>

using namespace amf;

namespace {

IntMat companion(const IntPoly& f) {
  std::size_t n = f.degree();
  IntMat c(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) c(i + 1, i) = 1;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -f.coeff(i);
  return c;
}

}  // namespace

TEST_CASE("ring generation") {
  HeckeRing ident = hecke_ring({"one"}, {IntMat::identity(3)});
  CHECK(ident.z_basis.size() == 1);

  HeckeRing quad = hecke_ring({"t"}, {IntMat{{1, 0}, {0, 2}}});
  CHECK(quad.z_basis.size() == 2);

  HeckeRing nil = hecke_ring({"n"}, {IntMat{{0, 1}, {0, 0}}});
  CHECK(nil.z_basis.size() == 2);  // 1 and the nilpotent

  CHECK_THROWS_AS(hecke_ring({"a", "b"}, {IntMat{{0, 1}, {0, 0}}, IntMat{{0, 0}, {1, 0}}}),
                  NonCommuting);
}

TEST_CASE("ring basis is closed under products") {
  std::mt19937_64 rng(1234);
  IntMat seed(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) seed(i, j) = Int(rng() % 5) - 2;
  HeckeRing r = hecke_ring({"a", "b"}, {seed, seed * seed + seed});
  auto in_span = [&r](const IntMat& m) {
    IntMat rows(r.z_basis.size(), 16);
    for (std::size_t i = 0; i < r.z_basis.size(); ++i)
      for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = 0; q < 4; ++q) rows(i, 4 * p + q) = r.z_basis[i](p, q);
    std::vector<Int> v;
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = 0; q < 4; ++q) v.push_back(m(p, q));
    return Lattice(16, rows).contains(v);
  };
  for (const auto& x : r.z_basis)
    for (const auto& y : r.z_basis) CHECK(in_span(x * y));
}

TEST_CASE("saturation index") {
  // Z + Z*diag(0,2) has coordinate image {(a, a+2b)}: index 2 in its
  // saturation.
  HeckeRing r = hecke_ring({"t"}, {IntMat{{0, 0}, {0, 2}}});
  auto sat = saturation_index(r);
  CHECK(sat.index == 2);
  REQUIRE(sat.obstruction_primes.size() == 1);
  CHECK(sat.obstruction_primes[0] == 2);

  CHECK(saturation_index(hecke_ring({"t"}, {IntMat{{1, 0}, {0, 2}}})).index == 1);
  CHECK(saturation_index(hecke_ring({"one"}, {IntMat::identity(2)})).index == 1);
}

TEST_CASE("semisimplicity certificates") {
  // Split ring with orthogonal idempotents: certified everywhere.
  HeckeRing split = hecke_ring({"e"}, {IntMat{{1, 0}, {0, 0}}});
  for (Int p : {2, 3, 5, 7, 11}) CHECK(semisimple_mod_p(split, p));

  // Z[x]/(x^2-2): trace form disc 8, certified away from 2.
  HeckeRing sqrt2 = hecke_ring({"r"}, {companion(IntPoly({-2, 0, 1}))});
  CHECK(sqrt2.trace_form_disc == 8);
  CHECK_FALSE(semisimple_mod_p(sqrt2, 2));
  CHECK(semisimple_mod_p(sqrt2, 3));
  CHECK(semisimple_mod_p(sqrt2, 5));

  // A prime dividing the saturation index is never certified.
  HeckeRing idx = hecke_ring({"t"}, {IntMat{{0, 0}, {0, 2}}});
  CHECK_FALSE(semisimple_mod_p(idx, 2));

  HeckeRing nil = hecke_ring({"n"}, {IntMat{{0, 1}, {0, 0}}});
  CHECK_THROWS_AS(semisimple_mod_p(nil, 3), NotReduced);
}

TEST_CASE("ring characters") {
  HeckeRing r = hecke_ring({"t"}, {IntMat{{1, 0}, {0, 2}}});
  auto qchars = characters_q(r);
  REQUIRE(qchars.size() == 2);
  CHECK(qchars[0].values.at("t").rational() == 1);
  CHECK(qchars[1].values.at("t").rational() == 2);

  HeckeRing merge = hecke_ring({"t"}, {IntMat{{1, 0}, {0, 4}}});
  auto f3chars = characters_gf(merge, GFCtx::get(3, 1));
  REQUIRE(f3chars.size() == 1);
  CHECK(f3chars[0].multiplicity == 2);

  HeckeRing rot = hecke_ring({"t"}, {companion(IntPoly({1, 0, 1}))});
  auto pair = characters_gf(rot, GFCtx::get(3, 1));
  REQUIRE(pair.size() == 2);
  CHECK(pair[0].field->k() == 2);
}

TEST_CASE("character lifting") {
  HeckeRing merge = hecke_ring({"t"}, {IntMat{{1, 0}, {0, 4}}});
  auto chars = characters_gf(merge, GFCtx::get(3, 1));
  REQUIRE(chars.size() == 1);
  auto lifts = lift_character(merge, chars[0]);
  REQUIRE(lifts.size() == 2);  // x-1 and x-4 both reduce to the value 1
  CHECK(lifts[0].min_polys.at("t") == IntPoly({-4, 1}));
  CHECK(lifts[1].min_polys.at("t") == IntPoly({-1, 1}));

  HeckeRing rot = hecke_ring({"t"}, {companion(IntPoly({1, 0, 1}))});
  auto f5chars = characters_gf(rot, GFCtx::get(5, 1));
  REQUIRE(f5chars.size() == 2);  // 2 and 3 are the square roots of -1 mod 5
  for (const auto& ch : f5chars) {
    auto lifts5 = lift_character(rot, ch);
    REQUIRE(lifts5.size() == 1);
    CHECK(lifts5[0].min_polys.at("t") == IntPoly({1, 0, 1}));
  }

  // A value outside the spectrum is rejected.
  RingCharacterGF missing;
  missing.field = GFCtx::get(3, 1);
  missing.values.emplace("t", missing.field->from_int(0));
  CHECK_THROWS_AS(lift_character(merge, missing), NotOccurring);
}

TEST_CASE("character counts and reductions on random families") {
  std::mt19937_64 rng(90210);
  for (int trial = 0; trial < 6; ++trial) {
    std::size_t n = 3 + rng() % 3;
    IntMat seed(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) seed(i, j) = Int(rng() % 5) - 2;
    HeckeRing r = hecke_ring({"a", "b"}, {seed, seed * seed});

    std::size_t total = 0;
    for (const auto& ch : characters_q(r)) total += ch.orbit_size * ch.multiplicity;
    CHECK(total == n);

    // Every rational character's reduction occurs among the mod-ell ones.
    const GFCtx* f5 = GFCtx::get(5, 1);
    auto mod = characters_gf(r, f5);
    for (const auto& ch : characters_q(r)) {
      if (ch.orbit_size != 1) continue;
      bool found = false;
      for (const auto& mc : mod) {
        bool same = true;
        for (const auto& [name, value] : ch.values) {
          GFElem want = f5->embed(f5->from_int(num(value.rational())), mc.field);
          same = same && mc.values.at(name) == want;
        }
        found = found || same;
      }
      CHECK(found);
    }
  }
}
