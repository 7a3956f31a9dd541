#include "doctest.h"

#include "amf/spectra.hpp"

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

IntMat direct_sum(const IntMat& a, const IntMat& b) {
  IntMat m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

}  // namespace

TEST_CASE("rational spectra of split diagonal pair") {
  IntMat a{{1, 0}, {0, 2}};
  IntMat b{{3, 0}, {0, 4}};
  auto orbits = simultaneous_spectra_q({a, b});
  REQUIRE(orbits.size() == 2);
  for (auto& o : orbits) {
    CHECK(o.is_rational());
    CHECK(o.multiplicity == 1);
    REQUIRE(o.witness.size() == 2);
  }
  CHECK(orbits[0].values[0].rational() == 1);
  CHECK(orbits[0].values[1].rational() == 3);
  CHECK(orbits[1].values[0].rational() == 2);
  CHECK(orbits[1].values[1].rational() == 4);
  // Witnesses are honest eigenvectors.
  for (auto& o : orbits) {
    auto av = a.apply(o.witness);
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(Rat(av[i]) == o.values[0].rational() * Rat(o.witness[i]));
  }
}

TEST_CASE("spectra over F3 merges 1 and 4") {
  const GFCtx* f3 = GFCtx::get(3, 1);
  GFMat d = GFMat::reduce(f3, IntMat{{1, 0}, {0, 4}});
  auto chars = simultaneous_spectra_gf({d});
  REQUIRE(chars.size() == 1);
  CHECK(chars[0].multiplicity == 2);
  CHECK(chars[0].values[0] == chars[0].field->one());
  // Witness is an honest eigenvector.
  auto img = GFMat::reduce(chars[0].field, IntMat{{1, 0}, {0, 4}}).apply(chars[0].witness);
  for (std::size_t i = 0; i < 2; ++i) CHECK(img[i] == chars[0].values[0] * chars[0].witness[i]);
}

TEST_CASE("companion of x^2+1 over F3 splits over F9") {
  const GFCtx* f3 = GFCtx::get(3, 1);
  IntMat c = companion(IntPoly({1, 0, 1}));
  auto chars = simultaneous_spectra_gf({GFMat::reduce(f3, c)});
  REQUIRE(chars.size() == 2);
  CHECK(chars[0].field->k() == 2);
  // The two values are the conjugate square roots of -1.
  CHECK(chars[0].values[0] * chars[0].values[0] == -chars[0].field->one());
  CHECK(chars[1].values[0] == -chars[0].values[0]);
  for (auto& ch : chars) CHECK(ch.multiplicity == 1);
}

TEST_CASE("companion of x^2+1 over Q reported symbolically") {
  IntMat c = companion(IntPoly({1, 0, 1}));
  auto orbits = simultaneous_spectra_q({c});
  REQUIRE(orbits.size() == 1);
  CHECK(orbits[0].orbit_size == 2);
  CHECK(orbits[0].multiplicity == 1);
  CHECK_FALSE(orbits[0].is_rational());
  CHECK(orbits[0].values[0].min_poly == IntPoly({1, 0, 1}));
}

TEST_CASE("conjugate-pairing orbits are separated") {
  // A acts as sqrt2 on both blocks; B as sqrt2 on one and -sqrt2 on the
  // other. Two distinct Galois orbits share every single-op minimal
  // polynomial; the ring refinement must split them.
  IntMat c2 = companion(IntPoly({-2, 0, 1}));
  IntMat a = direct_sum(c2, c2);
  IntMat b = direct_sum(c2, c2 * Int(-1));
  auto orbits = simultaneous_spectra_q({a, b});
  REQUIRE(orbits.size() == 2);
  for (auto& o : orbits) {
    CHECK(o.orbit_size == 2);
    CHECK(o.multiplicity == 1);
    CHECK(o.component_basis.rows() == 2);
  }

  // Same A twice: a single orbit of multiplicity 2.
  auto merged = simultaneous_spectra_q({a, direct_sum(c2, c2)});
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].orbit_size == 2);
  CHECK(merged[0].multiplicity == 2);
}

TEST_CASE("spectra over a non-prime base field") {
  const GFCtx* f9 = GFCtx::get(3, 2);
  IntMat c = companion(IntPoly({1, 0, 1}));  // x^2 + 1 splits over F_9
  auto chars = simultaneous_spectra_gf({GFMat::reduce(f9, c)});
  REQUIRE(chars.size() == 2);
  CHECK(chars[0].field == f9);  // no extension needed
  CHECK(chars[0].values[0] * chars[0].values[0] == -f9->one());
}

TEST_CASE("jordan block gives a generalized eigenspace") {
  IntMat j{{1, 1}, {0, 1}};
  auto orbits = simultaneous_spectra_q({j});
  REQUIRE(orbits.size() == 1);
  CHECK(orbits[0].multiplicity == 2);
  CHECK(orbits[0].orbit_size == 1);
  CHECK(orbits[0].values[0].rational() == 1);
  REQUIRE(!orbits[0].witness.empty());
  auto img = j.apply(orbits[0].witness);
  CHECK(img == orbits[0].witness);

  const GFCtx* f3 = GFCtx::get(3, 1);
  auto chars = simultaneous_spectra_gf({GFMat::reduce(f3, j)});
  REQUIRE(chars.size() == 1);
  CHECK(chars[0].multiplicity == 2);
}

TEST_CASE("noncommuting inputs rejected") {
  IntMat a{{0, 1}, {0, 0}};
  IntMat b{{0, 0}, {1, 0}};
  CHECK_THROWS_AS(simultaneous_spectra_q({a, b}), NonCommuting);
  const GFCtx* f5 = GFCtx::get(5, 1);
  CHECK_THROWS_AS(simultaneous_spectra_gf({GFMat::reduce(f5, a), GFMat::reduce(f5, b)}),
                  NonCommuting);
}

TEST_CASE("multiplicities sum to dimension") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 8; ++trial) {
    // Commuting family: polynomials in one random matrix.
    std::size_t n = 3 + rng() % 3;
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Int(rng() % 5) - 2;
    IntMat m2 = m * m;
    auto orbits = simultaneous_spectra_q({m, m2});
    std::size_t total = 0;
    for (auto& o : orbits) total += o.orbit_size * o.multiplicity;
    CHECK(total == n);

    const GFCtx* f7 = GFCtx::get(7, 1);
    auto chars = simultaneous_spectra_gf({GFMat::reduce(f7, m), GFMat::reduce(f7, m2)});
    std::size_t gf_total = 0;
    for (auto& ch : chars) gf_total += ch.multiplicity;
    CHECK(gf_total == n);
  }
}

TEST_CASE("GF spectra agree with charpoly factorization oracle") {
  // Single operator: eigenvalues with generalized multiplicity must match
  // the roots of the characteristic polynomial found by exhaustive search
  // over the splitting field (field size <= 10^4 here).
  std::mt19937_64 rng(777);
  for (auto p : {2ULL, 3ULL, 5ULL}) {
    const GFCtx* ctx = GFCtx::get(p, 1);
    for (int trial = 0; trial < 6; ++trial) {
      std::size_t n = 2 + rng() % 3;
      IntMat m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Int(rng() % 7);
      auto chars = simultaneous_spectra_gf({GFMat::reduce(ctx, m)});
      const GFCtx* ext = chars[0].field;
      GFPoly cp = charpoly(m).reduce(ext);
      // Exhaustive root scan with multiplicity by repeated division.
      std::map<Int, unsigned> oracle;
      for (Int e = 0; e < ext->order(); ++e) {
        GFElem x = ext->decode(e);
        if (!cp.eval(x).is_zero()) continue;
        GFPoly rem = cp;
        GFPoly lin(ext, {-x, ext->one()});
        unsigned mult = 0;
        for (;;) {
          GFPoly q, r;
          GFPoly::divmod(rem, lin, q, r);
          if (!r.is_zero()) break;
          rem = q;
          ++mult;
        }
        oracle[e] = mult;
      }
      std::map<Int, unsigned> got;
      for (auto& ch : chars) got[ch.values[0].encode()] += static_cast<unsigned>(ch.multiplicity);
      CHECK(got == oracle);
    }
  }
}
