#pragma once

#include "amf/bigint.hpp"
#include "amf/gf.hpp"
#include "amf/matrix.hpp"

#include <string>
#include <vector>

namespace amf {

// Polynomial with Int coefficients, coefficient of x^i at index i.
// Normalized: no trailing zero coefficients (zero polynomial is empty).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> c) : c_(std::move(c)) { trim(); }
  static IntPoly constant(const Int& a) { return IntPoly(std::vector<Int>{a}); }
  static IntPoly linear(const Int& root) { return IntPoly({-root, 1}); }  // x - root

  bool is_zero() const { return c_.empty(); }
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  const std::vector<Int>& coeffs() const { return c_; }
  Int coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Int(0); }
  Int leading() const { return c_.empty() ? Int(0) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }
  bool operator<(const IntPoly& o) const;  // deterministic ordering

  IntPoly derivative() const;
  Int eval(const Int& x) const;
  Rat eval(const Rat& x) const;
  IntMat eval(const IntMat& a) const;
  RatMat eval(const RatMat& a) const;

  Int content() const;
  IntPoly primitive_part() const;

  // Exact division; throws if the remainder is nonzero.
  IntPoly divide_exact(const IntPoly& d) const;
  // True (and sets q) iff d divides *this over Z.
  bool try_divide(const IntPoly& d, IntPoly* q = nullptr) const;

  GFPoly reduce(const GFCtx* ctx) const { return GFPoly::from_int_coeffs(ctx, c_); }

  std::string to_string() const;

 private:
  void trim();
  std::vector<Int> c_;
};

struct IntFactor {
  IntPoly factor;  // primitive irreducible, positive leading coefficient
  unsigned multiplicity;
};

// Factorization into irreducibles over Q (content dropped; input degree
// bounded at desk scale). Factors sorted deterministically.
std::vector<IntFactor> factor_int_poly(const IntPoly& f);

// Squarefree part f / gcd(f, f'), primitive with positive leading coeff.
IntPoly squarefree_part(const IntPoly& f);

bool is_squarefree(const IntPoly& f);

// Characteristic polynomial (monic) of a square rational matrix; returns
// rational coefficients, integral when the matrix is integral.
std::vector<Rat> charpoly(const RatMat& a);
IntPoly charpoly(const IntMat& a);

}  // namespace amf
