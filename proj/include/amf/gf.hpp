#pragma once

#include "amf/bigint.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace amf {

class GFElem;

// The field F_{p^k}, realized as F_p[x]/(f) where f is the monic irreducible
// polynomial of degree k whose coefficient vector (c_{k-1},...,c_1,c_0) is
// smallest in lexicographic order. Contexts are interned: pointer equality
// means field equality.
class GFCtx {
 public:
  static const GFCtx* get(std::uint64_t p, unsigned k);

  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  Int order() const { return pow_int(Int(p_), k_); }
  // Coefficients c_0..c_{k-1} of the defining polynomial (x^k implied).
  const std::vector<std::uint64_t>& defining() const { return defining_; }

  GFElem zero() const;
  GFElem one() const;
  GFElem from_int(const Int& a) const;
  GFElem generator() const;  // the class of x
  GFElem from_coeffs(std::vector<std::uint64_t> c) const;
  // Inverse of encode(); e must be < p^k.
  GFElem decode(const Int& e) const;

  // The canonical embedding of this field into `big` (requires same p and
  // k | big.k): the generator maps to the root of the defining polynomial
  // with the smallest encoding.
  GFElem embed(const GFElem& a, const GFCtx* big) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b % p_) % p_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  std::uint64_t inv_mod_p(std::uint64_t a) const;

 private:
  GFCtx(std::uint64_t p, unsigned k);
  std::uint64_t p_;
  unsigned k_;
  std::vector<std::uint64_t> defining_;
  mutable std::map<const GFCtx*, GFElem> embeddings_;  // generator images
  friend class GFElem;
};

class GFElem {
 public:
  GFElem() : ctx_(nullptr) {}  // acts as literal zero in any field
  GFElem(const GFCtx* ctx, std::vector<std::uint64_t> c) : ctx_(ctx), c_(std::move(c)) {}

  const GFCtx* ctx() const { return ctx_; }
  bool is_zero() const;
  const std::vector<std::uint64_t>& coeffs() const { return c_; }

  GFElem operator+(const GFElem& o) const;
  GFElem operator-(const GFElem& o) const;
  GFElem operator*(const GFElem& o) const;
  GFElem operator/(const GFElem& o) const;
  GFElem operator-() const;
  GFElem inverse() const;
  GFElem pow(Int e) const;
  bool operator==(const GFElem& o) const;
  bool operator!=(const GFElem& o) const { return !(*this == o); }
  bool operator<(const GFElem& o) const { return encode() < o.encode(); }

  // Deterministic integer encoding sum c_i p^i; used for ordering and I/O.
  Int encode() const;
  std::string to_string() const;

 private:
  const GFCtx* resolved(const GFElem& o) const;
  const GFCtx* ctx_;
  std::vector<std::uint64_t> c_;
};

// Dense polynomial over a GF context, coefficient of x^i at index i.
class GFPoly {
 public:
  GFPoly() : ctx_(nullptr) {}
  explicit GFPoly(const GFCtx* ctx) : ctx_(ctx) {}
  GFPoly(const GFCtx* ctx, std::vector<GFElem> c);

  static GFPoly from_int_coeffs(const GFCtx* ctx, const std::vector<Int>& c);
  static GFPoly x_power(const GFCtx* ctx, std::size_t n);

  const GFCtx* ctx() const { return ctx_; }
  bool is_zero() const { return c_.empty(); }
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  const std::vector<GFElem>& coeffs() const { return c_; }
  GFElem coeff(std::size_t i) const;
  GFElem leading() const;

  GFPoly operator+(const GFPoly& o) const;
  GFPoly operator-(const GFPoly& o) const;
  GFPoly operator*(const GFPoly& o) const;
  GFPoly scaled(const GFElem& s) const;
  GFPoly monic() const;
  GFPoly derivative() const;
  GFElem eval(const GFElem& x) const;
  bool operator==(const GFPoly& o) const;

  static void divmod(const GFPoly& a, const GFPoly& b, GFPoly& q, GFPoly& r);
  GFPoly operator%(const GFPoly& o) const;
  GFPoly operator/(const GFPoly& o) const;

  static GFPoly gcd(GFPoly a, GFPoly b);
  // a^e mod m, e arbitrary precision.
  static GFPoly powmod(const GFPoly& a, Int e, const GFPoly& m);

  std::string to_string() const;

 private:
  void trim();
  const GFCtx* ctx_;
  std::vector<GFElem> c_;
};

struct GFFactor {
  GFPoly factor;  // monic irreducible
  unsigned multiplicity;
};

// Full factorization into monic irreducibles (deterministic: the
// equal-degree splitting draws from a generator seeded by the input).
std::vector<GFFactor> gf_factor(const GFPoly& f);

// Roots in the coefficient field, with multiplicities, sorted by encoding.
std::vector<std::pair<GFElem, unsigned>> gf_roots(const GFPoly& f);

bool gf_is_irreducible(const GFPoly& f);

}  // namespace amf
