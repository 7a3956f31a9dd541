#pragma once

#include "amf/gf.hpp"
#include "amf/matrix.hpp"

#include <vector>

namespace amf {

// Dense matrix over a fixed GF context.
class GFMat {
 public:
  GFMat() : ctx_(nullptr), rows_(0), cols_(0) {}
  GFMat(const GFCtx* ctx, std::size_t r, std::size_t c)
      : ctx_(ctx), rows_(r), cols_(c), a_(r * c, ctx->zero()) {}

  static GFMat identity(const GFCtx* ctx, std::size_t n);
  // Entrywise reduction of an integer matrix.
  static GFMat reduce(const GFCtx* ctx, const IntMat& m);
  // Reduction of a rational matrix; throws if a denominator vanishes mod p.
  static GFMat reduce(const GFCtx* ctx, const RatMat& m);

  const GFCtx* ctx() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  GFElem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const GFElem& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  GFMat operator*(const GFMat& o) const;
  GFMat operator+(const GFMat& o) const;
  GFMat operator-(const GFMat& o) const;
  bool operator==(const GFMat& o) const;
  GFMat transpose() const;
  std::vector<GFElem> apply(const std::vector<GFElem>& v) const;
  bool is_zero() const;

  // Same entries seen in an extension field.
  GFMat embed(const GFCtx* big) const;

  std::vector<GFElem> row(std::size_t i) const;
  void set_row(std::size_t i, const std::vector<GFElem>& v);

 private:
  const GFCtx* ctx_;
  std::size_t rows_, cols_;
  std::vector<GFElem> a_;
};

std::size_t gf_rank(const GFMat& m);
GFMat gf_rref(const GFMat& m, std::vector<std::size_t>* pivots = nullptr);
// Basis of the right kernel, as rows, in reduced echelon shape.
GFMat gf_kernel(const GFMat& m);
// Rows of b expressed in rows of a; nullopt if not in the row space.
bool gf_solve_left(const GFMat& a, const GFMat& b, GFMat* x);
// Monic characteristic polynomial via Hessenberg reduction.
GFPoly gf_charpoly(const GFMat& a);
// Evaluate a polynomial at a matrix.
GFMat gf_poly_at(const GFPoly& f, const GFMat& a);
// Intersection of row spaces.
GFMat gf_row_intersect(const GFMat& a, const GFMat& b);

}  // namespace amf
