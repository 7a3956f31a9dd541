#include "amf/gfmat.hpp"

#include <cassert>
#include <stdexcept>

namespace amf {

GFMat GFMat::identity(const GFCtx* ctx, std::size_t n) {
  GFMat m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ctx->one();
  return m;
}

GFMat GFMat::reduce(const GFCtx* ctx, const IntMat& m) {
  GFMat r(ctx, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = ctx->from_int(m(i, j));
  return r;
}

GFMat GFMat::reduce(const GFCtx* ctx, const RatMat& m) {
  GFMat r(ctx, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      GFElem d = ctx->from_int(den(m(i, j)));
      if (d.is_zero()) throw std::domain_error("denominator vanishes modulo p");
      r(i, j) = ctx->from_int(num(m(i, j))) / d;
    }
  return r;
}

GFMat GFMat::operator*(const GFMat& o) const {
  assert(cols_ == o.rows_);
  GFMat r(ctx_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const GFElem& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = r(i, j) + x * o(k, j);
    }
  return r;
}

GFMat GFMat::operator+(const GFMat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  GFMat r(ctx_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

GFMat GFMat::operator-(const GFMat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  GFMat r(ctx_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

bool GFMat::operator==(const GFMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

GFMat GFMat::transpose() const {
  GFMat r(ctx_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

std::vector<GFElem> GFMat::apply(const std::vector<GFElem>& v) const {
  assert(v.size() == cols_);
  std::vector<GFElem> r(rows_, ctx_->zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] = r[i] + (*this)(i, j) * v[j];
  return r;
}

bool GFMat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

GFMat GFMat::embed(const GFCtx* big) const {
  GFMat r(big, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = ctx_->embed(a_[i], big);
  return r;
}

std::vector<GFElem> GFMat::row(std::size_t i) const {
  std::vector<GFElem> r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

void GFMat::set_row(std::size_t i, const std::vector<GFElem>& v) {
  assert(v.size() == cols_);
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

GFMat gf_rref(const GFMat& m, std::vector<std::size_t>* pivots) {
  GFMat a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t pr = 0;
  if (pivots) pivots->clear();
  for (std::size_t col = 0; col < cols && pr < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t i = pr; i < rows; ++i)
      if (!a(i, col).is_zero()) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != pr)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(pr, j), a(sel, j));
    GFElem inv = a(pr, col).inverse();
    for (std::size_t j = col; j < cols; ++j) a(pr, j) = a(pr, j) * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr || a(i, col).is_zero()) continue;
      GFElem f = a(i, col);
      for (std::size_t j = col; j < cols; ++j) a(i, j) = a(i, j) - f * a(pr, j);
    }
    if (pivots) pivots->push_back(col);
    ++pr;
  }
  return a;
}

std::size_t gf_rank(const GFMat& m) {
  std::vector<std::size_t> piv;
  gf_rref(m, &piv);
  return piv.size();
}

GFMat gf_kernel(const GFMat& m) {
  std::vector<std::size_t> piv;
  GFMat red = gf_rref(m, &piv);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  GFMat ker(m.ctx(), n - piv.size(), n);
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    ker(k, j) = m.ctx()->one();
    for (std::size_t p = 0; p < piv.size(); ++p) ker(k, piv[p]) = -red(p, j);
    ++k;
  }
  return ker;
}

bool gf_solve_left(const GFMat& a, const GFMat& b, GFMat* x) {
  assert(a.cols() == b.cols());
  const GFCtx* ctx = a.ctx();
  const std::size_t r = a.rows(), c = a.cols();
  GFMat aug(ctx, r, c + r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) aug(i, j) = a(i, j);
    aug(i, c + i) = ctx->one();
  }
  std::vector<std::size_t> piv;
  GFMat red = gf_rref(aug, &piv);
  GFMat sol(ctx, b.rows(), r);
  for (std::size_t bi = 0; bi < b.rows(); ++bi) {
    std::vector<GFElem> v = b.row(bi);
    std::vector<GFElem> coef(r, ctx->zero());
    for (std::size_t p = 0; p < piv.size(); ++p) {
      if (piv[p] >= c) continue;
      GFElem f = v[piv[p]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < c; ++j) v[j] = v[j] - f * red(p, j);
      for (std::size_t j = 0; j < r; ++j) coef[j] = coef[j] + f * red(p, c + j);
    }
    for (std::size_t j = 0; j < c; ++j)
      if (!v[j].is_zero()) return false;
    sol.set_row(bi, coef);
  }
  if (x) *x = sol;
  return true;
}

GFPoly gf_charpoly(const GFMat& a) {
  assert(a.rows() == a.cols());
  const GFCtx* ctx = a.ctx();
  const std::size_t n = a.rows();
  if (n == 0) return GFPoly(ctx, {ctx->one()});
  GFMat h = a;
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t col = 0; col + 2 < n; ++col) {
    std::size_t piv = n;
    for (std::size_t i = col + 1; i < n; ++i)
      if (!h(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    if (piv != col + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(col + 1, j), h(piv, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, col + 1), h(i, piv));
    }
    GFElem inv = h(col + 1, col).inverse();
    for (std::size_t i = col + 2; i < n; ++i) {
      if (h(i, col).is_zero()) continue;
      GFElem f = h(i, col) * inv;
      for (std::size_t j = 0; j < n; ++j) h(i, j) = h(i, j) - f * h(col + 1, j);
      for (std::size_t r = 0; r < n; ++r) h(r, col + 1) = h(r, col + 1) + f * h(r, i);
    }
  }
  // Characteristic polynomials of leading principal blocks.
  std::vector<GFPoly> p(n + 1, GFPoly(ctx));
  p[0] = GFPoly(ctx, {ctx->one()});
  for (std::size_t m = 1; m <= n; ++m) {
    GFPoly xm(ctx, {-h(m - 1, m - 1), ctx->one()});
    p[m] = xm * p[m - 1];
    GFElem sub = ctx->one();
    for (std::size_t r = m - 1; r-- > 0;) {
      sub = sub * h(r + 1, r);
      p[m] = p[m] - p[r].scaled(h(r, m - 1) * sub);
    }
  }
  return p[n];
}

GFMat gf_poly_at(const GFPoly& f, const GFMat& a) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  GFMat r(f.ctx(), n, n);
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    r = r * a;
    for (std::size_t d = 0; d < n; ++d) r(d, d) = r(d, d) + f.coeffs()[i];
  }
  return r;
}

GFMat gf_row_intersect(const GFMat& a, const GFMat& b) {
  // Rows x = u*a = v*b; kernel of [a^T | -b^T].
  assert(a.cols() == b.cols());
  const GFCtx* ctx = a.ctx();
  const std::size_t n = a.cols();
  GFMat m(ctx, n, a.rows() + b.rows());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < a.rows(); ++k) m(i, k) = a(k, i);
    for (std::size_t k = 0; k < b.rows(); ++k) m(i, a.rows() + k) = -b(k, i);
  }
  GFMat ker = gf_kernel(m);
  GFMat gens(ctx, ker.rows(), n);
  for (std::size_t i = 0; i < ker.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      GFElem s = ctx->zero();
      for (std::size_t k = 0; k < a.rows(); ++k) s = s + ker(i, k) * a(k, j);
      gens(i, j) = s;
    }
  std::vector<std::size_t> piv;
  GFMat red = gf_rref(gens, &piv);
  GFMat out(ctx, piv.size(), n);
  for (std::size_t i = 0; i < piv.size(); ++i) out.set_row(i, red.row(i));
  return out;
}

}  // namespace amf
