#include "amf/normal_forms.hpp"

#include <cassert>
#include <stdexcept>

namespace amf {

namespace {

// Locates the nonzero entry of smallest absolute value in the submatrix
// starting at (t, t); returns false if the submatrix is zero.
bool find_pivot(const IntMat& m, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < m.rows(); ++i)
    for (std::size_t j = t; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      Int a = abs_int(m(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

void add_row_multiple(IntMat& m, std::size_t dst, std::size_t src, const Int& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

void add_col_multiple(IntMat& m, std::size_t dst, std::size_t src, const Int& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

}  // namespace

SmithForm smith_normal_form(const IntMat& m) {
  const std::size_t r = m.rows(), c = m.cols();
  IntMat d = m;
  IntMat left = IntMat::identity(r);
  IntMat right = IntMat::identity(c);
  const std::size_t steps = std::min(r, c);

  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t pi = t, pj = t;
    if (!find_pivot(d, t, pi, pj)) break;
    d.swap_rows(t, pi);
    left.swap_rows(t, pi);
    d.swap_cols(t, pj);
    right.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        add_row_multiple(d, i, t, -q);
        add_row_multiple(left, i, t, -q);
        if (d(i, t) != 0) {
          d.swap_rows(t, i);
          left.swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        add_col_multiple(d, j, t, -q);
        add_col_multiple(right, j, t, -q);
        if (d(t, j) != 0) {
          d.swap_cols(t, j);
          right.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // Pivot must divide every remaining entry; if not, fold the offender in.
      bool fixed = true;
      for (std::size_t i = t + 1; i < r && fixed; ++i)
        for (std::size_t j = t + 1; j < c && fixed; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row_multiple(d, t, i, 1);
            add_row_multiple(left, t, i, 1);
            fixed = false;
          }
      if (fixed) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < c; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < r; ++j) left(t, j) = -left(t, j);
    }
  }

  SmithForm out;
  out.invariant_factors.resize(steps);
  for (std::size_t i = 0; i < steps; ++i) out.invariant_factors[i] = d(i, i);
  out.left = left;
  out.right = right;
  return out;
}

IntMat hermite_normal_form(const IntMat& m) {
  IntMat h = m;
  const std::size_t rows = h.rows(), cols = h.cols();
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;

  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    // Euclidean elimination in this column below pivot_row.
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = pivot_row; i < rows; ++i)
        if (h(i, col) != 0 && (best == rows || abs_int(h(i, col)) < abs_int(h(best, col))))
          best = i;
      if (best == rows) break;
      h.swap_rows(pivot_row, best);
      bool done = true;
      for (std::size_t i = pivot_row + 1; i < rows; ++i) {
        if (h(i, col) == 0) continue;
        Int q = h(i, col) / h(pivot_row, col);
        add_row_multiple(h, i, pivot_row, -q);
        if (h(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(pivot_row, col) == 0) continue;
    if (h(pivot_row, col) < 0)
      for (std::size_t j = 0; j < cols; ++j) h(pivot_row, j) = -h(pivot_row, j);
    // Reduce entries above the pivot.
    for (std::size_t i = 0; i < pivot_row; ++i) {
      Int q;
      if (h(i, col) >= 0) q = h(i, col) / h(pivot_row, col);
      else q = -Int((-h(i, col) + h(pivot_row, col) - 1) / h(pivot_row, col));
      if (q != 0) add_row_multiple(h, i, pivot_row, -q);
    }
    pivot_cols.push_back(col);
    ++pivot_row;
  }

  IntMat out(pivot_row, cols);
  for (std::size_t i = 0; i < pivot_row; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = h(i, j);
  return out;
}

IntMat integer_kernel(const IntMat& m) {
  // Row-reduce [m^T | I]: rows whose m^T-part vanishes carry a kernel basis
  // in the identity part. Growth stays moderate, unlike Smith transforms.
  const std::size_t n = m.cols(), rows = m.rows();
  IntMat aug(n, rows + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < rows; ++j) aug(i, j) = m(j, i);
    aug(i, rows + i) = 1;
  }
  IntMat h = hermite_normal_form(aug);
  IntMat ker(0, n);
  std::vector<std::vector<Int>> found;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < rows && zero; ++j) zero = h(i, j) == 0;
    if (!zero) continue;
    std::vector<Int> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = h(i, rows + j);
    found.push_back(std::move(row));
  }
  IntMat out(found.size(), n);
  for (std::size_t i = 0; i < found.size(); ++i) out.set_row(i, found[i]);
  return hermite_normal_form(out);
}

Int determinant(const IntMat& m) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMat a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      a.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

RatMat rref(const RatMat& m, std::vector<std::size_t>* pivots) {
  RatMat a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t pr = 0;
  if (pivots) pivots->clear();
  for (std::size_t col = 0; col < cols && pr < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t i = pr; i < rows; ++i)
      if (a(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    a.swap_rows(pr, sel);
    Rat inv = Rat(1) / a(pr, col);
    for (std::size_t j = col; j < cols; ++j) a(pr, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr || a(i, col) == 0) continue;
      Rat f = a(i, col);
      for (std::size_t j = col; j < cols; ++j) a(i, j) -= f * a(pr, j);
    }
    if (pivots) pivots->push_back(col);
    ++pr;
  }
  return a;
}

std::size_t rank(const RatMat& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return piv.size();
}

std::optional<RatMat> solve_left(const RatMat& a, const RatMat& b) {
  assert(a.cols() == b.cols());
  // Row-reduce a with an identity tail to express rows of b in rows of a.
  const std::size_t r = a.rows(), c = a.cols();
  RatMat aug(r, c + r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) aug(i, j) = a(i, j);
    aug(i, c + i) = 1;
  }
  std::vector<std::size_t> piv;
  RatMat red = rref(aug, &piv);

  RatMat x(b.rows(), r);
  for (std::size_t bi = 0; bi < b.rows(); ++bi) {
    std::vector<Rat> v = b.row(bi);
    std::vector<Rat> coef(r, Rat(0));
    for (std::size_t p = 0; p < piv.size(); ++p) {
      if (piv[p] >= c) continue;
      Rat f = v[piv[p]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < c; ++j) v[j] -= f * red(p, j);
      for (std::size_t j = 0; j < r; ++j) coef[j] += f * red(p, c + j);
    }
    for (std::size_t j = 0; j < c; ++j)
      if (v[j] != 0) return std::nullopt;
    x.set_row(bi, coef);
  }
  return x;
}

RatMat rational_kernel(const RatMat& m) {
  std::vector<std::size_t> piv;
  RatMat red = rref(m, &piv);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  RatMat ker(n - piv.size(), n);
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    ker(k, j) = 1;
    for (std::size_t p = 0; p < piv.size(); ++p) ker(k, piv[p]) = -red(p, j);
    ++k;
  }
  return ker;
}

}  // namespace amf
