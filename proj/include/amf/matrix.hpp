#pragma once

#include "amf/bigint.hpp"

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace amf {

// Dense matrix over Int or Rat. Sizes stay small (double-coset sets, Hecke
// rings at desk scale), so no sparsity.
template <typename E>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, E(0)) {}
  Mat(std::initializer_list<std::initializer_list<E>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      assert(row.size() == cols_);
      for (const auto& x : row) a_.push_back(x);
    }
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = E(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  E& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const E& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator*(const Mat& o) const {
    assert(cols_ == o.rows_);
    Mat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const E& x = (*this)(i, k);
        if (x == E(0)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
      }
    return r;
  }

  Mat operator+(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }

  Mat operator-(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }

  Mat operator*(const E& s) const {
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
  }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  std::vector<E> apply(const std::vector<E>& v) const {
    assert(v.size() == cols_);
    std::vector<E> r(rows_, E(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  std::vector<E> row(std::size_t i) const {
    std::vector<E> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  void set_row(std::size_t i, const std::vector<E>& v) {
    assert(v.size() == cols_);
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != E(0)) return false;
    return true;
  }

  E trace() const {
    assert(rows_ == cols_);
    E t(0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }

  const std::vector<E>& data() const { return a_; }

 private:
  std::size_t rows_, cols_;
  std::vector<E> a_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

inline RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

// Least common multiple of all entry denominators.
inline Int common_denominator(const RatMat& m) {
  Int d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d = lcm_int(d, den(m(i, j)));
  return d;
}

inline bool is_integral(const RatMat& m) { return common_denominator(m) == 1; }

inline IntMat to_int(const RatMat& m) {
  assert(is_integral(m));
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = num(m(i, j));
  return r;
}

inline bool commute(const IntMat& a, const IntMat& b) { return a * b == b * a; }

}  // namespace amf
