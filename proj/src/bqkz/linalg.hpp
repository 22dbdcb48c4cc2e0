// Dense exact rational matrices; inversion by fraction-free (Bareiss) elimination
// on the denominator-cleared integer matrix.
#pragma once

#include <optional>
#include <stdexcept>

#include "rat.hpp"

namespace bqkz {

struct SingularInverse : std::runtime_error {
  SingularInverse() : std::runtime_error("matrix is singular at the evaluation point") {}
};

class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(int r, int c) : rows_(r), cols_(c), a_((size_t)r * c, Rat(0)) {}

  static RatMat identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& operator()(int i, int j) { return a_[(size_t)i * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[(size_t)i * cols_ + j]; }

  bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const RatMat& o) const { return !(*this == o); }

  bool isZero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  RatMat operator+(const RatMat& o) const {
    RatMat m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
  }

  RatMat operator-(const RatMat& o) const {
    RatMat m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
  }

  RatMat operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("RatMat: shape mismatch");
    RatMat m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& x = (*this)(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols_; ++j)
          if (o(k, j) != 0) m(i, j) += x * o(k, j);
      }
    return m;
  }

  RatMat scaled(const Rat& s) const {
    RatMat m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
    return m;
  }

  std::vector<Rat> apply(const std::vector<Rat>& v) const {
    std::vector<Rat> out(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && v[j] != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  // Exact inverse. Clears denominators per row, then runs Bareiss one-step
  // fraction-free elimination on the augmented integer matrix.
  RatMat inverse() const;

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

inline RatMat RatMat::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("RatMat: inverse of non-square");
  const int n = rows_;
  // Augmented [A | I] over mpz, with per-row denominator scale remembered on the right block.
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    mpz_class L = 1;
    for (int j = 0; j < n; ++j) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), (*this)(i, j).get_den_mpz_t());
    for (int j = 0; j < n; ++j) {
      Rat v = (*this)(i, j) * Rat(L);
      m[i][j] = v.get_num();
    }
    m[i][n + i] = L;
  }
  // Forward fraction-free elimination (Bareiss one-step): divisions below are exact.
  mpz_class prev = 1;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (m[i][k] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw SingularInverse();
    if (piv != k) std::swap(m[piv], m[k]);
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < 2 * n; ++j) {
        mpz_class t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  // Rational back substitution per RHS column.
  RatMat inv(n, n);
  for (int c = 0; c < n; ++c) {
    std::vector<Rat> x(n);
    for (int i = n - 1; i >= 0; --i) {
      Rat s(m[i][n + c]);
      for (int j = i + 1; j < n; ++j) s -= Rat(m[i][j]) * x[j];
      x[i] = s / Rat(m[i][i]);
    }
    for (int i = 0; i < n; ++i) inv(i, c) = x[i];
  }
  return inv;
}

}  // namespace bqkz
