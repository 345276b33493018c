#pragma once

#include <cassert>
#include <initializer_list>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "jetlab/rational.hpp"

namespace jetlab {

/// Dense row-major matrix over exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    assert(rows >= 0 && cols >= 0);
  }

  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RatMatrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    RatMatrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
      assert(static_cast<int>(row.size()) == c);
      int j = 0;
      for (const auto& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<size_t>(i) * cols_ + j];
  }
  const Rational& operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& v : a_)
      if (sgn(v) != 0) return false;
    return true;
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RatMatrix operator*(const RatMatrix& b) const {
    if (cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    RatMatrix c(rows_, b.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rational& v = (*this)(i, k);
        if (sgn(v) == 0) continue;
        for (int j = 0; j < b.cols_; ++j) {
          if (sgn(b(k, j)) == 0) continue;
          c(i, j) += v * b(k, j);
        }
      }
    return c;
  }

  RatMatrix operator+(const RatMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionMismatch("matrix sum shape mismatch");
    RatMatrix c = *this;
    for (size_t k = 0; k < a_.size(); ++k) c.a_[k] += b.a_[k];
    return c;
  }

  RatMatrix operator-(const RatMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionMismatch("matrix diff shape mismatch");
    RatMatrix c = *this;
    for (size_t k = 0; k < a_.size(); ++k) c.a_[k] -= b.a_[k];
    return c;
  }

  RatMatrix scaled(const Rational& s) const {
    RatMatrix c = *this;
    for (auto& v : c.a_) v *= s;
    return c;
  }

  RatMatrix col(int j) const {
    RatMatrix c(rows_, 1);
    for (int i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  void set_col(int j, const RatMatrix& c) {
    assert(c.rows() == rows_ && c.cols() == 1);
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = c(i, 0);
  }

  std::vector<Rational> col_vec(int j) const {
    std::vector<Rational> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void swap_rows(int i, int k) {
    for (int j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

inline RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack row mismatch");
  RatMatrix m(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

inline RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack col mismatch");
  RatMatrix m(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

inline RatMatrix column_from(const std::vector<Rational>& v) {
  RatMatrix m(static_cast<int>(v.size()), 1);
  for (int i = 0; i < m.rows(); ++i) m(i, 0) = v[i];
  return m;
}

struct RrefResult {
  RatMatrix mat;
  std::vector<int> pivots;  // strictly increasing pivot columns
};

/// Unique reduced row echelon form (Gauss-Jordan, exact pivoting on the
/// first nonzero entry). Zero entries are skipped in the inner loops, which
/// keeps the pass fast on the sparse systems produced elsewhere.
inline RrefResult rref(RatMatrix m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (sgn(m(i, c)) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) m.swap_rows(p, r);
    if (m(r, c) != 1) {
      const Rational inv = m(r, c);
      for (int k = c; k < m.cols(); ++k)
        if (sgn(m(r, k)) != 0) m(r, k) /= inv;
    }
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      if (sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (int k = c; k < m.cols(); ++k) {
        if (sgn(m(r, k)) == 0) continue;
        m(i, k) -= f * m(r, k);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

/// Sparse row over column indices; no zero values stored.
using SparseRow = std::map<int, Rational>;

/// Rank by incremental forward elimination on sparse rows. Destroys `rows`.
inline int rank_of_rows(std::vector<SparseRow>& rows) {
  std::map<int, SparseRow> pivot_rows;  // leading column -> normalized row
  int rank = 0;
  for (auto& row : rows) {
    for (auto it = row.begin(); it != row.end();) {
      if (sgn(it->second) == 0) {
        it = row.erase(it);
        continue;
      }
      auto hit = pivot_rows.find(it->first);
      if (hit == pivot_rows.end()) break;
      const Rational f = it->second;
      row.erase(it);
      for (const auto& [c, v] : hit->second) {
        if (c == hit->first) continue;
        auto [pos, inserted] = row.try_emplace(c, 0);
        pos->second -= f * v;
        if (sgn(pos->second) == 0) row.erase(pos);
      }
      it = row.begin();
    }
    if (row.empty()) continue;
    const Rational lead = row.begin()->second;
    if (lead != 1)
      for (auto& [c, v] : row) v /= lead;
    const int lead_col = row.begin()->first;
    pivot_rows.emplace(lead_col, std::move(row));
    ++rank;
  }
  return rank;
}

inline int rank(const RatMatrix& m) {
  std::vector<SparseRow> rows(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) rows[i][j] = m(i, j);
  return rank_of_rows(rows);
}

/// Columns form a basis of ker(m); empty (cols x 0) when the kernel is 0.
inline RatMatrix nullspace(const RatMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : r.pivots) is_pivot[c] = true;
  const int k = m.cols() - static_cast<int>(r.pivots.size());
  RatMatrix basis(m.cols(), k);
  int out = 0;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    basis(f, out) = 1;
    for (size_t row = 0; row < r.pivots.size(); ++row)
      basis(r.pivots[row], out) = -r.mat(static_cast<int>(row), f);
    ++out;
  }
  return basis;
}

/// Solves a*x = b exactly; nullopt when inconsistent. Free variables are 0.
inline std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: a.rows != b.rows");
  const RrefResult r = rref(hstack(a, b));
  for (int c : r.pivots)
    if (c >= a.cols()) return std::nullopt;
  RatMatrix x(a.cols(), b.cols());
  for (size_t row = 0; row < r.pivots.size(); ++row)
    for (int j = 0; j < b.cols(); ++j) x(r.pivots[row], j) = r.mat(static_cast<int>(row), a.cols() + j);
  return x;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square matrix");
  auto x = solve(a, RatMatrix::identity(a.rows()));
  if (!x) return std::nullopt;
  if (static_cast<int>(rref(a).pivots.size()) != a.rows()) return std::nullopt;
  return x;
}

/// Canonical basis of the column span: transpose-RREF rows turned back into
/// columns. Two spans are equal iff their canonical bases are equal.
inline RatMatrix column_space(const RatMatrix& m) {
  const RrefResult r = rref(m.transpose());
  const int k = static_cast<int>(r.pivots.size());
  RatMatrix basis(m.rows(), k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m.rows(); ++j) basis(j, i) = r.mat(i, j);
  return basis;
}

inline bool span_contains(const RatMatrix& basis_cols, const RatMatrix& vec_cols) {
  return solve(basis_cols, vec_cols).has_value();
}

/// Basis of (col span of a) ∩ (col span of b).
inline RatMatrix intersect_columns(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return RatMatrix(a.rows(), 0);
  const RatMatrix k = nullspace(hstack(a, b));
  RatMatrix coeff_a(a.cols(), k.cols());
  for (int i = 0; i < a.cols(); ++i)
    for (int j = 0; j < k.cols(); ++j) coeff_a(i, j) = k(i, j);
  return column_space(a * coeff_a);
}

}  // namespace jetlab
