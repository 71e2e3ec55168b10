#pragma once

#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "qdeg/rational.hpp"

namespace qdeg {

// Dense matrix over exact rationals. Zero-row and zero-column shapes are
// first-class citizens: vertex spaces of dimension 0 appear all the time.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
    if (rows < 0 || cols < 0) throw InternalError("negative matrix shape");
  }
  Mat(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = int(rows.size());
    cols_ = rows_ == 0 ? 0 : int(rows.begin()->size());
    a_.reserve(size_t(rows_) * cols_);
    for (const auto& r : rows) {
      if (int(r.size()) != cols_) throw InternalError("ragged initializer");
      for (const auto& x : r) a_.push_back(x);
    }
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  Mat operator+(const Mat& o) const {
    check_same_shape(o);
    Mat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
  }
  Mat operator-(const Mat& o) const {
    check_same_shape(o);
    Mat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
  }
  Mat operator-() const {
    Mat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
    return r;
  }
  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw InternalError("matrix product shape mismatch");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& x = at(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Rat& y = o.at(k, j);
          if (y != 0) r.at(i, j) += x * y;
        }
      }
    return r;
  }
  Mat scaled(const Rat& c) const {
    Mat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
    return r;
  }

  Mat transposed() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Mat block(int i0, int j0, int nrows, int ncols) const {
    Mat r(nrows, ncols);
    for (int i = 0; i < nrows; ++i)
      for (int j = 0; j < ncols; ++j) r.at(i, j) = at(i0 + i, j0 + j);
    return r;
  }
  void set_block(int i0, int j0, const Mat& b) {
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) at(i0 + i, j0 + j) = b.at(i, j);
  }

  static Mat hcat(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_) throw InternalError("hcat row mismatch");
    Mat r(a.rows_, a.cols_ + b.cols_);
    r.set_block(0, 0, a);
    r.set_block(0, a.cols_, b);
    return r;
  }
  static Mat vcat(const Mat& a, const Mat& b) {
    if (a.cols_ != b.cols_) throw InternalError("vcat col mismatch");
    Mat r(a.rows_ + b.rows_, a.cols_);
    r.set_block(0, 0, a);
    r.set_block(a.rows_, 0, b);
    return r;
  }
  static Mat block_diag(const std::vector<Mat>& blocks) {
    int rr = 0, cc = 0;
    for (const auto& b : blocks) rr += b.rows_, cc += b.cols_;
    Mat r(rr, cc);
    int i0 = 0, j0 = 0;
    for (const auto& b : blocks) {
      r.set_block(i0, j0, b);
      i0 += b.rows_;
      j0 += b.cols_;
    }
    return r;
  }

  Mat col(int j) const { return block(0, j, rows_, 1); }

  // Reduced row echelon form in place; returns pivot column indices.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int p = -1;
      for (int i = row; i < rows_; ++i)
        if (at(i, col) != 0) {
          p = i;
          break;
        }
      if (p < 0) continue;
      if (p != row)
        for (int j = 0; j < cols_; ++j) std::swap(at(p, j), at(row, j));
      Rat inv = 1 / at(row, col);
      for (int j = col; j < cols_; ++j) at(row, j) *= inv;
      for (int i = 0; i < rows_; ++i) {
        if (i == row) continue;
        const Rat c = at(i, col);
        if (c == 0) continue;
        for (int j = col; j < cols_; ++j) at(i, j) -= c * at(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  int rank() const {
    Mat tmp = *this;
    return int(tmp.rref().size());
  }

  // Columns form a basis of { x : A x = 0 }.
  Mat nullspace() const {
    Mat tmp = *this;
    std::vector<int> piv = tmp.rref();
    std::vector<bool> is_piv(cols_, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < cols_; ++j)
      if (!is_piv[j]) free_cols.push_back(j);
    Mat ns(cols_, int(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
      int f = free_cols[k];
      ns.at(f, int(k)) = 1;
      for (size_t r = 0; r < piv.size(); ++r) ns.at(piv[r], int(k)) = -tmp.at(int(r), f);
    }
    return ns;
  }

  // Rows form a basis of { y : y A = 0 }.
  Mat left_nullspace() const { return transposed().nullspace().transposed(); }

  // Solves A X = B; nullopt when inconsistent. The returned solution uses
  // zeros on free variables, so it is deterministic.
  std::optional<Mat> solve(const Mat& b) const {
    if (b.rows() != rows_) throw InternalError("solve shape mismatch");
    Mat aug = hcat(*this, b);
    std::vector<int> piv = aug.rref();
    for (int p : piv)
      if (p >= cols_) return std::nullopt;  // pivot in the rhs block
    Mat x(cols_, b.cols());
    for (size_t r = 0; r < piv.size(); ++r)
      for (int j = 0; j < b.cols(); ++j) x.at(piv[r], j) = aug.at(int(r), cols_ + j);
    return x;
  }

  // Solves X A = B.
  std::optional<Mat> solve_left(const Mat& b) const {
    auto xt = transposed().solve(b.transposed());
    if (!xt) return std::nullopt;
    return xt->transposed();
  }

  // Requires full row rank.
  Mat right_inverse() const {
    auto r = solve(identity(rows_));
    if (!r) throw InternalError("right_inverse of a non-surjective matrix");
    return *r;
  }

  // True when v (a column) lies in the column span.
  bool in_col_span(const Mat& v) const {
    return rank() == hcat(*this, v).rank();
  }

 private:
  void check_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw InternalError("matrix shape mismatch");
  }

  int rows_, cols_;
  std::vector<Rat> a_;
};

}  // namespace qdeg
