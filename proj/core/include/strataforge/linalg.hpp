#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "strataforge/cyclo8.hpp"

namespace strataforge {

using Vec = std::vector<Cyclo8>;

// Dense row-major matrix over Q(zeta8). Sizes here never exceed a few dozen.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(std::size_t n);
  static Mat from_columns(const std::vector<Vec>& cols, std::size_t n);
  static Mat from_rows(const std::vector<Vec>& rows, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Cyclo8& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Cyclo8& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vec column(std::size_t c) const;
  Vec row(std::size_t r) const;
  void set_column(std::size_t c, const Vec& v);

  Mat operator*(const Mat& o) const;
  Vec operator*(const Vec& v) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const Cyclo8& s) const;
  Mat conj() const;
  Mat transpose() const;
  bool is_zero() const;
  bool is_identity() const;
  // Entries all rational.
  bool is_rational() const;

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  // Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref_in_place();
  std::size_t rank() const;
  // Basis of {x : A x = 0}.
  std::vector<Vec> nullspace() const;
  // Some solution of A x = b, free variables set to zero.
  std::optional<Vec> solve(const Vec& b) const;
  std::optional<Mat> inverse() const;

  // Submatrix with given row and column index lists.
  Mat sub(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

  std::string debug() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Cyclo8> a_;
};

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Cyclo8& s);
Vec vec_conj(const Vec& a);
bool vec_is_zero(const Vec& a);
Vec unit_vec(std::size_t n, std::size_t k);

// Subspace of Q(zeta8)^n stored by an RREF row basis, so equality is literal.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t n) : n_(n), basis_(0, n) {}

  static Subspace span(const std::vector<Vec>& vs, std::size_t n);
  static Subspace whole(std::size_t n);
  // Span of coordinate vectors e_k, k in idx.
  static Subspace coordinate(const std::vector<std::size_t>& idx, std::size_t n);

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.rows(); }
  std::vector<Vec> basis() const;
  const Mat& rref() const { return basis_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  // Image under x -> A x.
  Subspace image(const Mat& a) const;
  // Image under x -> A conj(x) (an antilinear map).
  Subspace anti_image(const Mat& a) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  // Canonical text form, used as a hash key.
  std::string key() const;

 private:
  std::size_t n_ = 0;
  Mat basis_;
};

}  // namespace strataforge
