#include "strataforge/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace strataforge {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

Mat Mat::from_columns(const std::vector<Vec>& cols, std::size_t n) {
  Mat m(n, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t n) {
  Mat m(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vec Mat::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vec Mat::row(std::size_t r) const {
  return Vec(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
}

void Mat::set_column(std::size_t c, const Vec& v) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: size mismatch");
  Mat m(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Cyclo8& x = (*this)(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) {
        const Cyclo8& y = o(k, c);
        if (y.is_zero()) continue;
        m(r, c) += x * y;
      }
    }
  }
  return m;
}

Vec Mat::operator*(const Vec& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix-vector: size mismatch");
  Vec out(rows_);
  for (std::size_t k = 0; k < cols_; ++k) {
    if (v[k].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Cyclo8& x = (*this)(r, k);
      if (!x.is_zero()) out[r] += x * v[k];
    }
  }
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  Mat m = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  Mat m = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
  return m;
}

Mat Mat::scaled(const Cyclo8& s) const {
  Mat m = *this;
  for (auto& x : m.a_) {
    if (!x.is_zero()) x *= s;
  }
  return m;
}

Mat Mat::conj() const {
  Mat m = *this;
  for (auto& x : m.a_) x = x.conj();
  return m;
}

Mat Mat::transpose() const {
  Mat m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  }
  return m;
}

bool Mat::is_zero() const {
  for (const auto& x : a_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Cyclo8& x = (*this)(r, c);
      if (r == c ? !x.is_one() : !x.is_zero()) return false;
    }
  }
  return true;
}

bool Mat::is_rational() const {
  for (const auto& x : a_) {
    if (!x.is_rational()) return false;
  }
  return true;
}

std::vector<std::size_t> Mat::rref_in_place() {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < cols_ && prow < rows_; ++c) {
    std::size_t sel = rows_;
    for (std::size_t r = prow; r < rows_; ++r) {
      if (!(*this)(r, c).is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel == rows_) continue;
    if (sel != prow) {
      for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(sel, k), (*this)(prow, k));
    }
    Cyclo8 inv = (*this)(prow, c).inverse();
    for (std::size_t k = c; k < cols_; ++k) {
      if (!(*this)(prow, k).is_zero()) (*this)(prow, k) *= inv;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == prow) continue;
      Cyclo8 f = (*this)(r, c);
      if (f.is_zero()) continue;
      for (std::size_t k = c; k < cols_; ++k) {
        const Cyclo8& y = (*this)(prow, k);
        if (!y.is_zero()) (*this)(r, k) -= f * y;
      }
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

std::size_t Mat::rank() const {
  Mat m = *this;
  return m.rref_in_place().size();
}

std::vector<Vec> Mat::nullspace() const {
  Mat m = *this;
  auto piv = m.rref_in_place();
  std::vector<bool> is_piv(cols_, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_piv[f]) continue;
    Vec v(cols_);
    v[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(k, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vec> Mat::solve(const Vec& b) const {
  Mat aug(rows_, cols_ + 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) aug(r, c) = (*this)(r, c);
    aug(r, cols_) = b[r];
  }
  auto piv = aug.rref_in_place();
  if (!piv.empty() && piv.back() == cols_) return std::nullopt;
  Vec x(cols_);
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug(k, cols_);
  return x;
}

std::optional<Mat> Mat::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  std::size_t n = rows_;
  Mat aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = (*this)(r, c);
    aug(r, n + r) = 1;
  }
  auto piv = aug.rref_in_place();
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Mat inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  }
  return inv;
}

Mat Mat::sub(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  Mat m(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = (*this)(rows[r], cols[c]);
  }
  return m;
}

std::string Mat::debug() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "  " : "") << (*this)(r, c).pretty();
    os << "\n";
  }
  return os.str();
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += b[k];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
  return r;
}

Vec vec_scale(const Vec& a, const Cyclo8& s) {
  Vec r = a;
  for (auto& x : r) {
    if (!x.is_zero()) x *= s;
  }
  return r;
}

Vec vec_conj(const Vec& a) {
  Vec r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k].conj();
  return r;
}

bool vec_is_zero(const Vec& a) {
  for (const auto& x : a) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Vec unit_vec(std::size_t n, std::size_t k) {
  Vec v(n);
  v[k] = 1;
  return v;
}

Subspace Subspace::span(const std::vector<Vec>& vs, std::size_t n) {
  Subspace s(n);
  if (vs.empty()) return s;
  Mat m = Mat::from_rows(vs, n);
  auto piv = m.rref_in_place();
  s.basis_ = Mat(piv.size(), n);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    for (std::size_t c = 0; c < n; ++c) s.basis_(r, c) = m(r, c);
  }
  return s;
}

Subspace Subspace::whole(std::size_t n) {
  Subspace s(n);
  s.basis_ = Mat::identity(n);
  return s;
}

Subspace Subspace::coordinate(const std::vector<std::size_t>& idx, std::size_t n) {
  std::vector<Vec> vs;
  for (auto k : idx) vs.push_back(unit_vec(n, k));
  return span(vs, n);
}

std::vector<Vec> Subspace::basis() const {
  std::vector<Vec> out;
  for (std::size_t r = 0; r < basis_.rows(); ++r) out.push_back(basis_.row(r));
  return out;
}

bool Subspace::contains(const Vec& v) const {
  auto b = basis();
  std::size_t d = b.size();
  b.push_back(v);
  return Mat::from_rows(b, n_).rank() == d;
}

bool Subspace::contains(const Subspace& o) const { return (*this + o).dim() == dim(); }

Subspace Subspace::operator+(const Subspace& o) const {
  auto b = basis();
  auto ob = o.basis();
  b.insert(b.end(), ob.begin(), ob.end());
  return span(b, n_);
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (dim() == 0 || o.dim() == 0) return Subspace(n_);
  if (dim() == n_) return o;
  if (o.dim() == n_) return *this;
  // x = sum a_i u_i lies in o iff it is annihilated by a basis of o's annihilator.
  std::vector<Vec> ann = o.basis_.nullspace();  // vectors y with o_rows . y = 0
  Mat a = basis_;                                // d x n
  Mat k = Mat::from_columns(ann, n_);            // n x m
  Mat ak = a * k;                                // d x m
  // coefficients c (row) with c . ak = 0  <=>  ak^T c^T = 0
  auto coeffs = ak.transpose().nullspace();
  std::vector<Vec> out;
  for (const auto& c : coeffs) {
    Vec x(n_);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!a(i, j).is_zero()) x[j] += c[i] * a(i, j);
      }
    }
    out.push_back(std::move(x));
  }
  return span(out, n_);
}

Subspace Subspace::image(const Mat& a) const {
  std::vector<Vec> out;
  for (const auto& b : basis()) out.push_back(a * b);
  return span(out, a.rows());
}

Subspace Subspace::anti_image(const Mat& a) const {
  std::vector<Vec> out;
  for (const auto& b : basis()) out.push_back(a * vec_conj(b));
  return span(out, a.rows());
}

std::string Subspace::key() const {
  std::ostringstream os;
  os << n_ << ":" << dim() << "|";
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    for (std::size_t c = 0; c < n_; ++c) {
      const auto& x = basis_(r, c);
      if (!x.is_zero()) os << r << "," << c << "=" << x.pretty() << ";";
    }
  }
  return os.str();
}

}  // namespace strataforge
