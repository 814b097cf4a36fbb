#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "strataforge/linalg.hpp"
#include "strataforge/root_system.hpp"
#include "strataforge/weyl.hpp"

namespace strataforge {

// Raised when an exact computation contradicts a structural assumption.
struct ConsistencyError : std::runtime_error {
  explicit ConsistencyError(const std::string& w) : std::runtime_error(w) {}
};

// Chevalley basis: H_1..H_r (simple coroots) followed by X_alpha for every root
// in RootSystem order. Structure constants are integers.
class LieAlgebra {
 public:
  static std::shared_ptr<const LieAlgebra> build(const RootSystem& rs);

  const RootSystem& roots() const { return rs_; }
  const WeylGroup& weyl() const { return *weyl_; }
  std::size_t rank() const { return rs_.rank(); }
  std::size_t dim() const { return rs_.rank() + rs_.size(); }
  std::size_t h_index(std::size_t i) const { return i; }
  std::size_t x_index(std::size_t root) const { return rs_.rank() + root; }
  bool is_cartan_index(std::size_t b) const { return b < rs_.rank(); }
  std::size_t root_of_index(std::size_t b) const { return b - rs_.rank(); }

  // N_{alpha,beta} with [X_alpha, X_beta] = N X_{alpha+beta}; 0 when alpha+beta is not a root.
  long structure_constant(std::size_t a, std::size_t b) const { return n_[a * rs_.size() + b]; }

  const Mat& ad_basis(std::size_t b) const { return ad_[b]; }
  Mat ad(const Vec& x) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  const Mat& killing() const { return killing_; }
  Cyclo8 killing(const Vec& x, const Vec& y) const;

  // Coroot H_alpha as a vector of the algebra.
  Vec coroot_vector(std::size_t root) const;
  // Element of the Cartan with the given simple-coroot coordinates.
  Vec cartan_vector(const std::vector<mpq_class>& h) const;

  // Ad(exp(pi/4 (a X_{-alpha} - b X_alpha))) with ab = 1; default a = b = 1.
  Mat cayley_matrix(std::size_t alpha) const;
  Mat cayley_matrix(std::size_t alpha, const Cyclo8& a, const Cyclo8& b) const;
  // Inverse of the above, returned alongside to avoid a general inversion.
  Mat cayley_matrix_inverse(std::size_t alpha, const Cyclo8& a, const Cyclo8& b) const;
  // exp(sum_k t^k ad(Z)^k / k!) for nilpotent ad(Z).
  Mat exp_nilpotent(const Vec& z, const Cyclo8& t) const;

 private:
  RootSystem rs_;
  std::unique_ptr<WeylGroup> weyl_;
  std::vector<long> n_;
  std::vector<Mat> ad_;
  Mat killing_;
};

// sum_m zeta^(power m) P_m over the spectral projectors of E, whose spectrum must
// lie in {unit * m : |m| <= 3}.
Mat spectral_exp(const Mat& e, const Cyclo8& unit, long power);

}  // namespace strataforge
