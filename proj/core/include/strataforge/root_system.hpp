#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace strataforge {

using IntVec = std::vector<long>;
using IntMat = std::vector<std::vector<long>>;

struct InvalidCartanMatrix : std::invalid_argument {
  explicit InvalidCartanMatrix(const std::string& w) : std::invalid_argument(w) {}
};

// Convention: cartan[i][j] = <alpha_i, alpha_j^vee> = alpha_i(H_j).
IntMat cartan_matrix_for_type(const std::string& type);

class RootSystem {
 public:
  static RootSystem build(const std::string& type);
  static RootSystem build(const IntMat& cartan, std::string name = "custom");

  const std::string& name() const { return name_; }
  std::size_t rank() const { return rank_; }
  const IntMat& cartan() const { return cartan_; }

  std::size_t size() const { return roots_.size(); }
  std::size_t num_positive() const { return roots_.size() / 2; }
  // Positive roots occupy [0, num_positive()) in (height, descending lex) order,
  // so simple root i has index i; the negative of root k is k +- num_positive().
  const IntVec& root(std::size_t k) const { return roots_[k]; }
  const std::vector<IntVec>& roots() const { return roots_; }
  bool is_positive(std::size_t k) const { return k < num_positive(); }
  std::size_t negative(std::size_t k) const;
  std::optional<std::size_t> index_of(const IntVec& v) const;
  long height(std::size_t k) const;

  // Symmetric form normalized so the shortest roots have squared length 2.
  mpq_class inner(const IntVec& a, const IntVec& b) const;
  mpq_class norm2(std::size_t k) const { return inner(roots_[k], roots_[k]); }
  // <beta, alpha^vee>
  long pairing(const IntVec& beta, std::size_t alpha) const;
  // alpha^vee in simple coroot coordinates.
  const IntVec& coroot(std::size_t k) const { return coroots_[k]; }
  // alpha(h) for h in simple coroot coordinates.
  mpq_class evaluate(std::size_t alpha, const std::vector<mpq_class>& h) const;
  mpq_class evaluate(const IntVec& weight, const std::vector<mpq_class>& h) const;

  // Number of steps the alpha-string through beta runs down / up inside roots plus {0}.
  std::pair<long, long> root_string(const IntVec& beta, std::size_t alpha) const;

  // beta - <beta, alpha^vee> alpha
  IntVec reflect(const IntVec& beta, std::size_t alpha) const;
  // h - alpha(h) alpha^vee on coroot coordinates
  std::vector<mpq_class> reflect_coweight(const std::vector<mpq_class>& h, std::size_t alpha) const;

  bool is_long(std::size_t k) const { return norm2(k) == max_norm2_; }
  bool simply_laced() const { return min_norm2_ == max_norm2_; }

  // Fundamental weight i in simple root coordinates (rational).
  std::vector<mpq_class> fundamental_weight(std::size_t i) const;

 private:
  std::string name_;
  std::size_t rank_ = 0;
  IntMat cartan_;
  std::vector<mpq_class> sym_;  // squared lengths of simple roots
  std::vector<IntVec> roots_;
  std::vector<IntVec> coroots_;
  std::map<IntVec, std::size_t> index_;
  mpq_class min_norm2_, max_norm2_;
};

// Classify a (closed) set of roots into irreducible components, e.g. "A2" or "A1xA1".
std::string root_subsystem_type(const RootSystem& rs, const std::vector<std::size_t>& roots);

}  // namespace strataforge
