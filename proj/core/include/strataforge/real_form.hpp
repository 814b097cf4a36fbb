#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "strataforge/lie_algebra.hpp"

namespace strataforge {

// Values of the grading cocharacter on the simple roots, each 0 or 1.
struct GradingDatum {
  std::vector<int> values;
};

// pi(alpha) for alpha in simple-root coordinates.
long grading_value(const GradingDatum& g, const IntVec& root);

enum class RootType { real, compact_imaginary, noncompact_imaginary, complex };
std::string to_string(RootType t);

// The real form attached to a grading: x -> S conj(x), an antilinear involution.
class RealForm {
 public:
  RealForm(std::shared_ptr<const LieAlgebra> la, GradingDatum g);

  const LieAlgebra& algebra() const { return *la_; }
  std::shared_ptr<const LieAlgebra> algebra_ptr() const { return la_; }
  const GradingDatum& grading() const { return g_; }
  long grading_value(std::size_t root) const;
  const Mat& conjugation() const { return s_; }
  Vec conjugate(const Vec& x) const { return s_ * vec_conj(x); }
  // Cartan involution commuting with the conjugation: +1 on H, (-1)^pi on X_alpha.
  const Mat& cartan_involution() const { return theta_; }

 private:
  std::shared_ptr<const LieAlgebra> la_;
  GradingDatum g_;
  Mat s_, theta_;
};

// A sigma-stable Cartan C(h) with its transported Chevalley basis. Elements are
// written in frame coordinates y, standing for C y; conjugation becomes M conj(y).
struct CartanFrame {
  Mat c, c_inv, m;
  std::vector<std::size_t> tau;       // sigma X_alpha is proportional to X_{tau alpha}
  std::vector<Cyclo8> tau_coeff;      // the proportionality constant
  std::vector<std::vector<long>> tau_h;  // sigma on the Cartan, simple-coroot coordinates
  std::vector<RootType> types;
  std::size_t real_rank = 0;

  Vec conjugate(const Vec& y) const { return m * vec_conj(y); }
  std::size_t count(RootType t) const;
};

// Frame transported by c with known inverse; throws ConsistencyError if not sigma-stable.
CartanFrame make_frame(const RealForm& rf, Mat c, Mat c_inv);
CartanFrame compact_frame(const RealForm& rf);
// Cayley transform in a noncompact imaginary root of the frame.
CartanFrame cayley(const RealForm& rf, const CartanFrame& f, std::size_t alpha);
// Theta-stability of the transported Cartan.
bool is_theta_stable(const RealForm& rf, const CartanFrame& f);

// Conjugacy invariant: real rank and the multiset of (type, squared length).
std::string frame_signature(const RealForm& rf, const CartanFrame& f);

struct CartanEdge {
  std::size_t from, to, root;  // root index in the source frame
};

struct CartanHasse {
  std::vector<CartanFrame> frames;
  std::vector<std::string> signatures;
  std::vector<CartanEdge> edges;
  std::size_t class_of(const std::string& signature) const;
};

// Closure of the compact frame under Cayley transforms, one frame per signature.
CartanHasse cartan_hasse(const RealForm& rf);

}  // namespace strataforge
