#include <random>

#include "doctest.h"
#include "strataforge/lie_algebra.hpp"
#include "test_support.hpp"

using namespace strataforge;

namespace {

std::shared_ptr<const LieAlgebra> algebra(const char* t) { return LieAlgebra::build(RootSystem::build(t)); }

Vec basis_vec(const LieAlgebra& la, std::size_t b) { return unit_vec(la.dim(), b); }

Mat mat_pow(const Mat& m, int k) {
  Mat out = Mat::identity(m.rows());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace

TEST_CASE("rank one normalization") {
  auto la = algebra("A1");
  CHECK(la->dim() == 3);
  Vec x = basis_vec(*la, la->x_index(0)), y = basis_vec(*la, la->x_index(1));
  CHECK(la->bracket(x, y) == la->coroot_vector(0));
  Vec h = la->coroot_vector(0);
  CHECK(la->bracket(h, x) == vec_scale(x, Cyclo8(2)));
  CHECK(la->killing(h, h) == Cyclo8(8));
}

TEST_CASE("structure constants") {
  auto a2 = algebra("A2");
  long n = a2->structure_constant(0, 1);
  CHECK((n == 1 || n == -1));
  for (const char* t : {"A2", "B2", "C2", "G2", "C3"}) {
    CAPTURE(t);
    auto la = algebra(t);
    const RootSystem& rs = la->roots();
    for (std::size_t a = 0; a < rs.size(); ++a) {
      for (std::size_t b = 0; b < rs.size(); ++b) {
        long nab = la->structure_constant(a, b);
        CHECK(nab == -la->structure_constant(b, a));
        if (nab != 0) {
          long p = rs.root_string(rs.root(b), a).first;
          CHECK(std::abs(nab) == p + 1);
          CHECK(la->structure_constant(rs.negative(a), rs.negative(b)) == -nab);
        }
      }
    }
  }
  CHECK(algebra("G2")->dim() == 14);
}

TEST_CASE("Jacobi identity exhaustively") {
  for (const char* t : {"A1", "A2", "B2", "G2", "C3"}) {
    CAPTURE(t);
    auto la = algebra(t);
    std::size_t n = la->dim();
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      for (std::size_t b = 0; b < n && ok; ++b) {
        // ad[X_a, X_b] = [ad X_a, ad X_b] is equivalent to Jacobi on all triples.
        Mat lhs = la->ad(la->bracket(basis_vec(*la, a), basis_vec(*la, b)));
        Mat rhs = la->ad_basis(a) * la->ad_basis(b) - la->ad_basis(b) * la->ad_basis(a);
        ok = lhs == rhs;
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("Killing form: root grading, nondegeneracy, invariance") {
  for (const char* t : {"A2", "G2", "C3"}) {
    CAPTURE(t);
    auto la = algebra(t);
    const RootSystem& rs = la->roots();
    const Mat& b = la->killing();
    std::size_t r = la->rank();
    for (std::size_t x = 0; x < rs.size(); ++x) {
      for (std::size_t y = 0; y < rs.size(); ++y) {
        if (y != rs.negative(x)) CHECK(b(r + x, r + y).is_zero());
      }
      for (std::size_t i = 0; i < r; ++i) CHECK(b(i, r + x).is_zero());
    }
    CHECK(b.rank() == la->dim());
    // B([Z,X],Y) + B(X,[Z,Y]) = 0  <=>  ad(Z)^T B + B ad(Z) = 0.
    bool ok = true;
    for (std::size_t z = 0; z < la->dim(); ++z) {
      const Mat& a = la->ad_basis(z);
      ok = ok && (a.transpose() * b + b * a).is_zero();
    }
    CHECK(ok);
  }
}

TEST_CASE("Cayley transform in rank one") {
  auto la = algebra("A1");
  Mat c = la->cayley_matrix(0);
  Vec h = la->coroot_vector(0);
  Vec expect = vec_add(basis_vec(*la, la->x_index(0)), basis_vec(*la, la->x_index(1)));
  CHECK(c * h == expect);
  CHECK(c * (c * h) == vec_scale(h, Cyclo8(-1)));
}

TEST_CASE("Cayley matrices are isometric automorphisms of order eight") {
  for (const char* t : {"A2", "C2", "G2"}) {
    CAPTURE(t);
    auto la = algebra(t);
    const RootSystem& rs = la->roots();
    std::size_t n = la->dim(), r = la->rank();
    for (std::size_t a = 0; a < rs.num_positive(); ++a) {
      Mat c = la->cayley_matrix(a);
      CHECK(mat_pow(c, 8).is_identity());
      CHECK(c * la->cayley_matrix_inverse(a, 1, 1) == Mat::identity(n));
      CHECK((c.transpose() * la->killing() * c) == la->killing());
      // Automorphism: c ad(x) c^{-1} = ad(c x) on basis vectors.
      Mat ci = la->cayley_matrix_inverse(a, 1, 1);
      bool ok = true;
      for (std::size_t b = 0; b < n && ok; ++b) ok = c * la->ad_basis(b) * ci == la->ad(c.column(b));
      CHECK(ok);
      // Square restricts to the reflection on the Cartan, in coroot coordinates.
      Mat c2 = c * c;
      const auto& s = la->weyl()[la->weyl().reflection(a)].on_coroots;
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) CHECK(c2(i, j) == Cyclo8(s[i][j]));
        for (std::size_t k = r; k < n; ++k) CHECK(c2(k, i).is_zero());
      }
    }
  }
}

TEST_CASE("nilpotent exponentials") {
  auto la = algebra("A1");
  Vec x = basis_vec(*la, la->x_index(0));
  Mat e = la->exp_nilpotent(x, 1);
  Mat ax = la->ad(x);
  CHECK((ax * ax * ax).is_zero());
  CHECK(e == Mat::identity(3) + ax + (ax * ax).scaled(Cyclo8(mpq_class(1, 2))));
  CHECK(la->exp_nilpotent(Vec(3), 1).is_identity());
  CHECK_THROWS(la->exp_nilpotent(la->coroot_vector(0), 1));

  auto g2 = algebra("G2");
  std::mt19937 rng(99);
  const RootSystem& rs = g2->roots();
  for (int k = 0; k < 200; ++k) {
    Vec z(g2->dim());
    for (std::size_t a = 0; a < rs.num_positive(); ++a) {
      if (rng() % 2) z[g2->x_index(a)] = test_support::random_cyclo(rng);
    }
    Cyclo8 t = test_support::random_cyclo(rng);
    CHECK((g2->exp_nilpotent(z, t) * g2->exp_nilpotent(z, -t)).is_identity());
  }
}

TEST_CASE("spectral exponential rejects a bad spectrum") {
  Mat e(1, 1);
  e(0, 0) = 5;
  CHECK_THROWS_AS(spectral_exp(e, Cyclo8(1), 1), ConsistencyError);
}
