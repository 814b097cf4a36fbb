#include "doctest.h"
#include "strataforge/real_form.hpp"

using namespace strataforge;

namespace {

RealForm real_form(const char* type, std::vector<int> g) {
  return RealForm(LieAlgebra::build(RootSystem::build(type)), GradingDatum{std::move(g)});
}

}  // namespace

TEST_CASE("conjugation is a bracket-compatible involution") {
  for (auto [t, g] : {std::pair<const char*, std::vector<int>>{"A2", {1, 1}}, {"C2", {0, 1}}, {"G2", {1, 1}}, {"C3", {0, 0, 1}}}) {
    CAPTURE(t);
    RealForm rf = real_form(t, g);
    const LieAlgebra& la = rf.algebra();
    const Mat& s = rf.conjugation();
    CHECK((s * s.conj()).is_identity());
    bool ok = true;
    for (std::size_t a = 0; a < la.dim() && ok; ++a) {
      for (std::size_t b = 0; b < la.dim() && ok; ++b) {
        Vec xa = unit_vec(la.dim(), a), xb = unit_vec(la.dim(), b);
        ok = rf.conjugate(la.bracket(xa, xb)) == la.bracket(rf.conjugate(xa), rf.conjugate(xb));
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("compact frame types follow the grading parity") {
  RealForm rf = real_form("A2", {1, 1});
  CartanFrame f = compact_frame(rf);
  const RootSystem& rs = rf.algebra().roots();
  std::size_t top = *rs.index_of({1, 1});
  CHECK(f.types[top] == RootType::compact_imaginary);
  CHECK(f.types[0] == RootType::noncompact_imaginary);
  CHECK(f.types[1] == RootType::noncompact_imaginary);
  CHECK(f.real_rank == 0);

  RealForm a1 = real_form("A1", {1});
  CHECK(compact_frame(a1).types[0] == RootType::noncompact_imaginary);

  RealForm g2 = real_form("G2", {1, 1});
  CartanFrame fg = compact_frame(g2);
  // One short and one long compact positive root.
  std::size_t short_compact = 0, long_compact = 0;
  for (std::size_t a = 0; a < 6; ++a) {
    if (fg.types[a] != RootType::compact_imaginary) continue;
    (g2.algebra().roots().is_long(a) ? long_compact : short_compact) += 1;
  }
  CHECK(short_compact == 1);
  CHECK(long_compact == 1);
}

TEST_CASE("Cartan classes") {
  struct Row {
    const char* t;
    std::vector<int> g;
    std::size_t classes;
  };
  for (const Row& row : {Row{"A1", {1}, 2}, Row{"A2", {1, 1}, 2}, Row{"A2", {1, 0}, 2}, Row{"C2", {0, 1}, 4},
                         Row{"C2", {1, 1}, 4}, Row{"G2", {1, 0}, 4}, Row{"G2", {0, 1}, 4}, Row{"G2", {1, 1}, 4},
                         Row{"C3", {0, 0, 1}, 6}}) {
    std::string name = std::string(row.t) + std::to_string(row.g[0]) + std::to_string(row.g[1]);
    CAPTURE(name);
    RealForm rf = real_form(row.t, row.g);
    CartanHasse h = cartan_hasse(rf);
    CHECK(h.frames.size() == row.classes);
    for (const auto& f : h.frames) {
      CHECK(is_theta_stable(rf, f));
      CHECK(f.count(RootType::complex) % 4 == 0);
      CHECK((f.m * f.m.conj()).is_identity());
    }
    for (const auto& e : h.edges) CHECK(h.frames[e.to].real_rank == h.frames[e.from].real_rank + 1);
  }
}

TEST_CASE("rank-one Cartan of SU(2,1) has a single real pair") {
  RealForm rf = real_form("A2", {1, 1});
  CartanFrame f = cayley(rf, compact_frame(rf), 0);
  CHECK(f.real_rank == 1);
  CHECK(f.count(RootType::real) == 2);
  CHECK(f.count(RootType::complex) == 4);
  CHECK(f.types[0] == RootType::real);
  CHECK_THROWS(cayley(rf, compact_frame(rf), 2));
}

TEST_CASE("symplectic rank-two Cartan diagram") {
  RealForm rf = real_form("C2", {0, 1});
  CartanHasse h = cartan_hasse(rf);
  REQUIRE(h.frames.size() == 4);
  CHECK(h.frames[3].real_rank == 2);
  std::size_t into_top = 0;
  for (const auto& e : h.edges) into_top += e.to == 3;
  CHECK(into_top == 2);
  // Frame 1 comes from a long root and frame 2 from a short one.
  const RootSystem& rs = rf.algebra().roots();
  for (const auto& e : h.edges) {
    if (e.from == 0 && e.to == 1) CHECK(rs.is_long(e.root));
    if (e.from == 0 && e.to == 2) CHECK_FALSE(rs.is_long(e.root));
  }
}
