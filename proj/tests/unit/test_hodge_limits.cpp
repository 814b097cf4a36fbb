#include <random>

#include "doctest.h"
#include "strataforge/hodge_limits.hpp"
#include "test_support.hpp"

using namespace strataforge;

namespace {

struct Setup {
  RealForm rf;
  CartanHasse hasse;
  OrbitSpace space;
  Setup(const char* type, std::vector<int> g, OrbitOptions opts = {})
      : rf(LieAlgebra::build(RootSystem::build(type)), GradingDatum{std::move(g)}),
        hasse(cartan_hasse(rf)),
        space(rf, hasse, opts) {}
  const LieAlgebra& la() const { return rf.algebra(); }
  Bigraded pieces(std::size_t record) const {
    const auto& r = space.records()[record];
    return bigraded_pieces(space.flag_point(r.frame, r.rep), la().dim(), la().rank());
  }
  const Mat& sigma(std::size_t record) const { return hasse.frames[space.records()[record].frame].m; }
};

OrbitOptions complete_flag_c2() {
  OrbitOptions o;
  RealWeylFixture fx;
  fx.frame = 1;
  fx.expected_order = 2;
  o.fixtures.push_back(fx);
  return o;
}

Vec root_vector(const LieAlgebra& la, const IntVec& root) {
  return unit_vec(la.dim(), la.x_index(*la.roots().index_of(root)));
}

const std::vector<mpq_class> kSamples{1, 2, 10};

}  // namespace

TEST_CASE("weight filtration of sl2") {
  auto la = LieAlgebra::build(RootSystem::build("A1"));
  Vec n = root_vector(*la, {-1});
  WeightFiltration w = weight_filtration(*la, n);
  CHECK(w.lo == -2);
  CHECK(w.hi() == 2);
  CHECK(w.gr_dim(-2) == 1);
  CHECK(w.gr_dim(0) == 1);
  CHECK(w.gr_dim(2) == 1);
  CHECK(w.gr_dim(1) == 0);
  CHECK_FALSE(weight_filtration_failure(*la, n, w).has_value());
  Sl2Triple t = jm_triple(*la, n);
  // [Y, X_{-alpha}] = -2 X_{-alpha} forces Y = H_alpha.
  CHECK(t.y == la->coroot_vector(0));
  CHECK(t.y_in_cartan);

  WeightFiltration trivial = weight_filtration(*la, Vec(la->dim()));
  CHECK(trivial.at(-1).dim() == 0);
  CHECK(trivial.at(0).dim() == 3);
  CHECK_THROWS_AS(jm_triple(*la, la->coroot_vector(0)), std::invalid_argument);
}

TEST_CASE("weight filtration of the principal nilpotent in G2") {
  auto la = LieAlgebra::build(RootSystem::build("G2"));
  Vec n = vec_add(root_vector(*la, {-1, 0}), root_vector(*la, {0, -1}));
  WeightFiltration w = weight_filtration(*la, n);
  CHECK(w.lo == -10);
  CHECK(w.hi() == 10);
  for (long k = 0; k <= 10; ++k) CHECK(w.gr_dim(k) == w.gr_dim(-k));
  CHECK(w.gr_dim(10) == 1);
  // Exponents 1 and 5: the adjoint representation is V_2 + V_10.
  CHECK(w.gr_dim(2) == 2);
  CHECK(w.gr_dim(0) == 2);
  CHECK_FALSE(weight_filtration_failure(*la, n, w).has_value());
  // A deliberately wrong filtration is caught by the independent rank checks.
  WeightFiltration shifted = w;
  shifted.lo += 2;
  CHECK(weight_filtration_failure(*la, n, shifted).has_value());
}

TEST_CASE("Jacobson-Morozov triples on random nilpotents") {
  std::mt19937 rng(4242);
  std::size_t cases = 0;
  for (const char* type : {"A2", "B2", "C2", "G2", "A3", "C3"}) {
    auto la = LieAlgebra::build(RootSystem::build(type));
    const RootSystem& rs = la->roots();
    std::uniform_int_distribution<std::size_t> pick(0, rs.num_positive() - 1);
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_int_distribution<long> num(-3, 3), den(1, 3);
    for (int trial = 0; trial < 40; ++trial) {
      Vec n(la->dim());
      int k = count(rng);
      for (int t = 0; t < k; ++t) {
        long a = num(rng);
        if (a == 0) a = 1;
        n[la->x_index(rs.negative(pick(rng)))] += Cyclo8(mpq_class(a, den(rng)));
      }
      if (vec_is_zero(n)) continue;
      ++cases;
      Sl2Triple t = jm_triple(*la, n);
      CHECK(la->bracket(t.y, t.n) == vec_scale(t.n, Cyclo8(-2)));
      CHECK(la->bracket(t.y, t.n_plus) == vec_scale(t.n_plus, Cyclo8(2)));
      CHECK(la->bracket(t.n_plus, t.n) == t.y);
      WeightFiltration w = weight_filtration(*la, n);
      CHECK_FALSE(weight_filtration_failure(*la, n, w).has_value());
      // Eigenspaces of ad(Y) reproduce the filtration.
      auto eig = ad_eigenspaces(*la, t.y);
      for (long m = w.lo; m <= w.hi(); ++m) {
        Subspace acc(la->dim());
        for (const auto& [e, s] : eig) {
          if (e <= m) acc = acc + s;
        }
        CHECK(acc == w.at(m));
      }
      // Rescaling N leaves Y unchanged.
      Sl2Triple scaled = jm_triple(*la, vec_scale(n, Cyclo8(mpq_class(5, 3))));
      CHECK(scaled.y == t.y);
    }
  }
  CHECK(cases >= 200);
}

TEST_CASE("Hermitian positivity test") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t k = 1 + static_cast<std::size_t>(trial % 4);
    Mat a(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) a(i, j) = test_support::random_cyclo(rng);
    }
    Mat g = a * a.conj().transpose() + Mat::identity(k);
    CHECK(hermitian_positive_definite(g));
    CHECK_FALSE(hermitian_positive_definite(g.scaled(Cyclo8(-1))));
  }
  Mat indefinite(2, 2);
  indefinite(0, 1) = Cyclo8(1);
  indefinite(1, 0) = Cyclo8(1);
  CHECK_FALSE(hermitian_positive_definite(indefinite));
}

TEST_CASE("Deligne splitting") {
  SUBCASE("split data from every flag point is its own bigrading") {
    Setup s("A2", {1, 1});
    for (std::size_t k = 0; k < s.space.records().size(); ++k) {
      Bigraded g = s.pieces(k);
      std::size_t n = s.la().dim();
      MixedFlagData m = deligne_bigrading(hodge_filtration(g, n), total_degree_filtration(g, n), s.sigma(k));
      CHECK(m.is_split);
      CHECK(m.i == g);
    }
  }
  SUBCASE("pure structure") {
    Setup s("A2", {1, 1});
    std::size_t base = s.space.base_orbit();
    std::size_t n = s.la().dim();
    Filtration f = hodge_filtration(s.pieces(base), n);
    WeightFiltration trivial{n, 0, {Subspace::whole(n)}};
    MixedFlagData m = deligne_bigrading(f, trivial, s.sigma(base));
    for (const auto& [pq, sp] : m.i) {
      CHECK(pq.first + pq.second == 0);
      CHECK(sp == f.at(pq.first).intersect(f.at(-pq.first).anti_image(s.sigma(base))));
    }
  }
  SUBCASE("an imaginary translate is mixed but not split") {
    Setup s("A1", {1});
    std::size_t closed = s.space.find_label("o1{e}");
    auto pol = polarizability(s.space, closed);
    REQUIRE(pol.witness);
    std::size_t n = s.la().dim();
    Bigraded g = s.pieces(closed);
    Filtration f = hodge_filtration(g, n);
    WeightFiltration w = weight_filtration(s.la(), *pol.witness);
    CHECK(w.levels == total_degree_filtration(g, n).levels);
    Mat e = s.la().exp_nilpotent(*pol.witness, Cyclo8::i());
    Filtration moved = f;
    for (auto& level : moved.levels) level = level.image(e);
    MixedFlagData m = deligne_bigrading(moved, w, s.sigma(closed));
    CHECK_FALSE(m.is_split);
    CHECK(m.h == dims(g));
    CHECK_THROWS_AS(naive_limit(m), std::invalid_argument);
  }
  SUBCASE("a non-mixed pair is rejected") {
    Setup s("A1", {1});
    std::size_t n = s.la().dim();
    std::size_t base = s.space.base_orbit();
    Filtration f = hodge_filtration(s.pieces(base), n);
    // W(N) of the compact frame's root vector is not real.
    Vec x = unit_vec(n, s.la().x_index(1));
    CHECK_THROWS_AS(deligne_bigrading(f, weight_filtration(s.la(), x), s.sigma(base)), std::invalid_argument);
  }
}

TEST_CASE("naive limit flips the bigrading") {
  for (auto [type, grading] : std::vector<std::pair<const char*, std::vector<int>>>{
           {"A1", {1}}, {"A2", {1, 1}}, {"C2", {0, 1}}, {"G2", {1, 1}}}) {
    Setup s(type, grading);
    std::size_t n = s.la().dim();
    for (std::size_t k = 0; k < s.space.records().size(); ++k) {
      auto pol = polarizability(s.space, k);
      if (!pol.witness || vec_is_zero(*pol.witness)) continue;
      const auto& r = s.space.records()[k];
      FlagPoint fp = s.space.flag_point(r.frame, r.rep);
      StratumLimit lim = limit_from_stratum(s.la(), s.sigma(k), fp, *pol.witness);
      WeightFiltration w = weight_filtration(s.la(), lim.n);
      MixedFlagData m = deligne_bigrading(lim.f_tilde, w, s.sigma(k));
      REQUIRE(m.is_split);
      NaiveLimit nl = naive_limit(m);
      CHECK(dims(nl.g) == flip(m.h));
      CHECK(flip(flip(m.h)) == m.h);
      CHECK(nl.g == s.pieces(k));
      // Upside-down identity: sum_p F^p cap conj F^{j-p} = W(N)_{-j}.
      WeightFiltration ud = upside_down_filtration(nl.f, s.sigma(k));
      for (long j = -8; j <= 8; ++j) CHECK(ud.at(-j) == w.at(-j));
    }
  }
}

TEST_CASE("a root vector at (1,-1) lands at (1,1) after the Cayley transform") {
  Setup s("A1", {1});
  FlagPoint base = s.space.flag_point(0, 0);
  FlagPoint bdry = s.space.flag_point(1, 0);
  std::size_t a = 0;
  CHECK(base.p[a] == 1);
  CHECK(base.q[a] == -1);
  CHECK(bdry.p[a] == 1);
  CHECK(bdry.q[a] == 1);
  // The limiting structure sees it at (-1,-1), where the monodromy logarithm lives.
  DimTable d{{{1, 1}, 1}};
  CHECK(flip(d).count({-1, -1}) == 1);
}

TEST_CASE("nilpotent orbit consistency") {
  Setup s("A1", {1});
  std::size_t n = s.la().dim();
  std::size_t base = s.space.base_orbit(), closed = s.space.find_label("o1{e}");
  Vec zero(n);
  CHECK(nilpotent_orbit_consistency(s.la(), s.sigma(base), hodge_filtration(s.pieces(base), n), zero, kSamples).all_pass());
  Filtration fc = hodge_filtration(s.pieces(closed), n);
  CHECK_FALSE(nilpotent_orbit_consistency(s.la(), s.sigma(closed), fc, zero, kSamples).all_pass());
  auto pol = polarizability(s.space, closed);
  REQUIRE(pol.witness);
  CHECK(nilpotent_orbit_consistency(s.la(), s.sigma(closed), fc, *pol.witness, kSamples).all_pass());
  // For sl2 the adjoint test cannot tell the upper from the lower half-plane:
  // -N lands in the conjugate domain, which is another polarized Hodge flag.
  Vec neg = vec_scale(*pol.witness, Cyclo8(-1));
  CHECK(nilpotent_orbit_consistency(s.la(), s.sigma(closed), fc, neg, kSamples).all_pass());
  Mat e_pos = s.la().exp_nilpotent(*pol.witness, Cyclo8::i());
  Mat e_neg = s.la().exp_nilpotent(neg, Cyclo8::i());
  Subspace up = fc.at(1).image(e_pos), down = fc.at(1).image(e_neg);
  CHECK(up != down);
  CHECK(up.anti_image(s.sigma(closed)) == down);
}

TEST_CASE("sign-flipped witness leaves the domain in the Carayol case") {
  Setup s("A2", {1, 1});
  std::size_t n = s.la().dim();
  for (std::size_t k = 0; k < s.space.records().size(); ++k) {
    if (s.space.records()[k].codim != 1) continue;
    auto pol = polarizability(s.space, k);
    REQUIRE(pol.witness);
    Filtration f = hodge_filtration(s.pieces(k), n);
    CHECK(nilpotent_orbit_consistency(s.la(), s.sigma(k), f, *pol.witness, kSamples).all_pass());
    auto bad = nilpotent_orbit_consistency(s.la(), s.sigma(k), f, vec_scale(*pol.witness, Cyclo8(-1)), kSamples);
    for (const auto& sample : bad.samples) CHECK_FALSE(sample.pass());
  }
}

TEST_CASE("polarizability in the examples") {
  SUBCASE("Carayol closed orbit needs a non-root witness") {
    Setup s("A2", {1, 1});
    std::size_t closed = s.space.find_label("o1{2}");
    auto pol = polarizability(s.space, closed);
    REQUIRE(pol.verdict == Polarizability::polarizable);
    REQUIRE(pol.witness);
    std::size_t support = 0;
    for (const auto& c : *pol.witness) support += !c.is_zero();
    CHECK(support == 2);
    // Its support is a pair of complex roots exchanged by conjugation.
    const auto& f = s.hasse.frames[s.space.records()[closed].frame];
    std::vector<std::size_t> roots;
    for (std::size_t b = s.la().rank(); b < s.la().dim(); ++b) {
      if (!(*pol.witness)[b].is_zero()) roots.push_back(s.la().root_of_index(b));
    }
    REQUIRE(roots.size() == 2);
    CHECK(f.types[roots[0]] == RootType::complex);
    CHECK(f.tau[roots[0]] == roots[1]);
  }
  SUBCASE("complete-flag PSp4") {
    Setup s("C2", {1, 1}, complete_flag_c2());
    std::size_t zero_pieces = 0;
    for (std::size_t k = 0; k < s.space.records().size(); ++k) {
      const auto& r = s.space.records()[k];
      auto pol = polarizability(s.space, k);
      if (r.codim == 3 && r.boundary && r.hpq.dim(-1, -1) == 0) {
        ++zero_pieces;
        CHECK(pol.verdict == Polarizability::not_polarizable);
      }
      if (r.codim == 1 && r.boundary) {
        CHECK(pol.verdict == Polarizability::polarizable);
        CHECK(cuspidality(s.space, k).cuspidal);
      }
    }
    CHECK(zero_pieces >= 1);
  }
  SUBCASE("a closed orbit whose weights are not of sl2 type") {
    Setup s("G2", {1, 0});
    const auto& recs = s.space.records();
    for (std::size_t k = 0; k < recs.size(); ++k) {
      if (!recs[k].closed) continue;
      CHECK_FALSE(sl2_weight_shape(dims(s.pieces(k))));
      CHECK(polarizability(s.space, k).verdict == Polarizability::not_polarizable);
    }
  }
}

TEST_CASE("witnesses polarize, match the weight filtration and pass the orbit test") {
  std::size_t checked = 0;
  for (auto [type, grading] : std::vector<std::pair<const char*, std::vector<int>>>{
           {"A1", {1}}, {"A2", {1, 1}}, {"A2", {1, 0}}, {"C2", {0, 1}}, {"G2", {1, 1}}, {"G2", {0, 1}}}) {
    Setup s(type, grading);
    std::size_t n = s.la().dim();
    for (std::size_t k = 0; k < s.space.records().size(); ++k) {
      auto pol = polarizability(s.space, k);
      if (!pol.witness) continue;
      Bigraded g = s.pieces(k);
      CHECK_FALSE(polarization_failure(s.la(), s.sigma(k), g, *pol.witness).has_value());
      Filtration f = hodge_filtration(g, n);
      CHECK(nilpotent_orbit_consistency(s.la(), s.sigma(k), f, *pol.witness, kSamples).all_pass());
      if (!vec_is_zero(*pol.witness)) {
        CHECK(weight_filtration(s.la(), *pol.witness).levels == total_degree_filtration(g, n).levels);
      }
      ++checked;
    }
  }
  CHECK(checked >= 15);
}

TEST_CASE("cuspidality") {
  SUBCASE("open orbits and codimension one") {
    for (auto [type, grading] : std::vector<std::pair<const char*, std::vector<int>>>{
             {"A1", {1}}, {"A2", {1, 1}}, {"C2", {0, 1}}, {"G2", {1, 1}}}) {
      Setup s(type, grading);
      for (std::size_t k = 0; k < s.space.records().size(); ++k) {
        const auto& r = s.space.records()[k];
        if (r.open || (r.codim == 1 && r.boundary)) CHECK(cuspidality(s.space, k).cuspidal);
      }
    }
  }
  SUBCASE("Siegel closed orbit for Sp6") {
    Setup s("C3", {0, 0, 1});
    for (std::size_t k = 0; k < s.space.records().size(); ++k) {
      if (!s.space.records()[k].closed) continue;
      CuspidalityReport c = cuspidality(s.space, k);
      CHECK(c.levi_type == "A2");
      CHECK_FALSE(c.cuspidal);
    }
  }
}

TEST_CASE("dimension formulas") {
  for (auto [type, grading] : std::vector<std::pair<const char*, std::vector<int>>>{
           {"A1", {1}}, {"A2", {1, 1}}, {"C2", {0, 1}}, {"G2", {1, 1}}}) {
    Setup s(type, grading);
    for (std::size_t k = 0; k < s.space.records().size(); ++k) {
      auto pol = polarizability(s.space, k);
      if (!pol.witness || vec_is_zero(*pol.witness)) continue;
      const auto& r = s.space.records()[k];
      StratumLimit lim = limit_from_stratum(s.la(), s.sigma(k), s.space.flag_point(r.frame, r.rep), *pol.witness);
      MixedFlagData m = deligne_bigrading(lim.f_tilde, weight_filtration(s.la(), lim.n), s.sigma(k));
      DimensionReport d = dimension_report(s.la(), lim.n, m);
      CHECK(d.orbit_formula_holds);
      CHECK(d.c == r.codim);
      if (r.hodge_tate) CHECK(d.dim_b_hat == 0);
      if (std::string(type) == "A2" && r.codim == 1) CHECK(d.gamma);
      CHECK(d.dim_b >= d.dim_b_real);
    }
  }
}

TEST_CASE("bigrading symmetry and Killing pairing across all flag points") {
  std::size_t points = 0;
  for (auto [type, grading] : std::vector<std::pair<const char*, std::vector<int>>>{
           {"A2", {1, 1}}, {"C2", {1, 1}}, {"G2", {1, 1}}, {"C3", {0, 0, 1}}}) {
    Setup s(type, grading);
    const LieAlgebra& la = s.la();
    std::size_t n = la.dim();
    for (std::size_t j = 0; j < s.hasse.frames.size(); ++j) {
      for (std::size_t w = 0; w < la.weyl().size(); ++w) {
        ++points;
        FlagPoint fp = s.space.flag_point(j, w);
        Bigraded g = bigraded_pieces(fp, n, la.rank());
        for (const auto& [pq, sp] : g) {
          // conj g^{p,q} = g^{q,p}
          auto mirror = g.find({pq.second, pq.first});
          REQUIRE(mirror != g.end());
          CHECK(sp.anti_image(s.hasse.frames[j].m) == mirror->second);
          // B pairs g^{p,q} with g^{-p,-q} nondegenerately and kills everything else.
          auto dual = g.find({-pq.first, -pq.second});
          REQUIRE(dual != g.end());
          auto bs = sp.basis(), bd = dual->second.basis();
          Mat pairing(bs.size(), bd.size());
          for (std::size_t x = 0; x < bs.size(); ++x) {
            for (std::size_t y = 0; y < bd.size(); ++y) pairing(x, y) = la.killing(bs[x], bd[y]);
          }
          CHECK(pairing.rank() == bs.size());
          for (const auto& [other, so] : g) {
            if (other.first == -pq.first && other.second == -pq.second) continue;
            for (const auto& u : bs) {
              for (const auto& v : so.basis()) CHECK(la.killing(u, v).is_zero());
            }
          }
        }
        // Codimension and dimensions are constant on double cosets.
        std::size_t rep = s.space.cosets(j).reps[s.space.cosets(j).coset_of[w]];
        FlagPoint rp = s.space.flag_point(j, rep);
        CHECK(rp.codimension() == fp.codimension());
        CHECK(rp.bigrading().dims == fp.bigrading().dims);
      }
    }
  }
  CHECK(points >= 200);
}
