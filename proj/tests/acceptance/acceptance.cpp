// Runs the end-to-end checks on the shipped configurations and prints one line per criterion.
#include <algorithm>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "strataforge/render.hpp"

using namespace strataforge;

namespace {

std::string g_config_dir = STRATAFORGE_CONFIG_DIR;

std::unique_ptr<Report> load(const std::string& name) {
  return std::make_unique<Report>(parse_config_file(g_config_dir + "/" + name));
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
};

// Undirected graph with vertex labels, compared up to label-preserving isomorphism.
struct LabeledGraph {
  std::vector<long> labels;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  void add(std::size_t a, std::size_t b) {
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  }
};

bool isomorphic(const LabeledGraph& g, const LabeledGraph& h) {
  if (g.labels.size() != h.labels.size() || g.edges.size() != h.edges.size()) return false;
  std::size_t n = g.labels.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = g.labels[i] == h.labels[perm[i]];
    for (auto it = g.edges.begin(); ok && it != g.edges.end(); ++it) {
      std::size_t a = perm[it->first], b = perm[it->second];
      ok = h.edges.count({std::min(a, b), std::max(a, b)}) > 0;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

LabeledGraph incidence_graph(Report& r) {
  EnhancedHasseDiagram d = r.diagram();
  LabeledGraph g;
  for (const auto& v : d.vertices) g.labels.push_back(v.rank);
  for (const auto& e : d.edges) g.add(e.from, e.to);
  return g;
}

LabeledGraph cartan_graph(const CartanHasse& h) {
  LabeledGraph g;
  for (const auto& f : h.frames) g.labels.push_back(static_cast<long>(f.real_rank));
  for (const auto& e : h.edges) g.add(e.from, e.to);
  return g;
}

bool has_edge(const OrbitSpace& s, const std::string& a, const std::string& b) {
  std::size_t x = s.find_label(a), y = s.find_label(b);
  return std::any_of(s.edges().begin(), s.edges().end(),
                     [&](const OrbitEdge& e) { return e.from == x && e.to == y && e.kind != EdgeKind::wolf_closed; });
}

std::size_t complex_dimension(const RealForm& rf) {
  const RootSystem& rs = rf.algebra().roots();
  std::size_t d = 0;
  for (std::size_t a = 0; a < rs.num_positive(); ++a) d += rf.grading_value(a) != 0;
  return d;
}

Bigraded pieces_of(const OrbitSpace& s, std::size_t frame, std::size_t w) {
  const LieAlgebra& la = s.real_form().algebra();
  return bigraded_pieces(s.flag_point(frame, w), la.dim(), la.rank());
}

Cyclo8 random_cyclo(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  return Cyclo8(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)),
                mpq_class(num(rng), den(rng)));
}

// ---------------------------------------------------------------- criteria

Outcome carayol() {
  Outcome o;
  auto r = load("carayol.yaml");
  const OrbitSpace& s = r->orbits();
  const auto& recs = s.records();
  o.require(recs.size() == 6, "six orbits");
  std::size_t open = 0, rank_one = 0;
  for (const auto& rec : recs) {
    open += rec.open;
    rank_one += r->hasse().frames[rec.frame].real_rank == 1;
  }
  o.require(open == 3, "three open orbits");
  o.require(rank_one == 3, "three orbits from the real-rank-one Cartan");
  const auto& base = recs[s.base_orbit()];
  std::vector<std::size_t> hp;
  for (long p = 2; p >= -2; --p) hp.push_back(base.hpq.dim(p, -p));
  o.require(hp == std::vector<std::size_t>{1, 2, 2, 2, 1}, "base point h^{p,-p} = (1,2,2,2,1)");
  o.require(recs[s.base_orbit()].label == "o0{e}", "base orbit label");
  o.require(has_edge(s, "o0{1}", "o1{e}") && has_edge(s, "o0{e}", "o1{e}") && has_edge(s, "o0{e}", "o1{21}") &&
                has_edge(s, "o0{2}", "o1{21}"),
            "incidence chain present");
  o.require(!has_edge(s, "o0{1}", "o1{21}") && !has_edge(s, "o0{2}", "o1{e}"), "no extra incidences between the chain's ends");
  o.notes.push_back("6 orbits, 3 open, h^{p,-p} = (1,2,2,2,1)");
  return o;
}

Outcome ball() {
  Outcome o;
  auto r = load("ball.yaml");
  auto pgl2 = load("pgl2.yaml");
  const auto& recs = r->orbits().records();
  std::size_t open = std::count_if(recs.begin(), recs.end(), [](const OrbitRecord& x) { return x.open; });
  std::size_t members = 0;
  for (const auto& rec : recs) members += rec.members.size();
  o.require(recs.size() == 3, "three orbits");
  o.require(open == 2, "two open orbits");
  o.require(members > recs.size(), "the orbit map identifies distinct Weyl cosets");
  o.require(isomorphic(incidence_graph(*r), incidence_graph(*pgl2)), "diagram isomorphic to PGL2");
  o.notes.push_back(std::to_string(members) + " coset points merged into " + std::to_string(recs.size()) + " orbits");
  return o;
}

Outcome pgl2() {
  Outcome o;
  auto r = load("pgl2.yaml");
  const OrbitSpace& s = r->orbits();
  o.require(r->hasse().frames.size() == 2, "two Cartan classes");
  o.require(s.records().size() == 3, "three orbits");
  for (std::size_t k = 0; k < s.records().size(); ++k) {
    if (!s.records()[k].closed) continue;
    o.require(s.records()[k].codim == 1, "closed orbit has codimension one");
    o.require(r->classes()[k].polarizability.verdict == Polarizability::polarizable, "closed orbit polarizable");
    o.require(r->classes()[k].cuspidality.cuspidal, "closed orbit cuspidal");
  }
  return o;
}

Outcome siegel_vs_carayol() {
  Outcome o;
  auto a = load("psp4_siegel.yaml");
  auto b = load("carayol.yaml");
  o.require(isomorphic(incidence_graph(*a), incidence_graph(*b)), "codimension-labelled incidence graphs isomorphic");
  o.notes.push_back(std::to_string(a->orbits().records().size()) + " orbits each");
  return o;
}

Outcome psp4_complete() {
  Outcome o;
  auto r = load("psp4_complete.yaml");
  const OrbitSpace& s = r->orbits();
  const auto& cls = r->classes();
  std::size_t zero_boundary = 0, codim1 = 0;
  for (std::size_t k = 0; k < s.records().size(); ++k) {
    const auto& rec = s.records()[k];
    if (rec.codim == 3 && rec.boundary && rec.hpq.dim(-1, -1) == 0) {
      ++zero_boundary;
      o.require(cls[k].polarizability.verdict == Polarizability::not_polarizable, rec.label + " flagged not polarizable");
    }
    if (rec.codim == 1) {
      ++codim1;
      o.require(cls[k].polarizability.verdict == Polarizability::polarizable, rec.label + " polarizable");
      o.require(cls[k].cuspidality.cuspidal, rec.label + " cuspidal");
    }
  }
  o.require(zero_boundary >= 1, "a codimension-three boundary stratum with g^{-1,-1} = 0");
  o.require(codim1 >= 1, "codimension-one strata exist");
  o.notes.push_back(std::to_string(zero_boundary) + " codim-3 boundary strata with g^{-1,-1} = 0; " + std::to_string(codim1) +
                    " codim-1 strata");
  return o;
}

Outcome split_g2() {
  Outcome o;
  auto c2 = load("psp4_complete.yaml");
  constexpr std::size_t kGoldenCompleteFlagOrbits = 10;
  for (const char* name : {"g2_complete.yaml", "g2_short.yaml", "g2_long.yaml"}) {
    auto r = load(name);
    std::string n(name);
    o.require(r->hasse().frames.size() == 4, n + ": four Cartan classes");
    o.require(isomorphic(cartan_graph(r->hasse()), cartan_graph(c2->hasse())), n + ": Cartan graph shaped as PSp4's");
    const OrbitSpace& s = r->orbits();
    o.require(s.real_weyl_complete(), n + ": real Weyl groups complete");
    if (s.complete_flag()) {
      std::size_t cosets = 0;
      for (std::size_t j = 0; j < r->hasse().frames.size(); ++j) cosets += s.cosets(j).reps.size();
      o.require(cosets == s.records().size(), n + ": orbit count equals the double-coset sum");
      o.require(s.records().size() == kGoldenCompleteFlagOrbits, n + ": golden orbit count");
      o.notes.push_back("complete flag: " + std::to_string(s.records().size()) + " orbits = sum of double cosets");
    }
    for (const auto& rec : s.records()) {
      if (!rec.closed) continue;
      o.require(rec.hodge_tate, n + ": closed orbit Hodge-Tate");
      o.require(rec.codim == static_cast<long>(complex_dimension(r->real_form())), n + ": closed orbit codimension = dim");
    }
  }
  return o;
}

Outcome sp6() {
  Outcome o;
  auto r = load("sp6_siegel.yaml");
  LimitResult lim = r->limit();
  const auto& recs = r->orbits().records();
  o.require(lim.levi_type == "A2", "centralizer of the neutral element is A2");
  o.require(lim.target_orbit.has_value() && recs[*lim.target_orbit].closed, "naive limit lies in the closed orbit");
  for (std::size_t k = 0; k < recs.size(); ++k) {
    if (!recs[k].closed) continue;
    const auto& c = r->classes()[k].cuspidality;
    o.require(!c.cuspidal, "closed orbit not cuspidal");
    o.require(c.levi_type == "A2", "closed orbit Levi A2");
  }
  o.notes.push_back(std::string("limiting data ") + (lim.polarization_problem ? "not polarized (" + *lim.polarization_problem + ")" : "polarized"));
  return o;
}

Outcome carayol_witness() {
  Outcome o;
  auto r = load("carayol.yaml");
  const OrbitSpace& s = r->orbits();
  const LieAlgebra& la = r->real_form().algebra();
  for (std::size_t k = 0; k < s.records().size(); ++k) {
    const auto& rec = s.records()[k];
    if (!rec.closed) continue;
    const auto& p = r->classes()[k].polarizability;
    o.require(p.witness.has_value(), "witness found");
    if (!p.witness) break;
    const CartanFrame& f = r->hasse().frames[rec.frame];
    std::vector<std::size_t> roots;
    for (std::size_t b = la.rank(); b < la.dim(); ++b) {
      if (!(*p.witness)[b].is_zero()) roots.push_back(la.root_of_index(b));
    }
    bool cartan_free = std::all_of(p.witness->begin(), p.witness->begin() + static_cast<long>(la.rank()),
                                   [](const Cyclo8& c) { return c.is_zero(); });
    o.require(roots.size() >= 2, "witness is not a multiple of one root vector");
    o.require(cartan_free, "witness has no Cartan part");
    o.require(roots.size() == 2 && f.types[roots[0]] == RootType::complex && f.tau[roots[0]] == roots[1],
              "support is a conjugate pair of complex roots");
    o.notes.push_back("N = " + describe_vector(la, *p.witness));
  }
  return o;
}

Outcome properties() {
  Outcome o;
  std::mt19937 rng(909);
  // Field axioms.
  for (int t = 0; t < 250; ++t) {
    Cyclo8 a = random_cyclo(rng), b = random_cyclo(rng), c = random_cyclo(rng);
    bool ok = (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && a * b == b * a && (a + b) - b == a;
    if (!a.is_zero()) ok = ok && (a * a.inverse()).is_one();
    o.require(ok, "field axioms");
    if (!ok) break;
  }
  // Jacobi identity on all basis pairs, and Cayley transforms.
  for (const char* t : {"A1", "A2", "B2", "C2", "G2", "C3"}) {
    auto la = LieAlgebra::build(RootSystem::build(t));
    std::size_t n = la->dim(), r = la->rank();
    bool jacobi = true;
    for (std::size_t a = 0; a < n && jacobi; ++a) {
      for (std::size_t b = 0; b < n && jacobi; ++b) {
        Mat lhs = la->ad(la->bracket(unit_vec(n, a), unit_vec(n, b)));
        jacobi = lhs == la->ad_basis(a) * la->ad_basis(b) - la->ad_basis(b) * la->ad_basis(a);
      }
    }
    o.require(jacobi, std::string("Jacobi identity in ") + t);
    if (std::string(t) == "C3") continue;
    for (std::size_t a = 0; a < la->roots().num_positive(); ++a) {
      Mat c = la->cayley_matrix(a), ci = la->cayley_matrix_inverse(a, 1, 1);
      Mat c8 = Mat::identity(n);
      for (int k = 0; k < 8; ++k) c8 = c8 * c;
      bool ok = c8.is_identity() && c.transpose() * la->killing() * c == la->killing();
      for (std::size_t b = 0; b < n && ok; ++b) ok = c * la->ad_basis(b) * ci == la->ad(c.column(b));
      Mat c2 = c * c;
      const auto& s = la->weyl()[la->weyl().reflection(a)].on_coroots;
      for (std::size_t i = 0; i < r && ok; ++i) {
        for (std::size_t j = 0; j < r && ok; ++j) ok = c2(i, j) == Cyclo8(s[i][j]);
      }
      o.require(ok, std::string("Cayley transform properties in ") + t);
    }
  }
  // Bigrading symmetry, Killing pairing and codimension constancy over all flag points.
  std::size_t points = 0;
  for (const char* name : {"carayol.yaml", "psp4_complete.yaml", "g2_complete.yaml", "sp6_siegel.yaml"}) {
    auto r = load(name);
    const OrbitSpace& s = r->orbits();
    const LieAlgebra& la = r->real_form().algebra();
    for (std::size_t j = 0; j < r->hasse().frames.size(); ++j) {
      const Mat& m = r->hasse().frames[j].m;
      for (std::size_t w = 0; w < la.weyl().size(); ++w) {
        ++points;
        Bigraded g = pieces_of(s, j, w);
        bool ok = true;
        for (const auto& [pq, sp] : g) {
          auto mirror = g.find({pq.second, pq.first});
          auto dual = g.find({-pq.first, -pq.second});
          ok = ok && mirror != g.end() && sp.anti_image(m) == mirror->second && dual != g.end();
          if (!ok) break;
          auto bs = sp.basis(), bd = dual->second.basis();
          Mat pairing(bs.size(), bd.size());
          for (std::size_t x = 0; x < bs.size(); ++x) {
            for (std::size_t y = 0; y < bd.size(); ++y) pairing(x, y) = la.killing(bs[x], bd[y]);
          }
          ok = pairing.rank() == bs.size();
        }
        o.require(ok, std::string(name) + ": bigrading symmetry and Killing pairing");
        std::size_t rep = s.cosets(j).reps[s.cosets(j).coset_of[w]];
        o.require(s.flag_point(j, rep).codimension() == s.flag_point(j, w).codimension(),
                  std::string(name) + ": codimension constant on double cosets");
      }
    }
    // Witnesses: orbit test (checked inside classification), dimension formula, flip and upside-down identity.
    for (std::size_t k = 0; k < s.records().size(); ++k) {
      const auto& c = r->classes()[k];
      if (!c.polarizability.witness) continue;
      o.require(c.witness_consistent, std::string(name) + ": witness passes the nilpotent-orbit test");
      if (vec_is_zero(*c.polarizability.witness)) continue;
      o.require(c.dimensions && c.dimensions->orbit_formula_holds, std::string(name) + ": dim O = 2d - c");
      const auto& rec = s.records()[k];
      const Mat& m = r->hasse().frames[rec.frame].m;
      StratumLimit lim = limit_from_stratum(la, m, s.flag_point(rec.frame, rec.rep), *c.polarizability.witness);
      WeightFiltration w = weight_filtration(la, lim.n);
      MixedFlagData mixed = deligne_bigrading(lim.f_tilde, w, m);
      NaiveLimit nl = naive_limit(mixed);
      o.require(flip(flip(mixed.h)) == mixed.h && dims(nl.g) == flip(mixed.h), std::string(name) + ": flip involution");
      WeightFiltration ud = upside_down_filtration(nl.f, m);
      bool same = true;
      for (long j = -12; j <= 12; ++j) same = same && ud.at(j) == w.at(j);
      o.require(same, std::string(name) + ": upside-down filtration equals W(N)");
    }
  }
  o.require(points >= 200, "at least 200 flag points");
  // Weight filtrations of random nilpotents, re-verified by rank conditions.
  std::size_t nilpotents = 0;
  for (const char* t : {"A2", "C2", "G2", "C3"}) {
    auto la = LieAlgebra::build(RootSystem::build(t));
    const RootSystem& rs = la->roots();
    std::uniform_int_distribution<std::size_t> pick(0, rs.num_positive() - 1);
    std::uniform_int_distribution<long> num(1, 4), den(1, 3), sign(0, 1);
    for (int trial = 0; trial < 60; ++trial) {
      Vec n(la->dim());
      for (int k = 0; k < 3; ++k) {
        mpq_class q(num(rng) * (sign(rng) ? 1 : -1), den(rng));
        n[la->x_index(rs.negative(pick(rng)))] += Cyclo8(q);
      }
      if (vec_is_zero(n)) continue;
      ++nilpotents;
      o.require(!weight_filtration_failure(*la, n, weight_filtration(*la, n)), std::string("weight filtration in ") + t);
    }
  }
  o.require(nilpotents >= 200, "at least 200 random nilpotents");
  o.notes.push_back(std::to_string(points) + " flag points, " + std::to_string(nilpotents) + " nilpotents");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_config_dir = argv[1];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"SU(2,1) complete flag: orbits, Hodge numbers, incidences", carayol},
      {"SU(2,1) on P2: merged orbits, PGL2-shaped diagram", ball},
      {"PGL2: Cartans, orbits, closed orbit", pgl2},
      {"PSp4 Lagrangian Grassmannian matches SU(2,1) complete flag", siegel_vs_carayol},
      {"PSp4 complete flag: non-polarizable and codimension-one strata", psp4_complete},
      {"split G2 in three gradings", split_g2},
      {"Sp6 Lagrangian Grassmannian: non-cuspidal closed orbit", sp6},
      {"SU(2,1) closed orbit: witness is not a root vector", carayol_witness},
      {"property suites", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first;
    for (const auto& n : o.notes) line << " | " << n;
    std::cout << line.str() << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
