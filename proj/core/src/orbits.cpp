#include "strataforge/orbits.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace strataforge {

std::string to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::cayley: return "cayley";
    case EdgeKind::cross: return "cross";
    case EdgeKind::wolf_closed: return "wolf_closed";
  }
  return "?";
}

std::size_t Bigrading::dim(long p, long q) const {
  auto it = dims.find({p, q});
  return it == dims.end() ? 0 : it->second;
}

std::size_t Bigrading::total() const {
  std::size_t s = 0;
  for (const auto& [k, v] : dims) s += v;
  return s;
}

Bigrading FlagPoint::bigrading() const {
  Bigrading b;
  b.dims[{0, 0}] = cartan_dim;
  for (std::size_t a = 0; a < p.size(); ++a) {
    b.dims[{p[a], q[a]}] += 1;
    b.roots[{p[a], q[a]}].push_back(a);
  }
  return b;
}

long FlagPoint::codimension() const {
  long c = 0;
  for (std::size_t a = 0; a < p.size(); ++a) c += (p[a] > 0 && q[a] > 0) ? 1 : 0;
  return c;
}

std::vector<std::size_t> FlagPoint::filtration_indices(long a, std::size_t rank) const {
  std::vector<std::size_t> idx;
  if (a <= 0) {
    for (std::size_t i = 0; i < rank; ++i) idx.push_back(i);
  }
  for (std::size_t r = 0; r < p.size(); ++r) {
    if (p[r] >= a) idx.push_back(rank + r);
  }
  return idx;
}

std::vector<std::size_t> FlagPoint::piece_indices(long a, long b, std::size_t rank) const {
  std::vector<std::size_t> idx;
  if (a == 0 && b == 0) {
    for (std::size_t i = 0; i < rank; ++i) idx.push_back(i);
  }
  for (std::size_t r = 0; r < p.size(); ++r) {
    if (p[r] == a && q[r] == b) idx.push_back(rank + r);
  }
  return idx;
}

Subgroup admissible_elements(const RealForm& rf, const CartanFrame& f) {
  const WeylGroup& w = rf.algebra().weyl();
  std::size_t nr = rf.algebra().roots().size();
  Subgroup out;
  for (std::size_t x = 0; x < w.size(); ++x) {
    const auto& perm = w[x].perm;
    bool ok = true;
    for (std::size_t a = 0; a < nr && ok; ++a) {
      ok = perm[f.tau[a]] == f.tau[perm[a]] && f.types[perm[a]] == f.types[a];
    }
    if (ok) out.push_back(x);
  }
  return out;
}

namespace {

std::vector<mpq_class> solve_cocharacter(const RootSystem& rs, const GradingDatum& g) {
  std::size_t r = rs.rank();
  Mat a(r, r);
  Vec b(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) a(i, j) = rs.cartan()[i][j];
    b[i] = g.values[i];
  }
  auto x = a.solve(b);
  if (!x) throw ConsistencyError("Cartan matrix is singular");
  std::vector<mpq_class> out(r);
  for (std::size_t i = 0; i < r; ++i) out[i] = (*x)[i].real_rational_part();
  return out;
}

long to_integer(const mpq_class& q, const char* what) {
  if (q.get_den() != 1) throw ConsistencyError(std::string("non-integral grading value for ") + what);
  return q.get_num().get_si();
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

std::vector<Mat> OrbitSpace::compact_lifts() const {
  const LieAlgebra& la = rf_->algebra();
  const RootSystem& rs = la.roots();
  const CartanFrame& f0 = hasse_->frames[0];
  std::vector<Mat> gens, eighths;
  for (std::size_t a = 0; a < rs.num_positive(); ++a) {
    if (f0.types[a] != RootType::compact_imaginary) continue;
    Vec z(la.dim());
    z[la.x_index(rs.negative(a))] = 1;
    z[la.x_index(a)] = -1;
    // exp(pi/2 ad(X_{-a} - X_a)), a representative of the reflection inside K.
    gens.push_back(spectral_exp(la.ad(z), Cyclo8::i(), 2));
    // The eighth turn relates Cayley chains through strongly orthogonal pairs
    // {a + b, a - b} and {2a', 2b'} (long versus short routes).
    eighths.push_back(spectral_exp(la.ad(z), Cyclo8::i(), 1));
  }
  std::vector<Mat> group{Mat::identity(la.dim())};
  for (std::size_t head = 0; head < group.size(); ++head) {
    for (const auto& g : gens) {
      Mat x = group[head] * g;
      if (std::find(group.begin(), group.end(), x) == group.end()) group.push_back(std::move(x));
    }
    if (group.size() > 4096) break;
  }
  std::size_t lifts = group.size();
  for (const auto& e : eighths) {
    for (std::size_t k = 0; k < lifts; ++k) group.push_back(group[k] * e);
  }
  return group;
}

std::vector<std::vector<long>> OrbitSpace::torus_exponents() const {
  const RootSystem& rs = rf_->algebra().roots();
  std::size_t r = rs.rank();
  std::set<std::vector<long>> seen;
  std::vector<std::vector<long>> out;
  std::vector<long> m(r, 0);
  for (;;) {
    // Values of the simple roots, mod 8, at sum_k m_k H_k.
    std::vector<long> s(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t k = 0; k < r; ++k) s[i] += m[k] * rs.cartan()[i][k];
      s[i] = ((s[i] % 8) + 8) % 8;
    }
    if (seen.insert(s).second) out.push_back(s);
    std::size_t k = 0;
    while (k < r && ++m[k] == 8) m[k++] = 0;
    if (k == r) break;
  }
  return out;
}

namespace {

// Looks for g = n t in K, with n a lift of a compact Weyl element (possibly followed
// by an eighth turn in one compact root) and t of order 8,
// such that c_inv_to g c_from preserves the Cartan; reports each induced Weyl element.
void search_normalizing(const LieAlgebra& la, const std::vector<Mat>& lifts, const std::vector<std::vector<long>>& torus,
                        const Mat& c_from, const Mat& c_inv_to, std::size_t cap,
                        const std::function<bool(std::size_t)>& on_found) {
  const RootSystem& rs = la.roots();
  std::size_t n = la.dim(), r = la.rank();
  std::vector<std::vector<long>> root_exp(torus.size(), std::vector<long>(rs.size()));
  for (std::size_t t = 0; t < torus.size(); ++t) {
    for (std::size_t a = 0; a < rs.size(); ++a) {
      long e = 0;
      for (std::size_t i = 0; i < r; ++i) e += rs.root(a)[i] * torus[t][i];
      root_exp[t][a] = ((e % 8) + 8) % 8;
    }
  }
  std::vector<Cyclo8> zpow(8);
  for (long k = 0; k < 8; ++k) zpow[k] = Cyclo8::zeta_pow(k);
  std::size_t examined = 0;
  std::set<std::size_t> reported;
  for (const Mat& lift : lifts) {
    Mat p = c_inv_to * lift;
    for (std::size_t t = 0; t < torus.size(); ++t) {
      if (++examined > cap) return;
      auto scale = [&](std::size_t b) -> const Cyclo8& {
        static const Cyclo8 one(1);
        return b < r ? one : zpow[root_exp[t][b - r]];
      };
      auto entry = [&](std::size_t row, std::size_t col) {
        Cyclo8 s;
        for (std::size_t b = 0; b < n; ++b) {
          if (p(row, b).is_zero() || c_from(b, col).is_zero()) continue;
          s += p(row, b) * scale(b) * c_from(b, col);
        }
        return s;
      };
      bool ok = true;
      for (std::size_t row = r; row < n && ok; ++row) {
        for (std::size_t col = 0; col < r && ok; ++col) ok = entry(row, col).is_zero();
      }
      if (!ok) continue;
      IntMat m(r, IntVec(r));
      for (std::size_t row = 0; row < r && ok; ++row) {
        for (std::size_t col = 0; col < r && ok; ++col) {
          Cyclo8 v = entry(row, col);
          ok = v.is_rational() && v.real_rational_part().get_den() == 1;
          if (ok) m[row][col] = v.real_rational_part().get_num().get_si();
        }
      }
      if (!ok) throw ConsistencyError("normalizing element acts non-integrally on coroots");
      auto w = la.weyl().find_by_coroot_matrix(m);
      if (!w) throw ConsistencyError("normalizing element induces no Weyl group element");
      if (reported.insert(*w).second && on_found(*w)) return;
    }
  }
}

}  // namespace

OrbitSpace::OrbitSpace(const RealForm& rf, const CartanHasse& hasse, const OrbitOptions& opts)
    : rf_(&rf), hasse_(&hasse), search_cap_(opts.search_cap) {
  const LieAlgebra& la = rf.algebra();
  const RootSystem& rs = la.roots();
  const WeylGroup& w = la.weyl();
  xi0_ = solve_cocharacter(rs, rf.grading());
  std::vector<std::size_t> gens;
  for (std::size_t a = 0; a < rs.num_positive(); ++a) {
    if (rf.grading_value(a) == 0) gens.push_back(w.reflection(a));
  }
  stab_ = generate_subgroup(w, gens);
  lifts_ = compact_lifts();
  torus_ = torus_exponents();
  for (const auto& fx : opts.fixtures) {
    if (fx.frame >= hasse.frames.size()) {
      throw std::invalid_argument("fixture names frame " + std::to_string(fx.frame) + " but only " +
                                  std::to_string(hasse.frames.size()) + " Cartan classes exist");
    }
  }
  compute_real_weyl(opts);
  enumerate();
  merge_and_label();
  build_edges();
  classify();
}

void OrbitSpace::compute_real_weyl(const OrbitOptions& opts) {
  const LieAlgebra& la = rf_->algebra();
  const RootSystem& rs = la.roots();
  const WeylGroup& w = la.weyl();
  rw_.resize(hasse_->frames.size());
  for (std::size_t j = 0; j < hasse_->frames.size(); ++j) {
    const CartanFrame& f = hasse_->frames[j];
    RealWeylGroup& g = rw_[j];
    for (std::size_t a = 0; a < rs.num_positive(); ++a) {
      if (f.types[a] == RootType::real || f.types[a] == RootType::compact_imaginary) g.generators.push_back(w.reflection(a));
    }
    g.admissible = admissible_elements(*rf_, f);
    std::vector<const RealWeylFixture*> fixtures;
    for (const auto& fx : opts.fixtures) {
      if (fx.frame != j) continue;
      fixtures.push_back(&fx);
      for (const auto& word : fx.generators) {
        std::size_t x = w.parse_word(word);
        if (!subgroup_contains(g.admissible, x)) {
          throw std::invalid_argument("fixture generator '" + word + "' for frame " + std::to_string(j) +
                                      " does not respect the real structure");
        }
        g.generators.push_back(x);
      }
    }
    g.group = generate_subgroup(w, g.generators);
    for (auto x : g.group) {
      if (!subgroup_contains(g.admissible, x)) throw ConsistencyError("real Weyl group leaves the admissible set");
    }
    bool compact = f.real_rank == 0;
    bool split = f.count(RootType::real) == rs.size();
    if (!compact && !split && g.group != g.admissible) {
      search_normalizing(la, lifts_, torus_, f.c, f.c_inv, search_cap_, [&](std::size_t x) {
        g.found.push_back(x);
        if (!subgroup_contains(g.group, x)) {
          g.generators.push_back(x);
          g.group = generate_subgroup(w, g.generators);
        }
        return g.group == g.admissible;
      });
    }
    if (compact) {
      g.complete = true;
      g.reason = "compact Cartan: generated by compact reflections";
    } else if (split) {
      g.complete = true;
      g.reason = "split Cartan: generated by real reflections";
    } else if (g.group == g.admissible) {
      g.complete = true;
      g.reason = "equals the admissible upper bound";
    } else {
      g.reason = "lower bound from certified search";
    }
    for (const auto* fx : fixtures) {
      if (fx->expected_order) {
        if (*fx->expected_order == g.group.size()) {
          if (!g.complete) g.reason = "order matches fixture";
          g.complete = true;
        } else {
          g.complete = false;
          g.reason = "order " + std::to_string(g.group.size()) + " differs from fixture " +
                     std::to_string(*fx->expected_order);
        }
      }
    }
  }
  dc_.resize(rw_.size());
  for (std::size_t j = 0; j < rw_.size(); ++j) {
    dc_[j] = double_cosets(w, rw_[j].group, stab_);
    for (const auto& fx : opts.fixtures) {
      if (fx.frame != j || !fx.expected_cosets) continue;
      if (*fx.expected_cosets == dc_[j].reps.size()) {
        if (!rw_[j].complete) rw_[j].reason = "coset count matches fixture";
        rw_[j].complete = true;
      } else {
        rw_[j].complete = false;
        rw_[j].reason = "coset count differs from fixture";
      }
    }
  }
}

FlagPoint OrbitSpace::flag_point(std::size_t frame, std::size_t w) const {
  const LieAlgebra& la = rf_->algebra();
  const RootSystem& rs = la.roots();
  const CartanFrame& f = hasse_->frames.at(frame);
  std::size_t r = rs.rank();
  std::vector<mpq_class> xi = la.weyl().act_coweight(w, xi0_);
  std::vector<mpq_class> txi(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) txi[i] += f.tau_h[i][j] * xi[j];
  }
  FlagPoint fp;
  fp.frame = frame;
  fp.w = w;
  fp.cartan_dim = r;
  fp.p.resize(rs.size());
  fp.q.resize(rs.size());
  for (std::size_t a = 0; a < rs.size(); ++a) {
    fp.p[a] = to_integer(rs.evaluate(a, xi), "the cocharacter");
    fp.q[a] = to_integer(rs.evaluate(a, txi), "the conjugate cocharacter");
  }
  return fp;
}

std::vector<Subspace> OrbitSpace::flag(std::size_t frame, std::size_t w) const {
  FlagPoint fp = flag_point(frame, w);
  const CartanFrame& f = hasse_->frames[frame];
  std::size_t n = rf_->algebra().dim(), r = rf_->algebra().rank();
  long top = *std::max_element(fp.p.begin(), fp.p.end());
  long bottom = *std::min_element(fp.p.begin(), fp.p.end());
  std::vector<Subspace> out;
  for (long a = top; a > bottom; --a) {
    std::vector<Vec> cols;
    for (auto k : fp.filtration_indices(a, r)) cols.push_back(f.c.column(k));
    out.push_back(Subspace::span(cols, n));
  }
  return out;
}

void OrbitSpace::enumerate() {
  record_of_.resize(dc_.size());
  for (std::size_t j = 0; j < dc_.size(); ++j) {
    record_of_[j].resize(dc_[j].reps.size());
    // Codimension and h^{p,q} must not depend on the coset member.
    for (std::size_t x = 0; x < dc_[j].coset_of.size(); ++x) {
      std::size_t rep = dc_[j].reps[dc_[j].coset_of[x]];
      if (x == rep) continue;
      if (flag_point(j, x).bigrading().dims != flag_point(j, rep).bigrading().dims) {
        throw ConsistencyError("bigrading varies inside a double coset");
      }
    }
  }
}

const OrbitSpace::RawCayley& OrbitSpace::raw_cayley(std::size_t frame, std::size_t alpha) const {
  auto key = std::make_pair(frame, alpha);
  auto it = raw_cache_.find(key);
  if (it != raw_cache_.end()) return it->second;
  const LieAlgebra& la = rf_->algebra();
  const WeylGroup& wg = la.weyl();
  std::size_t nr = la.roots().size();
  RawCayley rc;
  CartanFrame raw = cayley(*rf_, hasse_->frames[frame], alpha);
  rc.target_frame = hasse_->class_of(frame_signature(*rf_, raw));
  const CartanFrame& fk = hasse_->frames[rc.target_frame];
  for (std::size_t v = 0; v < wg.size(); ++v) {
    const auto& perm = wg[v].perm;
    bool ok = true;
    for (std::size_t a = 0; a < nr && ok; ++a) {
      ok = perm[raw.tau[a]] == fk.tau[perm[a]] && fk.types[perm[a]] == raw.types[a];
    }
    if (ok) rc.candidates.push_back(v);
  }
  if (rc.candidates.empty()) throw ConsistencyError("no Weyl element matches Cartan frames of one class");
  // The realized element, if any, does not depend on the flag; search once.
  search_normalizing(la, lifts_, torus_, raw.c, fk.c_inv, search_cap_, [&](std::size_t v) {
    rc.realized = v;
    return true;
  });
  if (rc.realized && !std::binary_search(rc.candidates.begin(), rc.candidates.end(), *rc.realized)) {
    throw ConsistencyError("realized Weyl element is not admissible");
  }
  return raw_cache_.emplace(key, std::move(rc)).first->second;
}

std::pair<std::size_t, bool> OrbitSpace::raw_cayley_target(std::size_t frame, std::size_t w, std::size_t alpha) const {
  const WeylGroup& wg = rf_->algebra().weyl();
  const RawCayley& rc = raw_cayley(frame, alpha);
  std::size_t k = rc.target_frame;
  std::size_t base = 0;
  for (std::size_t j = 0; j < k; ++j) base += dc_[j].reps.size();
  if (rc.realized) return {base + dc_[k].coset_of[wg.mul(*rc.realized, w)], true};
  std::set<std::size_t> targets;
  for (auto v : rc.candidates) targets.insert(dc_[k].coset_of[wg.mul(v, w)]);
  if (targets.size() == 1) return {base + *targets.begin(), true};
  return {base + dc_[k].coset_of[wg.mul(rc.candidates.front(), w)], false};
}

void OrbitSpace::merge_and_label() {
  const LieAlgebra& la = rf_->algebra();
  const RootSystem& rs = la.roots();
  const WeylGroup& wg = la.weyl();
  std::vector<std::pair<std::size_t, std::size_t>> prelim;  // (frame, coset)
  for (std::size_t j = 0; j < dc_.size(); ++j) {
    for (std::size_t c = 0; c < dc_[j].reps.size(); ++c) prelim.push_back({j, c});
  }
  auto prelim_index = [&](std::size_t j, std::size_t c) {
    std::size_t base = 0;
    for (std::size_t i = 0; i < j; ++i) base += dc_[i].reps.size();
    return base + c;
  };
  UnionFind uf(prelim.size());
  if (!complete_flag()) {
    // Identical flags are the same point, hence the same orbit.
    std::map<std::string, std::size_t> seen;
    for (std::size_t j = 0; j < dc_.size(); ++j) {
      std::vector<bool> done(wg.size(), false);
      for (std::size_t x = 0; x < wg.size(); ++x) {
        if (done[x]) continue;
        for (auto s : stab_) done[wg.mul(x, s)] = true;
        std::string key;
        for (const auto& sub : flag(j, x)) key += sub.key() + "/";
        std::size_t id = prelim_index(j, dc_[j].coset_of[x]);
        auto [it, fresh] = seen.emplace(key, id);
        if (!fresh) uf.unite(it->second, id);
      }
    }
  }
  // A certified Cayley image lies in the closure; equal codimension forces equality.
  std::vector<long> codim(prelim.size());
  for (std::size_t i = 0; i < prelim.size(); ++i) {
    auto [j, c] = prelim[i];
    codim[i] = flag_point(j, dc_[j].reps[c]).codimension();
  }
  for (std::size_t i = 0; i < prelim.size(); ++i) {
    auto [j, c] = prelim[i];
    const CartanFrame& f = hasse_->frames[j];
    for (std::size_t a = 0; a < rs.num_positive(); ++a) {
      if (f.types[a] != RootType::noncompact_imaginary) continue;
      auto [t, certified] = raw_cayley_target(j, dc_[j].reps[c], a);
      if (certified && codim[t] == codim[i]) uf.unite(i, t);
      if (certified && codim[t] < codim[i]) throw ConsistencyError("Cayley image has smaller codimension");
    }
  }
  std::map<std::size_t, std::size_t> root_to_record;
  std::vector<std::size_t> prelim_record(prelim.size());
  for (std::size_t i = 0; i < prelim.size(); ++i) {
    std::size_t root = uf.find(i);
    auto it = root_to_record.find(root);
    if (it == root_to_record.end()) {
      auto [j, c] = prelim[i];
      OrbitRecord rec;
      rec.frame = j;
      rec.rep = dc_[j].reps[c];
      rec.label = "o" + std::to_string(j) + "{" + wg[rec.rep].word_string() + "}";
      FlagPoint fp = flag_point(j, rec.rep);
      rec.codim = fp.codimension();
      rec.hpq = fp.bigrading();
      it = root_to_record.emplace(root, records_.size()).first;
      records_.push_back(std::move(rec));
    }
    OrbitRecord& rec = records_[it->second];
    auto [j, c] = prelim[i];
    rec.members.push_back({j, dc_[j].reps[c]});
    if (codim[i] != rec.codim) throw ConsistencyError("merged orbits disagree on codimension");
    prelim_record[i] = it->second;
  }
  for (std::size_t j = 0; j < dc_.size(); ++j) {
    for (std::size_t c = 0; c < dc_[j].reps.size(); ++c) record_of_[j][c] = prelim_record[prelim_index(j, c)];
  }
}

std::size_t OrbitSpace::orbit_of(std::size_t frame, std::size_t w) const {
  return record_of_.at(frame).at(dc_.at(frame).coset_of.at(w));
}

std::pair<std::size_t, bool> OrbitSpace::cayley_target(std::size_t frame, std::size_t w, std::size_t alpha) const {
  auto [t, certified] = raw_cayley_target(frame, w, alpha);
  for (std::size_t j = 0; j < dc_.size(); ++j) {
    if (t < dc_[j].reps.size()) return {record_of_[j][t], certified};
    t -= dc_[j].reps.size();
  }
  throw ConsistencyError("Cayley target out of range");
}

std::size_t OrbitSpace::find_label(const std::string& label) const {
  for (std::size_t k = 0; k < records_.size(); ++k) {
    if (records_[k].label == label) return k;
  }
  throw std::invalid_argument("unknown orbit label '" + label + "'");
}

void OrbitSpace::build_edges() {
  const LieAlgebra& la = rf_->algebra();
  const RootSystem& rs = la.roots();
  const WeylGroup& wg = la.weyl();
  std::set<std::tuple<std::size_t, std::size_t, int>> seen;
  auto add = [&](std::size_t a, std::size_t b, EdgeKind kind, std::optional<std::size_t> root, bool certified) {
    if (a == b) return;
    if (records_[a].codim > records_[b].codim) std::swap(a, b);
    if (records_[a].codim == records_[b].codim && a > b) std::swap(a, b);
    if (!seen.insert({a, b, static_cast<int>(kind)}).second) {
      // Keep the certified version of a repeated edge.
      if (certified) {
        for (auto& e : edges_) {
          if (e.from == a && e.to == b && e.kind == kind) e.certified = true;
        }
      }
      return;
    }
    edges_.push_back({a, b, kind, root, certified});
  };
  for (std::size_t j = 0; j < dc_.size(); ++j) {
    const CartanFrame& f = hasse_->frames[j];
    for (std::size_t c = 0; c < dc_[j].reps.size(); ++c) {
      std::size_t w = dc_[j].reps[c];
      std::size_t from = record_of_[j][c];
      long cf = flag_point(j, w).codimension();
      for (std::size_t a = 0; a < rs.num_positive(); ++a) {
        if (f.types[a] == RootType::noncompact_imaginary) {
          auto [to, certified] = cayley_target(j, w, a);
          add(from, to, EdgeKind::cayley, a, certified);
        } else if (f.types[a] == RootType::complex) {
          std::size_t x = wg.mul(wg.reflection(a), w);
          if (flag_point(j, x).codimension() > cf) add(from, orbit_of(j, x), EdgeKind::cross, a, true);
        }
      }
    }
  }
  long top = -1;
  for (const auto& r : records_) top = std::max(top, r.codim);
  std::vector<std::size_t> maximal;
  for (std::size_t k = 0; k < records_.size(); ++k) {
    if (records_[k].codim == top) maximal.push_back(k);
  }
  if (maximal.size() != 1) throw ConsistencyError("closed orbit is not unique");
  for (std::size_t k = 0; k < records_.size(); ++k) {
    bool linked = false;
    for (const auto& e : edges_) linked = linked || (e.from == k && e.to == maximal[0]);
    if (!linked) add(k, maximal[0], EdgeKind::wolf_closed, std::nullopt, true);
  }
  std::sort(edges_.begin(), edges_.end(), [](const OrbitEdge& x, const OrbitEdge& y) {
    return std::tie(x.from, x.to, x.kind) < std::tie(y.from, y.to, y.kind);
  });
}

void OrbitSpace::classify() {
  long top = -1;
  for (const auto& r : records_) top = std::max(top, r.codim);
  for (auto& r : records_) {
    r.open = r.codim == 0;
    r.closed = r.codim == top;
    r.hodge_tate = true;
    for (const auto& [pq, d] : r.hpq.dims) r.hodge_tate = r.hodge_tate && (d == 0 || pq.first == pq.second);
  }
  std::size_t base = base_orbit();
  std::vector<bool> reach(records_.size(), false);
  std::vector<std::size_t> stack{base};
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (const auto& e : edges_) {
      if (e.from == x && !reach[e.to]) {
        reach[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  for (std::size_t k = 0; k < records_.size(); ++k) records_[k].boundary = reach[k] && k != base;
}

bool OrbitSpace::real_weyl_complete() const {
  return std::all_of(rw_.begin(), rw_.end(), [](const RealWeylGroup& g) { return g.complete; });
}

std::size_t OrbitSpace::uncertain_edges() const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [](const OrbitEdge& e) { return !e.certified; }));
}

std::vector<Codim1Candidate> OrbitSpace::codim1_candidates(std::size_t open_orbit) const {
  if (!complete_flag()) throw std::invalid_argument("codimension-one candidates need a complete-flag grading");
  const OrbitRecord& rec = records_.at(open_orbit);
  if (!rec.open) throw std::invalid_argument("orbit " + rec.label + " is not open");
  const LieAlgebra& la = rf_->algebra();
  const RootSystem& rs = la.roots();
  const WeylGroup& wg = la.weyl();
  const CartanFrame& f0 = hasse_->frames[0];
  FlagPoint fp = flag_point(0, rec.rep);
  std::vector<Codim1Candidate> out;
  for (std::size_t a = 0; a < rs.size(); ++a) {
    if (f0.types[a] != RootType::noncompact_imaginary || fp.p[a] != 1) continue;
    auto [stratum, certified] = cayley_target(0, rec.rep, a);
    (void)certified;
    std::size_t across = orbit_of(0, wg.mul(wg.reflection(a), rec.rep));
    out.push_back({a, stratum, across});
  }
  return out;
}

}  // namespace strataforge
