#include "strataforge/hodge_limits.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace strataforge {

namespace {

Subspace zero_space(std::size_t n) { return Subspace(n); }

Subspace kernel(const Mat& a) { return Subspace::span(a.nullspace(), a.cols()); }

Mat power(const Mat& a, long k) {
  Mat out = Mat::identity(a.rows());
  for (long i = 0; i < k; ++i) out = out * a;
  return out;
}

// i^{-j} = zeta^{-2j}
Cyclo8 i_pow_neg(long j) { return Cyclo8::zeta_pow(-2 * j); }

// Gram matrix of (u, v) -> s B(u, A sigma(v)) on a basis.
Mat gram(const LieAlgebra& la, const Mat& sigma, const std::vector<Vec>& basis, const Mat& a, const Cyclo8& s) {
  std::size_t k = basis.size();
  Mat g(k, k);
  std::vector<Vec> images;
  for (const auto& v : basis) images.push_back(a * (sigma * vec_conj(v)));
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) g(x, y) = s * la.killing(basis[x], images[y]);
  }
  return g;
}

Subspace piece(const Bigraded& g, PQ pq, std::size_t n) {
  auto it = g.find(pq);
  return it == g.end() ? zero_space(n) : it->second;
}

WeightFiltration make_weight(std::size_t n, long lo, long hi, const std::function<Subspace(long)>& level) {
  WeightFiltration w;
  w.n = n;
  long first = hi + 1;
  for (long k = lo; k <= hi; ++k) {
    if (level(k).dim() > 0) {
      first = k;
      break;
    }
  }
  if (first > hi) {
    w.lo = 0;
    w.levels = {Subspace::whole(n)};
    return w;
  }
  w.lo = first;
  for (long k = first; k <= hi; ++k) {
    Subspace s = level(k);
    w.levels.push_back(s);
    if (s.dim() == n) break;
  }
  return w;
}

std::string pq_text(PQ pq) { return "(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")"; }

}  // namespace

Subspace Filtration::at(long a) const {
  if (a < lo) return Subspace::whole(n);
  if (a > hi()) return zero_space(n);
  return levels[static_cast<std::size_t>(a - lo)];
}

Subspace WeightFiltration::at(long k) const {
  if (k < lo) return zero_space(n);
  if (k > hi()) return Subspace::whole(n);
  return levels[static_cast<std::size_t>(k - lo)];
}

std::size_t WeightFiltration::gr_dim(long k) const { return at(k).dim() - at(k - 1).dim(); }

bool is_ad_nilpotent(const LieAlgebra& la, const Vec& n) {
  Mat a = la.ad(n);
  Mat p = a;
  for (std::size_t k = 1; k <= la.dim(); ++k) {
    if (p.is_zero()) return true;
    p = p * a;
  }
  return p.is_zero();
}

std::map<long, Subspace> ad_eigenspaces(const LieAlgebra& la, const Vec& y) {
  Mat a = la.ad(y);
  std::size_t n = la.dim();
  long top = 0;
  for (std::size_t k = 0; k < la.roots().num_positive(); ++k) top = std::max(top, la.roots().height(k));
  long bound = 2 * top + 2;
  std::map<long, Subspace> out;
  std::size_t total = 0;
  for (long m = -bound; m <= bound; ++m) {
    Subspace s = kernel(a - Mat::identity(n).scaled(Cyclo8(m)));
    if (s.dim() == 0) continue;
    total += s.dim();
    out.emplace(m, s);
  }
  if (total != n) throw ConsistencyError("ad(Y) is not diagonalizable with integer spectrum");
  return out;
}

Sl2Triple jm_triple(const LieAlgebra& la, const Vec& n) {
  if (vec_is_zero(n)) throw std::invalid_argument("jm_triple: N is zero");
  if (!is_ad_nilpotent(la, n)) throw std::invalid_argument("jm_triple: ad(N) is not nilpotent");
  std::size_t dim = la.dim(), r = la.rank();
  Mat an = la.ad(n);
  Vec two_n = vec_scale(n, Cyclo8(2));
  auto finish = [&](const Vec& y, const Vec& f, bool cartan) -> std::optional<Sl2Triple> {
    if (la.bracket(y, n) != vec_scale(n, Cyclo8(-2))) return std::nullopt;
    if (la.bracket(y, f) != vec_scale(f, Cyclo8(2))) return std::nullopt;
    if (la.bracket(f, n) != y) return std::nullopt;
    return Sl2Triple{n, y, f, cartan};
  };
  // Solve [N+, N] = Y and [Y, N+] = 2 N+ for N+.
  auto complete = [&](const Vec& y) -> std::optional<Vec> {
    Mat ay = la.ad(y);
    Mat sys(2 * dim, dim);
    Vec rhs(2 * dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        sys(i, j) = ay(i, j) - (i == j ? Cyclo8(2) : Cyclo8(0));
        sys(dim + i, j) = an(i, j);
      }
      rhs[dim + i] = -y[i];
    }
    return sys.solve(rhs);
  };
  // First try a neutral element inside the Cartan: ad(N) Y = 2N.
  {
    std::vector<std::size_t> hcols(r);
    std::vector<std::size_t> rows(dim);
    for (std::size_t i = 0; i < r; ++i) hcols[i] = i;
    for (std::size_t i = 0; i < dim; ++i) rows[i] = i;
    if (auto hy = an.sub(rows, hcols).solve(two_n)) {
      Vec y(dim);
      for (std::size_t i = 0; i < r; ++i) y[i] = (*hy)[i];
      if (auto f = complete(y)) {
        if (auto t = finish(y, *f, true)) return *t;
      }
    }
  }
  // General construction: h = [N, z] with [h, N] = 2N, then Morozov's lemma gives f.
  auto z = (an * an).solve(vec_scale(n, Cyclo8(-2)));
  if (!z) throw ConsistencyError("jm_triple: no neutral element found");
  Vec h = an * *z;
  Vec y = vec_scale(h, Cyclo8(-1));
  auto f = complete(y);
  if (!f) throw ConsistencyError("jm_triple: no completing element found");
  auto t = finish(y, *f, false);
  if (!t) throw ConsistencyError("jm_triple: bracket relations fail");
  return *t;
}

WeightFiltration weight_filtration(const LieAlgebra& la, const Vec& n) {
  std::size_t dim = la.dim();
  if (vec_is_zero(n)) {
    WeightFiltration w;
    w.n = dim;
    w.lo = 0;
    w.levels = {Subspace::whole(dim)};
    return w;
  }
  Sl2Triple t = jm_triple(la, n);
  auto eig = ad_eigenspaces(la, t.y);
  long lo = eig.begin()->first, hi = eig.rbegin()->first;
  WeightFiltration w;
  w.n = dim;
  w.lo = lo;
  Subspace acc = zero_space(dim);
  for (long k = lo; k <= hi; ++k) {
    auto it = eig.find(k);
    if (it != eig.end()) acc = acc + it->second;
    w.levels.push_back(acc);
  }
  return w;
}

std::optional<std::string> weight_filtration_failure(const LieAlgebra& la, const Vec& n, const WeightFiltration& w) {
  Mat a = la.ad(n);
  for (long l = w.lo - 2; l <= w.hi() + 2; ++l) {
    if (!w.at(l - 2).contains(w.at(l).image(a))) return "N W_" + std::to_string(l) + " is not inside W_" + std::to_string(l - 2);
  }
  long top = std::max(std::abs(w.lo), std::abs(w.hi()));
  Mat ak = Mat::identity(la.dim());
  for (long k = 0; k <= top; ++k) {
    if (w.gr_dim(k) != w.gr_dim(-k)) return "Gr_" + std::to_string(k) + " and Gr_" + std::to_string(-k) + " differ in dimension";
    if (w.at(k).image(ak) + w.at(-k - 1) != w.at(-k)) return "N^" + std::to_string(k) + " is not onto Gr_" + std::to_string(-k);
    ak = ak * a;
  }
  return std::nullopt;
}

Bigraded bigraded_pieces(const FlagPoint& fp, std::size_t n, std::size_t rank) {
  Bigraded g;
  g[{0, 0}] = Subspace::coordinate(fp.piece_indices(0, 0, rank), n);
  for (std::size_t a = 0; a < fp.p.size(); ++a) {
    PQ pq{fp.p[a], fp.q[a]};
    if (!g.count(pq)) g[pq] = Subspace::coordinate(fp.piece_indices(pq.first, pq.second, rank), n);
  }
  for (auto it = g.begin(); it != g.end();) it = it->second.dim() == 0 ? g.erase(it) : std::next(it);
  return g;
}

Filtration hodge_filtration(const Bigraded& g, std::size_t n) {
  Filtration f;
  f.n = n;
  if (g.empty()) {
    f.lo = 0;
    f.levels = {Subspace::whole(n)};
    return f;
  }
  long lo = g.begin()->first.first, hi = lo;
  for (const auto& [pq, s] : g) {
    lo = std::min(lo, pq.first);
    hi = std::max(hi, pq.first);
  }
  f.lo = lo;
  for (long a = lo; a <= hi; ++a) {
    Subspace acc = zero_space(n);
    for (const auto& [pq, s] : g) {
      if (pq.first >= a) acc = acc + s;
    }
    f.levels.push_back(acc);
  }
  return f;
}

WeightFiltration total_degree_filtration(const Bigraded& g, std::size_t n) {
  long lo = 0, hi = 0;
  for (const auto& [pq, s] : g) {
    lo = std::min(lo, pq.first + pq.second);
    hi = std::max(hi, pq.first + pq.second);
  }
  return make_weight(n, lo, hi, [&](long k) {
    Subspace acc = zero_space(n);
    for (const auto& [pq, s] : g) {
      if (pq.first + pq.second <= k) acc = acc + s;
    }
    return acc;
  });
}

WeightFiltration upside_down_filtration(const Filtration& f, const Mat& sigma) {
  std::size_t n = f.n;
  long lo = f.lo, hi = f.hi();
  std::vector<Subspace> conj;
  for (long a = lo; a <= hi; ++a) conj.push_back(f.at(a).anti_image(sigma));
  auto conj_at = [&](long a) {
    if (a < lo) return Subspace::whole(n);
    if (a > hi) return zero_space(n);
    return conj[static_cast<std::size_t>(a - lo)];
  };
  // W_m with m = -k is the sum over p of F^p cap sigma F^{k-p}.
  return make_weight(n, -(2 * hi + 1), -(2 * lo - 1), [&](long m) {
    long k = -m;
    Subspace acc = zero_space(n);
    for (long p = lo; p <= hi; ++p) acc = acc + f.at(p).intersect(conj_at(k - p));
    return acc;
  });
}

DimTable dims(const Bigraded& g) {
  DimTable d;
  for (const auto& [pq, s] : g) {
    if (s.dim() > 0) d[pq] = s.dim();
  }
  return d;
}

DimTable flip(const DimTable& d) {
  DimTable out;
  for (const auto& [pq, k] : d) out[{-pq.second, -pq.first}] = k;
  return out;
}

MixedFlagData deligne_bigrading(const Filtration& f, const WeightFiltration& w, const Mat& sigma) {
  std::size_t n = f.n;
  for (long k = w.lo; k <= w.hi(); ++k) {
    if (w.at(k).anti_image(sigma) != w.at(k)) {
      throw std::invalid_argument("weight filtration is not real at W_" + std::to_string(k));
    }
  }
  auto sf = [&](long a) { return f.at(a).anti_image(sigma); };
  // Each Gr_k^W must carry a pure structure of weight k.
  for (long k = w.lo; k <= w.hi(); ++k) {
    Subspace wk = w.at(k), wk1 = w.at(k - 1);
    long plo = std::min(f.lo, k - f.hi()) - 1, phi = std::max(f.hi(), k - f.lo) + 1;
    for (long p = plo; p <= phi; ++p) {
      Subspace a = f.at(p).intersect(wk) + wk1;
      Subspace b = sf(k - p + 1).intersect(wk) + wk1;
      if (a.intersect(b) != wk1 || a + b != wk) {
        throw std::invalid_argument("not a mixed Hodge structure: graded weight " + std::to_string(k) + " is not pure");
      }
    }
  }
  MixedFlagData out;
  out.f = f;
  out.w = w;
  for (long p = f.lo; p <= f.hi(); ++p) {
    for (long q = f.lo; q <= f.hi(); ++q) {
      long k = p + q;
      Subspace wk = w.at(k);
      Subspace inner = sf(q).intersect(wk);
      for (long j = 1; k - j - 1 >= w.lo; ++j) inner = inner + sf(q - j).intersect(w.at(k - j - 1));
      Subspace ipq = f.at(p).intersect(wk).intersect(inner);
      if (ipq.dim() > 0) out.i[{p, q}] = ipq;
    }
  }
  std::size_t total = 0;
  for (const auto& [pq, s] : out.i) total += s.dim();
  if (total != n) throw ConsistencyError("Deligne pieces do not span the algebra");
  for (long a = f.lo; a <= f.hi() + 1; ++a) {
    Subspace acc = zero_space(n);
    for (const auto& [pq, s] : out.i) {
      if (pq.first >= a) acc = acc + s;
    }
    if (acc != f.at(a)) throw ConsistencyError("Deligne pieces do not recover F^" + std::to_string(a));
  }
  for (long k = w.lo - 1; k <= w.hi(); ++k) {
    Subspace acc = zero_space(n);
    for (const auto& [pq, s] : out.i) {
      if (pq.first + pq.second <= k) acc = acc + s;
    }
    if (acc != w.at(k)) throw ConsistencyError("Deligne pieces do not recover W_" + std::to_string(k));
  }
  out.is_split = true;
  std::set<PQ> keys;
  for (const auto& [pq, s] : out.i) {
    keys.insert(pq);
    keys.insert({pq.second, pq.first});
  }
  for (const auto& pq : keys) {
    auto [p, q] = pq;
    Subspace lower = zero_space(n);
    for (const auto& [ab, s] : out.i) {
      if (ab.first < p && ab.second < q) lower = lower + s;
    }
    Subspace mine = piece(out.i, pq, n);
    Subspace mirrored = piece(out.i, {q, p}, n).anti_image(sigma);
    if (mirrored + lower != mine + lower) throw ConsistencyError("conjugation congruence fails at " + pq_text(pq));
    if (mirrored != mine) out.is_split = false;
  }
  out.h = dims(out.i);
  return out;
}

NaiveLimit naive_limit(const MixedFlagData& mfd) {
  if (!mfd.is_split) throw std::invalid_argument("naive limit needs an R-split mixed structure; split it first");
  NaiveLimit out;
  for (const auto& [pq, s] : mfd.i) out.g[{-pq.second, -pq.first}] = s;
  out.f = hodge_filtration(out.g, mfd.f.n);
  return out;
}

bool OrbitConsistency::all_pass() const {
  return std::all_of(samples.begin(), samples.end(), [](const SampleCheck& s) { return s.pass(); });
}

bool hermitian_positive_definite(const Mat& g0) {
  Mat g = g0;
  std::size_t k = g.rows();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (g(a, b) != g(b, a).conj()) return false;
    }
  }
  for (std::size_t p = 0; p < k; ++p) {
    const Cyclo8 d = g(p, p);
    if (!d.is_real() || d.sign_real() <= 0) return false;
    Cyclo8 inv = d.inverse();
    for (std::size_t a = p + 1; a < k; ++a) {
      if (g(a, p).is_zero()) continue;
      Cyclo8 factor = g(a, p) * inv;
      for (std::size_t b = p + 1; b < k; ++b) g(a, b) -= factor * g(p, b);
    }
  }
  return true;
}

SampleCheck polarized_hodge_check(const LieAlgebra& la, const Mat& sigma, const Filtration& f) {
  SampleCheck out;
  std::size_t n = f.n;
  long lo = std::min(f.lo, 1 - f.hi()) - 1, hi = std::max(f.hi(), 1 - f.lo) + 1;
  auto sf = [&](long a) { return f.at(a).anti_image(sigma); };
  for (long p = lo; p <= hi; ++p) {
    Subspace a = f.at(p), b = sf(1 - p);
    if (a.intersect(b).dim() != 0 || a.dim() + b.dim() != n) {
      out.detail = "F^" + std::to_string(p) + " and conj F^" + std::to_string(1 - p) + " are not complementary";
      return out;
    }
  }
  out.pure = true;
  for (long p = lo; p <= hi; ++p) {
    Subspace g = f.at(p).intersect(sf(-p));
    if (g.dim() == 0) continue;
    Cyclo8 s = (p % 2 == 0) ? Cyclo8(-1) : Cyclo8(1);
    if (!hermitian_positive_definite(gram(la, sigma, g.basis(), Mat::identity(n), s))) {
      out.detail = "sign condition fails on g^{" + std::to_string(p) + "," + std::to_string(-p) + "}";
      return out;
    }
  }
  out.positive = true;
  return out;
}

OrbitConsistency nilpotent_orbit_consistency(const LieAlgebra& la, const Mat& sigma, const Filtration& f, const Vec& n,
                                             const std::vector<mpq_class>& samples) {
  OrbitConsistency out;
  for (const auto& y : samples) {
    Mat e = la.exp_nilpotent(n, Cyclo8::i() * Cyclo8(y));
    Filtration moved;
    moved.n = f.n;
    moved.lo = f.lo;
    for (const auto& s : f.levels) moved.levels.push_back(s.image(e));
    SampleCheck c = polarized_hodge_check(la, sigma, moved);
    c.y = y;
    out.samples.push_back(c);
  }
  return out;
}

std::optional<std::string> polarization_failure(const LieAlgebra& la, const Mat& sigma, const Bigraded& g, const Vec& nv) {
  std::size_t n = la.dim();
  if (!piece(g, {-1, -1}, n).contains(nv)) return "N is not in g^{-1,-1}";
  if (sigma * vec_conj(nv) != nv) return "N is not real";
  Mat a = la.ad(nv);
  long top = 0;
  for (const auto& [pq, s] : g) top = std::max(top, pq.first + pq.second);
  std::vector<Mat> pw{Mat::identity(n)};
  for (long k = 1; k <= top + 1; ++k) pw.push_back(pw.back() * a);
  for (const auto& [pq, s] : g) {
    long j = pq.first + pq.second;
    if (j < 0) continue;
    PQ target{pq.first - j, -pq.first};
    Subspace img = s.image(pw[static_cast<std::size_t>(j)]);
    if (img.dim() != s.dim() || piece(g, target, n).dim() != s.dim()) {
      return "N^" + std::to_string(j) + " is not an isomorphism " + pq_text(pq) + " -> " + pq_text(target);
    }
  }
  for (const auto& [pq, s] : g) {
    long j = pq.first + pq.second, p = pq.first;
    if (j < 0) continue;
    Subspace prim = s.intersect(kernel(pw[static_cast<std::size_t>(j + 1)]));
    if (prim.dim() == 0) continue;
    Cyclo8 sign = i_pow_neg(j) * ((p + 1) % 2 == 0 ? Cyclo8(1) : Cyclo8(-1));
    if (!hermitian_positive_definite(gram(la, sigma, prim.basis(), pw[static_cast<std::size_t>(j)], sign))) {
      return "form is not positive on the primitive part of " + pq_text(pq);
    }
  }
  return std::nullopt;
}

Vec real_root_vector(const CartanFrame& f, std::size_t alpha, std::size_t rank, std::size_t n) {
  if (f.tau[alpha] != alpha) throw std::invalid_argument("real_root_vector: root is not real");
  const Cyclo8& c = f.tau_coeff[alpha];
  Cyclo8 lambda = c == Cyclo8(1) ? Cyclo8(1) : c == Cyclo8(-1) ? Cyclo8::i() : Cyclo8(1) + c;
  Vec v = vec_scale(unit_vec(n, rank + alpha), lambda);
  if (f.conjugate(v) != v) throw ConsistencyError("normalized root vector is not real");
  return v;
}

std::vector<Vec> real_basis(const CartanFrame& f, const std::vector<std::size_t>& roots, std::size_t rank, std::size_t n) {
  std::vector<Vec> out;
  std::set<std::size_t> done;
  std::vector<std::size_t> sorted(roots);
  std::sort(sorted.begin(), sorted.end());
  for (auto a : sorted) {
    if (done.count(a)) continue;
    done.insert(a);
    if (f.tau[a] == a) {
      out.push_back(real_root_vector(f, a, rank, n));
      continue;
    }
    if (std::find(sorted.begin(), sorted.end(), f.tau[a]) == sorted.end()) {
      throw std::invalid_argument("real_basis: root set is not conjugation-stable");
    }
    done.insert(f.tau[a]);
    Vec e = unit_vec(n, rank + a);
    Vec s = f.conjugate(e);
    out.push_back(vec_add(e, s));
    out.push_back(vec_scale(vec_sub(e, s), Cyclo8::i()));
  }
  return out;
}

std::string to_string(Polarizability p) {
  switch (p) {
    case Polarizability::polarizable: return "polarizable";
    case Polarizability::not_polarizable: return "not_polarizable";
    case Polarizability::undetermined: return "undetermined";
  }
  return "?";
}

bool sl2_weight_shape(const DimTable& h) {
  std::map<long, long> m;
  long top = 0;
  for (const auto& [pq, k] : h) {
    m[pq.first + pq.second] += static_cast<long>(k);
    top = std::max(top, std::abs(pq.first + pq.second));
  }
  auto at = [&](long j) { return m.count(j) ? m[j] : 0L; };
  for (long j = 0; j <= top; ++j) {
    if (at(j) != at(-j) || at(j) < at(j + 2)) return false;
  }
  return true;
}

bool strongly_classical(const RealForm& rf) {
  const RootSystem& rs = rf.algebra().roots();
  for (std::size_t a = 0; a < rs.size(); ++a) {
    if (std::abs(rf.grading_value(a)) > 1) return false;
  }
  return true;
}

namespace {

// Coefficients p/q in lowest terms with max(|p|, q) == level.
std::vector<mpq_class> level_values(int level) {
  std::vector<mpq_class> out;
  for (int den = 1; den <= level; ++den) {
    for (int num = 1; num <= level; ++num) {
      if (std::max(num, den) != level) continue;
      mpq_class v(num, den);
      v.canonicalize();
      if (v.get_num() != num) continue;  // not in lowest terms
      out.push_back(v);
      out.push_back(-v);
    }
  }
  return out;
}

// Candidate real combinations in deterministic order: height level, support size,
// support (lexicographic), then coefficient tuple. Returns the first accepted vector.
std::optional<Vec> search_witness(const std::vector<Vec>& basis, int height, std::size_t cap, std::size_t& tried,
                                  const std::function<bool(const Vec&)>& accept) {
  std::size_t m = basis.size();
  std::vector<std::vector<mpq_class>> by_level(static_cast<std::size_t>(height) + 1);
  for (int l = 1; l <= height; ++l) by_level[static_cast<std::size_t>(l)] = level_values(l);
  for (int level = 1; level <= height; ++level) {
    std::vector<std::pair<mpq_class, int>> values;
    for (int l = 1; l <= level; ++l) {
      for (const auto& v : by_level[static_cast<std::size_t>(l)]) values.push_back({v, l});
    }
    for (std::size_t size = 1; size <= m; ++size) {
      std::vector<std::size_t> support(size);
      for (std::size_t k = 0; k < size; ++k) support[k] = k;
      while (true) {
        std::vector<std::size_t> digit(size, 0);
        while (true) {
          bool has_level = false;
          for (auto d : digit) has_level = has_level || values[d].second == level;
          if (has_level) {
            if (tried >= cap) return std::nullopt;
            ++tried;
            Vec v(basis[0].size());
            for (std::size_t k = 0; k < size; ++k) v = vec_add(v, vec_scale(basis[support[k]], Cyclo8(values[digit[k]].first)));
            if (accept(v)) return v;
          }
          std::size_t pos = size;
          while (pos > 0 && ++digit[pos - 1] == values.size()) digit[--pos] = 0;
          if (pos == 0) break;
        }
        // next combination
        std::size_t i = size;
        while (i > 0 && support[i - 1] == m - size + i - 1) --i;
        if (i == 0) break;
        ++support[i - 1];
        for (std::size_t k = i; k < size; ++k) support[k] = support[k - 1] + 1;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

PolarizabilityReport polarizability(const OrbitSpace& space, std::size_t record, const PolarizabilityOptions& opts) {
  const RealForm& rf = space.real_form();
  const LieAlgebra& la = rf.algebra();
  const OrbitRecord& rec = space.records().at(record);
  const CartanFrame& f = space.hasse().frames[rec.frame];
  std::size_t n = la.dim(), r = la.rank();
  FlagPoint fp = space.flag_point(rec.frame, rec.rep);
  Bigraded g = bigraded_pieces(fp, n, r);
  auto polarizes = [&](const Vec& v) { return !polarization_failure(la, f.m, g, v).has_value(); };
  PolarizabilityReport out;
  const Bigrading bg = fp.bigrading();
  auto minus = bg.roots.find({-1, -1});
  if (minus == bg.roots.end()) {
    Vec zero(n);
    out.candidates = 1;
    if (polarizes(zero)) {
      out.verdict = Polarizability::polarizable;
      out.witness = zero;
      out.reason = "pure polarized Hodge structure; N = 0";
    } else {
      out.verdict = Polarizability::not_polarizable;
      out.reason = "g^{-1,-1} = 0";
    }
    return out;
  }
  if (!sl2_weight_shape(dims(g))) {
    out.verdict = Polarizability::not_polarizable;
    out.reason = "multiplicities of p+q are not those of an sl2 representation, so condition (i) fails for every N";
    return out;
  }
  std::vector<Vec> basis = real_basis(f, minus->second, r, n);
  if (basis.size() == 1) {
    // A line: +/- the vector exhausts all candidates up to positive scaling.
    for (int s : {1, -1}) {
      ++out.candidates;
      Vec v = vec_scale(basis[0], Cyclo8(s));
      if (polarizes(v)) {
        out.verdict = Polarizability::polarizable;
        out.witness = v;
        out.reason = rec.codim == 1 ? "codimension one: signed real root vector" : "g^{-1,-1} is a real line";
        return out;
      }
    }
    if (rec.codim == 1 && rec.boundary) throw ConsistencyError("codimension-one boundary stratum " + rec.label + " does not polarize");
    out.verdict = Polarizability::not_polarizable;
    out.reason = "neither sign of the unique real direction polarizes";
    return out;
  }
  auto found = search_witness(basis, opts.height, opts.cap, out.candidates, polarizes);
  if (found) {
    out.verdict = Polarizability::polarizable;
    out.witness = *found;
    out.reason = "witness found by search";
    return out;
  }
  if (strongly_classical(rf) && rec.boundary) {
    out.verdict = Polarizability::polarizable;
    out.reason = "boundary stratum of a Hermitian symmetric domain; no witness within the search bound";
    return out;
  }
  out.verdict = Polarizability::undetermined;
  out.reason = "no witness within height " + std::to_string(opts.height) + " after " + std::to_string(out.candidates) +
               " candidates";
  return out;
}

CuspidalityReport cuspidality(const OrbitSpace& space, std::size_t record) {
  const RealForm& rf = space.real_form();
  const LieAlgebra& la = rf.algebra();
  const RootSystem& rs = la.roots();
  const OrbitRecord& rec = space.records().at(record);
  std::size_t n = la.dim(), r = la.rank();
  FlagPoint fp = space.flag_point(rec.frame, rec.rep);
  CuspidalityReport out;
  for (std::size_t a = 0; a < rs.size(); ++a) {
    if (fp.p[a] + fp.q[a] == 0) out.levi_roots.push_back(a);
  }
  out.levi_type = root_subsystem_type(rs, out.levi_roots);
  CartanFrame f = space.hasse().frames[rec.frame];
  // Inverse Cayley transforms inside the Levi until it has no real roots.
  for (std::size_t guard = 0;; ++guard) {
    if (guard > r) throw ConsistencyError("inverse Cayley transforms did not terminate");
    auto it = std::find_if(out.levi_roots.begin(), out.levi_roots.end(),
                           [&](std::size_t a) { return f.types[a] == RootType::real; });
    if (it == out.levi_roots.end()) break;
    std::size_t beta = *it;
    Vec z = real_root_vector(f, beta, r, n);
    const Cyclo8 lambda = z[r + beta];
    z[r + rs.negative(beta)] = lambda.inverse();
    if (f.conjugate(z) != z) throw ConsistencyError("inverse Cayley generator is not real");
    Mat az = la.ad(z);
    Mat d = spectral_exp(az, Cyclo8(1), 1), dinv = spectral_exp(az, Cyclo8(1), -1);
    f = make_frame(rf, f.c * d, dinv * f.c_inv);
    if (f.types[beta] == RootType::real) throw ConsistencyError("inverse Cayley transform left the root real");
    ++out.cayley_steps;
  }
  Mat t(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) t(i, j) = Cyclo8(f.tau_h[i][j] - (i == j ? 1 : 0));
  }
  auto split = t.nullspace();
  out.split_rank = split.size();
  out.cuspidal = true;
  for (const auto& h : split) {
    std::vector<mpq_class> hq(r);
    for (std::size_t i = 0; i < r; ++i) {
      if (!h[i].is_rational()) throw ConsistencyError("split part of the Cartan is not rational");
      hq[i] = h[i][0];
    }
    for (auto a : out.levi_roots) {
      if (rs.evaluate(a, hq) != 0) out.cuspidal = false;
    }
  }
  return out;
}

DimensionReport dimension_report(const LieAlgebra& la, const Vec& nv, const MixedFlagData& mfd) {
  if (!mfd.is_split) throw std::invalid_argument("dimension_report needs a split mixed structure");
  std::size_t n = la.dim();
  if (!piece(mfd.i, {-1, -1}, n).contains(nv)) throw std::invalid_argument("dimension_report: N is not in I^{-1,-1}");
  Mat a = la.ad(nv);
  Subspace ker = kernel(a);
  DimensionReport out;
  out.h = mfd.h;
  for (const auto& [pq, s] : mfd.i) {
    std::size_t z = s.intersect(ker).dim();
    if (z > 0) out.z[pq] = z;
    long j = pq.first + pq.second;
    if (j >= 0) {
      std::size_t hp = s.intersect(kernel(power(a, j + 1))).dim();
      if (hp > 0) out.h_prim[pq] = hp;
    }
  }
  for (const auto& [pq, z] : out.z) {
    auto it = out.h_prim.find({-pq.second, -pq.first});
    if (pq.first + pq.second > 0 || it == out.h_prim.end() || it->second != z) {
      throw ConsistencyError("centralizer dimensions disagree with primitive dimensions at " + pq_text(pq));
    }
  }
  auto sum = [&](const DimTable& t, const std::function<bool(long, long)>& region) {
    long s = 0;
    for (const auto& [pq, k] : t) {
      if (region(pq.first, pq.second)) s += static_cast<long>(k);
    }
    return s;
  };
  auto in_i = [](long p, long q) { return p < 0 && q >= 0 && p + q <= 0; };
  auto in_i1 = [](long p, long q) { return q > 0 && p + q <= 0; };
  auto in_i2 = [](long p, long q) { return q > 0 && p + q < 0; };
  auto in_ii1 = [](long p, long q) { return p < 0 && q < 0; };
  long zi = sum(out.z, in_i), zii1 = sum(out.z, in_ii1);
  out.dim_b = 2 * zi + 2 * (zii1 - 1);
  out.dim_b_real = 2 * zi + (zii1 - 1);
  out.dim_b_hat = 2 * sum(out.z, in_i1);
  out.dim_d_n = 2 * sum(out.z, [](long p, long q) { return p < 0 && p + q == 0; });
  out.c = sum(out.h, in_ii1);
  DimTable limit = flip(out.h);
  out.d = sum(limit, [](long p, long) { return p < 0; });
  out.dim_orbit = sum(limit, [](long p, long q) { return p < 0 || q < 0; });
  out.orbit_formula_holds = out.dim_orbit == 2 * out.d - out.c;
  out.alpha = sum(out.z, in_i2) == 0;
  out.beta = out.c == 1;
  out.gamma = out.beta && sum(out.z, [](long p, long q) { return p < 0 && q == 0; }) == 0;
  return out;
}

StratumLimit limit_from_stratum(const LieAlgebra& la, const Mat& sigma, const FlagPoint& fp, const Vec& witness) {
  std::size_t n = la.dim();
  Bigraded g = bigraded_pieces(fp, n, la.rank());
  StratumLimit out;
  out.triple = jm_triple(la, witness);
  for (const auto& [pq, s] : g) out.g_tilde[{-pq.second, -pq.first}] = s;
  out.f_tilde = hodge_filtration(out.g_tilde, n);
  for (int s : {-1, 1}) {
    Vec cand = vec_scale(out.triple.n_plus, Cyclo8(s));
    if (!polarization_failure(la, sigma, out.g_tilde, cand)) {
      out.n = cand;
      return out;
    }
  }
  throw ConsistencyError("no sign of the raising element polarizes the flipped bigrading");
}

std::optional<std::size_t> locate_flag(const OrbitSpace& space, std::size_t frame, const std::vector<long>& p,
                                       const std::vector<long>& q) {
  const WeylGroup& wg = space.real_form().algebra().weyl();
  for (std::size_t w = 0; w < wg.size(); ++w) {
    FlagPoint fp = space.flag_point(frame, w);
    if (fp.p == p && fp.q == q) return w;
  }
  return std::nullopt;
}

std::string describe_vector(const LieAlgebra& la, const Vec& v) {
  std::string out;
  for (std::size_t b = 0; b < v.size(); ++b) {
    if (v[b].is_zero()) continue;
    std::string name;
    if (la.is_cartan_index(b)) {
      name = "H[" + std::to_string(b + 1) + "]";
    } else {
      name = "X[";
      const IntVec& root = la.roots().root(la.root_of_index(b));
      for (std::size_t i = 0; i < root.size(); ++i) name += (i ? "," : "") + std::to_string(root[i]);
      name += "]";
    }
    std::string coeff = v[b].is_one() ? "" : "(" + v[b].pretty() + ")*";
    out += (out.empty() ? "" : " + ") + coeff + name;
  }
  return out.empty() ? "0" : out;
}

}  // namespace strataforge
