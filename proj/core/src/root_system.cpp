#include "strataforge/root_system.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace strataforge {

IntMat cartan_matrix_for_type(const std::string& type) {
  if (type == "A1") return {{2}};
  if (type == "A2") return {{2, -1}, {-1, 2}};
  // B2: alpha_1 long, alpha_2 short
  if (type == "B2") return {{2, -2}, {-1, 2}};
  // C2: alpha_1 short, alpha_2 long
  if (type == "C2") return {{2, -1}, {-2, 2}};
  // G2: alpha_1 short, alpha_2 long
  if (type == "G2") return {{2, -1}, {-3, 2}};
  if (type == "A3") return {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  if (type == "B3") return {{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}};
  // C3: e1-e2, e2-e3, 2e3
  if (type == "C3") return {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}};
  throw InvalidCartanMatrix("unknown root system type '" + type + "'");
}

RootSystem RootSystem::build(const std::string& type) {
  return build(cartan_matrix_for_type(type), type);
}

namespace {

// Leading principal minors of a rational symmetric matrix, all positive?
bool positive_definite(std::vector<std::vector<mpq_class>> g) {
  std::size_t n = g.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(g[k][k]) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      mpq_class f = g[i][k] / g[k][k];
      for (std::size_t j = k; j < n; ++j) g[i][j] -= f * g[k][j];
    }
  }
  return true;
}

}  // namespace

RootSystem RootSystem::build(const IntMat& cartan, std::string name) {
  std::size_t r = cartan.size();
  if (r == 0 || r > 4) throw InvalidCartanMatrix("rank must be between 1 and 4");
  for (const auto& row : cartan) {
    if (row.size() != r) throw InvalidCartanMatrix("Cartan matrix must be square");
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (cartan[i][i] != 2) throw InvalidCartanMatrix("diagonal entries must be 2");
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      if (cartan[i][j] > 0) throw InvalidCartanMatrix("off-diagonal entries must be <= 0");
      if ((cartan[i][j] == 0) != (cartan[j][i] == 0)) {
        throw InvalidCartanMatrix("zero pattern must be symmetric");
      }
    }
  }

  RootSystem rs;
  rs.name_ = std::move(name);
  rs.rank_ = r;
  rs.cartan_ = cartan;

  // Symmetrize: (a_i, a_j) = cartan[i][j] * d_j / 2 must be symmetric.
  std::vector<mpq_class> d(r, 0);
  for (std::size_t start = 0; start < r; ++start) {
    if (sgn(d[start]) != 0) continue;
    d[start] = 1;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      std::size_t i = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < r; ++j) {
        if (j == i || cartan[i][j] == 0) continue;
        mpq_class dj = d[i] * cartan[j][i] / cartan[i][j];
        if (sgn(d[j]) == 0) {
          d[j] = dj;
          queue.push_back(j);
        } else if (d[j] != dj) {
          throw InvalidCartanMatrix("Cartan matrix is not symmetrizable");
        }
      }
    }
  }
  std::vector<std::vector<mpq_class>> g(r, std::vector<mpq_class>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) g[i][j] = mpq_class(cartan[i][j]) * d[j] / 2;
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (g[i][j] != g[j][i]) throw InvalidCartanMatrix("Cartan matrix is not symmetrizable");
    }
  }
  if (!positive_definite(g)) throw InvalidCartanMatrix("Cartan matrix is not of finite type");
  rs.sym_ = d;

  // Close the simple roots under simple reflections.
  std::set<IntVec> found;
  std::deque<IntVec> queue;
  for (std::size_t i = 0; i < r; ++i) {
    IntVec e(r, 0);
    e[i] = 1;
    found.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    IntVec b = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < r; ++i) {
      long p = 0;
      for (std::size_t k = 0; k < r; ++k) p += b[k] * cartan[k][i];
      IntVec c = b;
      c[i] -= p;
      if (found.insert(c).second) {
        queue.push_back(c);
        if (found.size() > 1000) throw InvalidCartanMatrix("root closure did not terminate");
      }
    }
  }
  std::vector<IntVec> pos;
  for (const auto& v : found) {
    bool nonneg = std::all_of(v.begin(), v.end(), [](long x) { return x >= 0; });
    if (nonneg) pos.push_back(v);
  }
  auto height = [](const IntVec& v) { return std::accumulate(v.begin(), v.end(), 0L); };
  std::sort(pos.begin(), pos.end(), [&](const IntVec& a, const IntVec& b) {
    long ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  rs.roots_ = pos;
  for (const auto& v : pos) {
    IntVec n = v;
    for (auto& x : n) x = -x;
    rs.roots_.push_back(n);
  }
  if (rs.roots_.size() != found.size()) throw InvalidCartanMatrix("root set is not symmetric");
  for (std::size_t k = 0; k < rs.roots_.size(); ++k) rs.index_[rs.roots_[k]] = k;

  rs.min_norm2_ = rs.max_norm2_ = rs.inner(rs.roots_[0], rs.roots_[0]);
  for (std::size_t k = 0; k < rs.roots_.size(); ++k) {
    mpq_class n2 = rs.inner(rs.roots_[k], rs.roots_[k]);
    if (n2 < rs.min_norm2_) rs.min_norm2_ = n2;
    if (n2 > rs.max_norm2_) rs.max_norm2_ = n2;
  }
  // Rescale so the shortest root has squared length 2.
  mpq_class s = mpq_class(2) / rs.min_norm2_;
  for (auto& x : rs.sym_) x *= s;
  rs.min_norm2_ *= s;
  rs.max_norm2_ *= s;

  for (std::size_t k = 0; k < rs.roots_.size(); ++k) {
    mpq_class n2 = rs.norm2(k);
    IntVec cv(r);
    for (std::size_t i = 0; i < r; ++i) {
      mpq_class c = mpq_class(rs.roots_[k][i]) * rs.sym_[i] / n2;
      if (c.get_den() != 1) throw InvalidCartanMatrix("non-integral coroot");
      cv[i] = c.get_num().get_si();
    }
    rs.coroots_.push_back(cv);
  }
  return rs;
}

std::size_t RootSystem::negative(std::size_t k) const {
  std::size_t n = num_positive();
  return k < n ? k + n : k - n;
}

std::optional<std::size_t> RootSystem::index_of(const IntVec& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

long RootSystem::height(std::size_t k) const {
  return std::accumulate(roots_[k].begin(), roots_[k].end(), 0L);
}

mpq_class RootSystem::inner(const IntVec& a, const IntVec& b) const {
  mpq_class s = 0;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < rank_; ++j) {
      if (b[j] == 0 || cartan_[i][j] == 0) continue;
      s += mpq_class(a[i] * b[j] * cartan_[i][j]) * sym_[j] / 2;
    }
  }
  return s;
}

long RootSystem::pairing(const IntVec& beta, std::size_t alpha) const {
  const IntVec& cv = coroots_[alpha];
  long s = 0;
  for (std::size_t i = 0; i < rank_; ++i) {
    for (std::size_t k = 0; k < rank_; ++k) s += beta[i] * cv[k] * cartan_[i][k];
  }
  return s;
}

mpq_class RootSystem::evaluate(const IntVec& weight, const std::vector<mpq_class>& h) const {
  mpq_class s = 0;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (weight[i] == 0) continue;
    for (std::size_t k = 0; k < rank_; ++k) {
      if (cartan_[i][k] != 0 && sgn(h[k]) != 0) s += h[k] * (weight[i] * cartan_[i][k]);
    }
  }
  return s;
}

mpq_class RootSystem::evaluate(std::size_t alpha, const std::vector<mpq_class>& h) const {
  return evaluate(roots_[alpha], h);
}

std::pair<long, long> RootSystem::root_string(const IntVec& beta, std::size_t alpha) const {
  auto in_set = [&](const IntVec& v) {
    if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) return true;
    return index_.count(v) > 0;
  };
  const IntVec& a = roots_[alpha];
  long down = 0, up = 0;
  for (long k = 1;; ++k) {
    IntVec v = beta;
    for (std::size_t i = 0; i < rank_; ++i) v[i] -= k * a[i];
    if (!in_set(v)) break;
    down = k;
  }
  for (long k = 1;; ++k) {
    IntVec v = beta;
    for (std::size_t i = 0; i < rank_; ++i) v[i] += k * a[i];
    if (!in_set(v)) break;
    up = k;
  }
  return {down, up};
}

IntVec RootSystem::reflect(const IntVec& beta, std::size_t alpha) const {
  long p = pairing(beta, alpha);
  IntVec v = beta;
  for (std::size_t i = 0; i < rank_; ++i) v[i] -= p * roots_[alpha][i];
  return v;
}

std::vector<mpq_class> RootSystem::reflect_coweight(const std::vector<mpq_class>& h,
                                                    std::size_t alpha) const {
  mpq_class a = evaluate(alpha, h);
  std::vector<mpq_class> out = h;
  for (std::size_t i = 0; i < rank_; ++i) out[i] -= a * coroots_[alpha][i];
  return out;
}

std::vector<mpq_class> RootSystem::fundamental_weight(std::size_t i) const {
  // Solve sum_k c_k cartan[k][j] = delta_ij.
  std::size_t r = rank_;
  std::vector<std::vector<mpq_class>> a(r, std::vector<mpq_class>(r + 1));
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < r; ++k) a[j][k] = cartan_[k][j];
    a[j][r] = (j == i) ? 1 : 0;
  }
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t p = c;
    while (sgn(a[p][c]) == 0) ++p;
    std::swap(a[p], a[c]);
    for (std::size_t row = 0; row < r; ++row) {
      if (row == c || sgn(a[row][c]) == 0) continue;
      mpq_class f = a[row][c] / a[c][c];
      for (std::size_t k = c; k <= r; ++k) a[row][k] -= f * a[c][k];
    }
  }
  std::vector<mpq_class> out(r);
  for (std::size_t k = 0; k < r; ++k) out[k] = a[k][r] / a[k][k];
  return out;
}

std::string root_subsystem_type(const RootSystem& rs, const std::vector<std::size_t>& roots) {
  if (roots.empty()) return "trivial";
  std::set<std::size_t> todo(roots.begin(), roots.end());
  std::vector<std::string> parts;
  while (!todo.empty()) {
    std::vector<std::size_t> comp{*todo.begin()};
    todo.erase(todo.begin());
    for (std::size_t k = 0; k < comp.size(); ++k) {
      for (auto it = todo.begin(); it != todo.end();) {
        if (sgn(rs.inner(rs.root(comp[k]), rs.root(*it))) != 0) {
          comp.push_back(*it);
          it = todo.erase(it);
        } else {
          ++it;
        }
      }
    }
    // rank of the component
    std::vector<std::vector<mpq_class>> m;
    for (auto k : comp) {
      std::vector<mpq_class> row(rs.rank());
      for (std::size_t i = 0; i < rs.rank(); ++i) row[i] = rs.root(k)[i];
      m.push_back(row);
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < rs.rank() && rank < m.size(); ++c) {
      std::size_t p = rank;
      while (p < m.size() && sgn(m[p][c]) == 0) ++p;
      if (p == m.size()) continue;
      std::swap(m[p], m[rank]);
      for (std::size_t row = 0; row < m.size(); ++row) {
        if (row == rank || sgn(m[row][c]) == 0) continue;
        mpq_class f = m[row][c] / m[rank][c];
        for (std::size_t k = c; k < rs.rank(); ++k) m[row][k] -= f * m[rank][k];
      }
      ++rank;
    }
    std::size_t n = comp.size();
    mpq_class lo = rs.norm2(comp[0]), hi = lo;
    for (auto k : comp) {
      lo = std::min(lo, rs.norm2(k));
      hi = std::max(hi, rs.norm2(k));
    }
    std::size_t n_long = 0;
    for (auto k : comp) n_long += (rs.norm2(k) == hi) ? 1 : 0;
    std::string t;
    if (lo == hi) {
      if (n == rank * (rank + 1)) {
        t = "A" + std::to_string(rank);
      } else if (rank >= 4 && n == 2 * rank * (rank - 1)) {
        t = "D" + std::to_string(rank);
      } else {
        t = "?" + std::to_string(rank);
      }
    } else if (n == 12 && rank == 2) {
      t = "G2";
    } else if (n == 2 * rank * rank) {
      // B_n has 2n short roots, C_n has 2n long roots.
      if (rank == 2) {
        t = "B2";
      } else {
        t = (n - n_long == 2 * rank) ? "B" + std::to_string(rank) : "C" + std::to_string(rank);
      }
    } else {
      t = "?" + std::to_string(rank);
    }
    parts.push_back(t);
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "x") + p;
  return out;
}

}  // namespace strataforge
