#include "strataforge/lie_algebra.hpp"

#include <algorithm>
#include <map>

namespace strataforge {

namespace {

// A faithful module given by the matrices of the Chevalley generators.
struct GeneratorModule {
  std::vector<Mat> e, f;
};

IntVec shift_labels(const RootSystem& rs, const IntVec& mu, std::size_t j, long sign) {
  IntVec out = mu;
  for (std::size_t k = 0; k < rs.rank(); ++k) out[k] += sign * rs.cartan()[j][k];
  return out;
}

// Weights are recorded by their labels <mu, alpha_k^vee>.
std::vector<IntVec> weyl_orbit_labels(const RootSystem& rs, const IntVec& lambda) {
  std::vector<IntVec> orbit{lambda};
  std::map<IntVec, bool> seen{{lambda, true}};
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    for (std::size_t j = 0; j < rs.rank(); ++j) {
      IntVec mu = orbit[head];
      long c = mu[j];
      for (std::size_t k = 0; k < rs.rank(); ++k) mu[k] -= c * rs.cartan()[j][k];
      if (!seen.count(mu)) {
        seen[mu] = true;
        orbit.push_back(mu);
      }
    }
  }
  std::sort(orbit.begin(), orbit.end(), std::greater<>());
  return orbit;
}

bool is_minuscule(const RootSystem& rs, const std::vector<IntVec>& orbit) {
  for (const auto& mu : orbit) {
    for (std::size_t a = 0; a < rs.size(); ++a) {
      long p = 0;
      for (std::size_t k = 0; k < rs.rank(); ++k) p += mu[k] * rs.coroot(a)[k];
      if (p < -1 || p > 1) return false;
    }
  }
  return true;
}

GeneratorModule minuscule_module(const RootSystem& rs, const std::vector<IntVec>& weights) {
  std::map<IntVec, std::size_t> pos;
  for (std::size_t k = 0; k < weights.size(); ++k) pos[weights[k]] = k;
  std::size_t n = weights.size();
  GeneratorModule m;
  for (std::size_t j = 0; j < rs.rank(); ++j) {
    Mat e(n, n), f(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      auto up = pos.find(shift_labels(rs, weights[k], j, +1));
      if (up != pos.end()) e(up->second, k) = 1;
      auto dn = pos.find(shift_labels(rs, weights[k], j, -1));
      if (dn != pos.end()) f(dn->second, k) = 1;
    }
    m.e.push_back(e);
    m.f.push_back(f);
  }
  return m;
}

// Short roots plus one zero weight; only short simple roots meet the zero weight.
GeneratorModule quasi_minuscule_module(const RootSystem& rs) {
  std::vector<IntVec> weights;
  IntVec zero(rs.rank(), 0);
  for (std::size_t a = 0; a < rs.size(); ++a) {
    if (rs.is_long(a) && !rs.simply_laced()) continue;
    IntVec lab(rs.rank(), 0);
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      for (std::size_t k = 0; k < rs.rank(); ++k) lab[k] += rs.root(a)[i] * rs.cartan()[i][k];
    }
    weights.push_back(lab);
  }
  weights.push_back(zero);
  std::sort(weights.begin(), weights.end(), std::greater<>());
  std::map<IntVec, std::size_t> pos;
  for (std::size_t k = 0; k < weights.size(); ++k) pos[weights[k]] = k;
  std::size_t n = weights.size();
  GeneratorModule m;
  for (std::size_t j = 0; j < rs.rank(); ++j) {
    Mat e(n, n), f(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      bool from_zero = weights[k] == zero;
      auto up = pos.find(shift_labels(rs, weights[k], j, +1));
      if (up != pos.end()) e(up->second, k) = from_zero ? 2 : 1;
      auto dn = pos.find(shift_labels(rs, weights[k], j, -1));
      if (dn != pos.end()) f(dn->second, k) = from_zero ? 2 : 1;
    }
    m.e.push_back(e);
    m.f.push_back(f);
  }
  return m;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

GeneratorModule faithful_module(const RootSystem& rs) {
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    IntVec lambda(rs.rank(), 0);
    lambda[i] = 1;
    auto orbit = weyl_orbit_labels(rs, lambda);
    if (is_minuscule(rs, orbit)) return minuscule_module(rs, orbit);
  }
  if (rs.name() == "G2" || (rs.rank() == 2 && rs.size() == 12)) return quasi_minuscule_module(rs);
  throw ConsistencyError("no supported faithful module for root system " + rs.name());
}

void check_generators(const RootSystem& rs, const GeneratorModule& m) {
  std::size_t r = rs.rank();
  for (std::size_t i = 0; i < r; ++i) {
    Mat h = commutator(m.e[i], m.f[i]);
    for (std::size_t j = 0; j < r; ++j) {
      if (i != j && !commutator(m.e[i], m.f[j]).is_zero()) {
        throw ConsistencyError("generator module: [e_i, f_j] != 0");
      }
      if (commutator(h, m.e[j]) != m.e[j].scaled(Cyclo8(rs.cartan()[j][i]))) {
        throw ConsistencyError("generator module: [h_i, e_j] has the wrong weight");
      }
      if (i == j) continue;
      // Serre relations ad(e_i)^{1 - a} e_j = 0.
      long steps = 1 - rs.cartan()[j][i];
      Mat x = m.e[j], y = m.f[j];
      for (long s = 0; s < steps; ++s) {
        x = commutator(m.e[i], x);
        y = commutator(m.f[i], y);
      }
      if (!x.is_zero() || !y.is_zero()) throw ConsistencyError("generator module: Serre relation fails");
    }
  }
}

// Ratio c with a = c b, for b != 0; nullopt if not proportional.
std::optional<Cyclo8> proportion(const Mat& a, const Mat& b) {
  std::optional<Cyclo8> c;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (!b(r, k).is_zero()) {
        c = a(r, k) / b(r, k);
        goto found;
      }
    }
  }
  return std::nullopt;
found:
  if (a != b.scaled(*c)) return std::nullopt;
  return c;
}

}  // namespace

std::shared_ptr<const LieAlgebra> LieAlgebra::build(const RootSystem& rs_in) {
  auto la = std::shared_ptr<LieAlgebra>(new LieAlgebra());
  la->rs_ = rs_in;
  const RootSystem& rs = la->rs_;
  la->weyl_ = std::make_unique<WeylGroup>(rs);
  std::size_t r = rs.rank(), nr = rs.size(), np = rs.num_positive();

  GeneratorModule mod = faithful_module(rs);
  check_generators(rs, mod);

  std::vector<Mat> h(r);
  for (std::size_t i = 0; i < r; ++i) h[i] = commutator(mod.e[i], mod.f[i]);
  std::vector<Mat> x(nr);
  for (std::size_t i = 0; i < r; ++i) {
    x[i] = mod.e[i];
    x[rs.negative(i)] = mod.f[i];
  }
  // X_xi = [X_{a_i}, X_{xi - a_i}] / (p + 1) for the first simple a_i with xi - a_i a root:
  // (a_i, xi - a_i) is the extraspecial pair and gets the positive sign.
  for (std::size_t k = r; k < np; ++k) {
    const IntVec& xi = rs.root(k);
    for (std::size_t i = 0; i < r; ++i) {
      IntVec rest = xi;
      rest[i] -= 1;
      auto idx = rs.index_of(rest);
      if (!idx || !rs.is_positive(*idx)) continue;
      long p = rs.root_string(rest, i).first;
      Cyclo8 inv(mpq_class(1, p + 1));
      x[k] = commutator(x[i], x[*idx]).scaled(inv);
      x[rs.negative(k)] = commutator(x[rs.negative(i)], x[rs.negative(*idx)]).scaled(-inv);
      break;
    }
    if (x[k].rows() == 0) throw ConsistencyError("could not reach a positive root");
  }

  la->n_.assign(nr * nr, 0);
  for (std::size_t a = 0; a < nr; ++a) {
    for (std::size_t b = 0; b < nr; ++b) {
      IntVec s = rs.root(a);
      for (std::size_t i = 0; i < r; ++i) s[i] += rs.root(b)[i];
      Mat c = commutator(x[a], x[b]);
      auto sum = rs.index_of(s);
      if (sum) {
        auto ratio = proportion(c, x[*sum]);
        if (!ratio || !ratio->is_rational() || ratio->real_rational_part().get_den() != 1) {
          throw ConsistencyError("structure constant is not an integer");
        }
        long nab = ratio->real_rational_part().get_num().get_si();
        long p = rs.root_string(rs.root(b), a).first;
        if (nab != p + 1 && nab != -(p + 1)) throw ConsistencyError("structure constant is not +-(p+1)");
        la->n_[a * nr + b] = nab;
      } else if (b == rs.negative(a)) {
        Mat expect(c.rows(), c.cols());
        for (std::size_t i = 0; i < r; ++i) expect = expect + h[i].scaled(Cyclo8(rs.coroot(a)[i]));
        if (c != expect) throw ConsistencyError("[X_a, X_-a] differs from the coroot");
      } else if (!c.is_zero()) {
        throw ConsistencyError("bracket of root vectors outside the root lattice");
      }
    }
  }

  std::size_t n = la->dim();
  la->ad_.assign(n, Mat(n, n));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t a = 0; a < nr; ++a) {
      long v = 0;
      for (std::size_t j = 0; j < r; ++j) v += rs.root(a)[j] * rs.cartan()[j][i];
      la->ad_[i](r + a, r + a) = v;
      la->ad_[r + a](r + a, i) = -v;
    }
  }
  for (std::size_t a = 0; a < nr; ++a) {
    Mat& m = la->ad_[r + a];
    std::size_t na = rs.negative(a);
    for (std::size_t i = 0; i < r; ++i) m(i, r + na) = rs.coroot(a)[i];
    for (std::size_t b = 0; b < nr; ++b) {
      long nab = la->n_[a * nr + b];
      if (nab == 0) continue;
      IntVec s = rs.root(a);
      for (std::size_t i = 0; i < r; ++i) s[i] += rs.root(b)[i];
      m(r + *rs.index_of(s), r + b) = nab;
    }
  }

  la->killing_ = Mat(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      Cyclo8 t;
      const Mat& A = la->ad_[a];
      const Mat& B = la->ad_[b];
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!A(i, j).is_zero() && !B(j, i).is_zero()) t += A(i, j) * B(j, i);
        }
      }
      la->killing_(a, b) = t;
      la->killing_(b, a) = t;
    }
  }
  return la;
}

Mat LieAlgebra::ad(const Vec& x) const {
  std::size_t n = dim();
  Mat m(n, n);
  for (std::size_t b = 0; b < n; ++b) {
    if (x[b].is_zero()) continue;
    const Mat& a = ad_[b];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(i, j).is_zero()) m(i, j) += x[b] * a(i, j);
      }
    }
  }
  return m;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const { return ad(x) * y; }

Cyclo8 LieAlgebra::killing(const Vec& x, const Vec& y) const {
  Cyclo8 s;
  std::size_t n = dim();
  for (std::size_t a = 0; a < n; ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (y[b].is_zero() || killing_(a, b).is_zero()) continue;
      s += x[a] * killing_(a, b) * y[b];
    }
  }
  return s;
}

Vec LieAlgebra::coroot_vector(std::size_t root) const {
  Vec v(dim());
  for (std::size_t i = 0; i < rank(); ++i) v[i] = rs_.coroot(root)[i];
  return v;
}

Vec LieAlgebra::cartan_vector(const std::vector<mpq_class>& h) const {
  Vec v(dim());
  for (std::size_t i = 0; i < rank(); ++i) v[i] = h[i];
  return v;
}

Mat spectral_exp(const Mat& e, const Cyclo8& unit, long power) {
  const long lo = -3, hi = 3;
  std::size_t n = e.rows();
  std::vector<Mat> pw{Mat::identity(n)};
  for (long k = 1; k <= hi - lo + 1; ++k) pw.push_back(pw.back() * e);
  // Annihilation by prod_m (E - unit m) certifies diagonalizability with the right spectrum.
  auto poly_eval = [&](const std::vector<Cyclo8>& coeffs) {
    Mat m(n, n);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (!coeffs[k].is_zero()) m = m + pw[k].scaled(coeffs[k]);
    }
    return m;
  };
  auto mul_linear = [](const std::vector<Cyclo8>& p, const Cyclo8& root) {
    std::vector<Cyclo8> q(p.size() + 1);
    for (std::size_t k = 0; k < p.size(); ++k) {
      q[k + 1] += p[k];
      q[k] -= p[k] * root;
    }
    return q;
  };
  std::vector<Cyclo8> full{Cyclo8(1)};
  for (long m = lo; m <= hi; ++m) full = mul_linear(full, unit * Cyclo8(m));
  if (!poly_eval(full).is_zero()) {
    throw ConsistencyError("spectrum of ad-element outside the expected integer set");
  }
  Mat out(n, n);
  for (long m = lo; m <= hi; ++m) {
    std::vector<Cyclo8> p{Cyclo8(1)};
    Cyclo8 denom(1);
    for (long k = lo; k <= hi; ++k) {
      if (k == m) continue;
      p = mul_linear(p, unit * Cyclo8(k));
      denom *= unit * Cyclo8(m - k);
    }
    Mat proj = poly_eval(p).scaled(denom.inverse());
    out = out + proj.scaled(Cyclo8::zeta_pow(power * m));
  }
  return out;
}

Mat LieAlgebra::cayley_matrix(std::size_t alpha) const {
  return cayley_matrix(alpha, Cyclo8(1), Cyclo8(1));
}

Mat LieAlgebra::cayley_matrix(std::size_t alpha, const Cyclo8& a, const Cyclo8& b) const {
  Vec z(dim());
  z[x_index(rs_.negative(alpha))] = a;
  z[x_index(alpha)] = -b;
  return spectral_exp(ad(z), Cyclo8::i(), 1);
}

Mat LieAlgebra::cayley_matrix_inverse(std::size_t alpha, const Cyclo8& a, const Cyclo8& b) const {
  Vec z(dim());
  z[x_index(rs_.negative(alpha))] = a;
  z[x_index(alpha)] = -b;
  return spectral_exp(ad(z), Cyclo8::i(), -1);
}

Mat LieAlgebra::exp_nilpotent(const Vec& z, const Cyclo8& t) const {
  std::size_t n = dim();
  Mat a = ad(z);
  Mat out = Mat::identity(n);
  Mat term = Mat::identity(n);
  for (std::size_t k = 1; k <= n + 1; ++k) {
    term = (term * a).scaled(t * Cyclo8(mpq_class(1, static_cast<long>(k))));
    if (term.is_zero()) return out;
    out = out + term;
  }
  throw std::invalid_argument("exp_nilpotent: ad(Z) is not nilpotent");
}

}  // namespace strataforge
