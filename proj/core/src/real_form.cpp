#include "strataforge/real_form.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace strataforge {

long grading_value(const GradingDatum& g, const IntVec& root) {
  long v = 0;
  for (std::size_t i = 0; i < root.size(); ++i) v += root[i] * g.values[i];
  return v;
}

std::string to_string(RootType t) {
  switch (t) {
    case RootType::real: return "real";
    case RootType::compact_imaginary: return "compact";
    case RootType::noncompact_imaginary: return "noncompact";
    case RootType::complex: return "complex";
  }
  return "?";
}

RealForm::RealForm(std::shared_ptr<const LieAlgebra> la, GradingDatum g) : la_(std::move(la)), g_(std::move(g)) {
  const RootSystem& rs = la_->roots();
  if (g_.values.size() != rs.rank()) throw std::invalid_argument("grading length differs from the rank");
  std::size_t n = la_->dim(), r = rs.rank();
  s_ = Mat(n, n);
  theta_ = Mat(n, n);
  for (std::size_t i = 0; i < r; ++i) {
    s_(i, i) = -1;
    theta_(i, i) = 1;
  }
  for (std::size_t a = 0; a < rs.size(); ++a) {
    long p = grading_value(a);
    // Noncompact roots: X_alpha -> X_{-alpha}; compact ones pick up a sign.
    s_(la_->x_index(rs.negative(a)), la_->x_index(a)) = (p % 2 != 0) ? 1 : -1;
    theta_(la_->x_index(a), la_->x_index(a)) = (p % 2 != 0) ? -1 : 1;
  }
}

long RealForm::grading_value(std::size_t root) const {
  return strataforge::grading_value(g_, la_->roots().root(root));
}

std::size_t CartanFrame::count(RootType t) const {
  return static_cast<std::size_t>(std::count(types.begin(), types.end(), t));
}

CartanFrame make_frame(const RealForm& rf, Mat c, Mat c_inv) {
  const LieAlgebra& la = rf.algebra();
  const RootSystem& rs = la.roots();
  std::size_t r = la.rank(), nr = rs.size();
  CartanFrame f;
  f.c = std::move(c);
  f.c_inv = std::move(c_inv);
  f.m = f.c_inv * (rf.conjugation() * f.c.conj());
  f.tau.resize(nr);
  f.tau_coeff.resize(nr);
  for (std::size_t a = 0; a < nr; ++a) {
    Vec col = f.m.column(la.x_index(a));
    std::optional<std::size_t> hit;
    for (std::size_t b = 0; b < col.size(); ++b) {
      if (col[b].is_zero()) continue;
      if (hit || la.is_cartan_index(b)) throw ConsistencyError("frame is not stable under the conjugation");
      hit = b;
    }
    if (!hit) throw ConsistencyError("conjugation kills a root vector");
    f.tau[a] = la.root_of_index(*hit);
    f.tau_coeff[a] = col[*hit];
  }
  f.tau_h.assign(r, std::vector<long>(r, 0));
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < f.m.rows(); ++k) {
      const Cyclo8& v = f.m(k, j);
      if (k >= r) {
        if (!v.is_zero()) throw ConsistencyError("conjugation does not preserve the frame's Cartan");
        continue;
      }
      if (!v.is_rational() || v.real_rational_part().get_den() != 1) {
        throw ConsistencyError("conjugation on the Cartan is not integral");
      }
      f.tau_h[k][j] = v.real_rational_part().get_num().get_si();
    }
  }
  f.types.resize(nr);
  for (std::size_t a = 0; a < nr; ++a) {
    if (f.tau[a] == a) {
      f.types[a] = RootType::real;
    } else if (f.tau[a] == rs.negative(a)) {
      // -B(X, sigma X) > 0 marks compact roots.
      Cyclo8 v = -f.tau_coeff[a] * la.killing()(la.x_index(a), la.x_index(rs.negative(a)));
      int s = v.sign_real();
      if (s == 0) throw ConsistencyError("degenerate imaginary root");
      f.types[a] = s > 0 ? RootType::compact_imaginary : RootType::noncompact_imaginary;
    } else {
      f.types[a] = RootType::complex;
    }
  }
  Mat t(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) t(i, j) = f.tau_h[i][j] - (i == j ? 1 : 0);
  }
  f.real_rank = r - t.rank();
  return f;
}

CartanFrame compact_frame(const RealForm& rf) {
  std::size_t n = rf.algebra().dim();
  return make_frame(rf, Mat::identity(n), Mat::identity(n));
}

namespace {

// mu with mu conj(mu) = 1 / c, from a small family of algebraic numbers.
Cyclo8 normalizing_scalar(const Cyclo8& c) {
  const Cyclo8 i = Cyclo8::i(), r2 = Cyclo8::sqrt2(), z = Cyclo8::zeta();
  std::vector<Cyclo8> base{1, Cyclo8(1) + i, r2, Cyclo8(1) + r2, Cyclo8(1) + z, Cyclo8(1) + z * z * z, 2, 3,
                           Cyclo8(1) + i + i, Cyclo8(2) + i};
  std::vector<Cyclo8> cands;
  for (std::size_t a = 0; a < base.size(); ++a) {
    for (std::size_t b = a; b < base.size(); ++b) {
      Cyclo8 p = base[a] * base[b];
      cands.push_back(p);
      cands.push_back(p.inverse());
    }
  }
  for (const auto& mu : cands) {
    if ((mu * mu.conj() * c).is_one()) return mu;
  }
  throw ConsistencyError("no normalizing scalar for the Cayley transform");
}

}  // namespace

CartanFrame cayley(const RealForm& rf, const CartanFrame& f, std::size_t alpha) {
  if (f.types.at(alpha) != RootType::noncompact_imaginary) {
    throw std::invalid_argument("Cayley transform needs a noncompact imaginary root");
  }
  const LieAlgebra& la = rf.algebra();
  Cyclo8 mu = normalizing_scalar(f.tau_coeff[alpha]);
  Cyclo8 mi = mu.inverse();
  Mat c = f.c * la.cayley_matrix(alpha, mi, mu);
  Mat ci = la.cayley_matrix_inverse(alpha, mi, mu) * f.c_inv;
  return make_frame(rf, std::move(c), std::move(ci));
}

bool is_theta_stable(const RealForm& rf, const CartanFrame& f) {
  Mat t = f.c_inv * rf.cartan_involution() * f.c;
  std::size_t r = rf.algebra().rank();
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = r; k < t.rows(); ++k) {
      if (!t(k, j).is_zero()) return false;
    }
  }
  return true;
}

std::string frame_signature(const RealForm& rf, const CartanFrame& f) {
  const RootSystem& rs = rf.algebra().roots();
  std::vector<std::string> parts;
  for (std::size_t a = 0; a < rs.size(); ++a) parts.push_back(to_string(f.types[a]) + ":" + rs.norm2(a).get_str());
  std::sort(parts.begin(), parts.end());
  std::ostringstream os;
  os << "rank" << f.real_rank;
  std::string last;
  std::size_t run = 0;
  auto flush = [&] {
    if (run) os << " " << last << "x" << run;
  };
  for (const auto& p : parts) {
    if (p != last) {
      flush();
      last = p;
      run = 0;
    }
    ++run;
  }
  flush();
  return os.str();
}

std::size_t CartanHasse::class_of(const std::string& signature) const {
  auto it = std::find(signatures.begin(), signatures.end(), signature);
  if (it == signatures.end()) throw ConsistencyError("Cayley transform left the known Cartan classes");
  return static_cast<std::size_t>(it - signatures.begin());
}

CartanHasse cartan_hasse(const RealForm& rf) {
  const RootSystem& rs = rf.algebra().roots();
  CartanHasse h;
  h.frames.push_back(compact_frame(rf));
  h.signatures.push_back(frame_signature(rf, h.frames[0]));
  std::vector<std::size_t> order(rs.num_positive());
  for (std::size_t a = 0; a < order.size(); ++a) order[a] = a;
  // Long roots first so that the first rank-one class comes from a long root.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rs.norm2(a) > rs.norm2(b); });
  std::map<std::pair<std::size_t, std::size_t>, bool> seen_edge;
  for (std::size_t head = 0; head < h.frames.size(); ++head) {
    for (std::size_t a : order) {
      if (h.frames[head].types[a] != RootType::noncompact_imaginary) continue;
      CartanFrame next = cayley(rf, h.frames[head], a);
      if (next.real_rank != h.frames[head].real_rank + 1) throw ConsistencyError("Cayley transform did not raise the real rank by one");
      std::string sig = frame_signature(rf, next);
      auto it = std::find(h.signatures.begin(), h.signatures.end(), sig);
      std::size_t to;
      if (it == h.signatures.end()) {
        to = h.frames.size();
        h.frames.push_back(std::move(next));
        h.signatures.push_back(sig);
      } else {
        to = static_cast<std::size_t>(it - h.signatures.begin());
      }
      if (!seen_edge[{head, to}]) {
        seen_edge[{head, to}] = true;
        h.edges.push_back({head, to, a});
      }
    }
  }
  return h;
}

}  // namespace strataforge
