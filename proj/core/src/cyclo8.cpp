#include "strataforge/cyclo8.hpp"

#include <sstream>

namespace strataforge {

Cyclo8::Cyclo8(mpq_class a, mpq_class b, mpq_class c, mpq_class d) {
  c_[0] = std::move(a);
  c_[1] = std::move(b);
  c_[2] = std::move(c);
  c_[3] = std::move(d);
  for (auto& q : c_) q.canonicalize();
}

Cyclo8 Cyclo8::zeta_pow(long k) {
  long m = ((k % 8) + 8) % 8;
  Cyclo8 r;
  if (m < 4) {
    r.c_[m] = 1;
  } else {
    r.c_[m - 4] = -1;
  }
  return r;
}

bool Cyclo8::is_zero() const {
  return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
}

bool Cyclo8::is_one() const {
  return c_[0] == 1 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
}

bool Cyclo8::is_rational() const {
  return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
}

bool Cyclo8::is_real() const { return sgn(c_[2]) == 0 && c_[1] == -c_[3]; }

Cyclo8 Cyclo8::galois(int k) const {
  Cyclo8 r;
  r.c_[0] = c_[0];
  for (int e = 1; e < 4; ++e) {
    if (sgn(c_[e]) == 0) continue;
    int m = (e * k) % 8;
    if (m < 0) m += 8;
    if (m < 4) {
      r.c_[m] += c_[e];
    } else {
      r.c_[m - 4] -= c_[e];
    }
  }
  return r;
}

Cyclo8 Cyclo8::conj() const {
  // z -> z^7 = -z^3, z^2 -> -z^2, z^3 -> -z
  Cyclo8 r;
  r.c_[0] = c_[0];
  r.c_[1] = -c_[3];
  r.c_[2] = -c_[2];
  r.c_[3] = -c_[1];
  return r;
}

std::optional<Cyclo8> Cyclo8::try_inverse() const {
  if (is_zero()) return std::nullopt;
  if (is_rational()) return Cyclo8(mpq_class(1) / c_[0]);
  Cyclo8 s5 = galois(5);
  Cyclo8 y = *this * s5;        // lies in Q(i)
  Cyclo8 ys = y.galois(3);      // conjugate of y in Q(i)
  Cyclo8 n = y * ys;            // rational norm
  mpq_class inv_n = mpq_class(1) / n.c_[0];
  Cyclo8 r = s5 * ys;
  for (auto& q : r.c_) q *= inv_n;
  return r;
}

Cyclo8 Cyclo8::inverse() const {
  auto r = try_inverse();
  if (!r) throw DivisionByZero();
  return *r;
}

int Cyclo8::sign_real() const {
  if (!is_real()) throw NotReal("sign_real on non-real element " + to_string());
  // x = a + b sqrt(2)
  int sa = sgn(c_[0]);
  int sb = sgn(c_[1]);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  mpq_class a2 = c_[0] * c_[0];
  mpq_class b2 = 2 * c_[1] * c_[1];
  int cmp = ::cmp(a2, b2);
  if (cmp == 0) return 0;  // unreachable for rational a, b, kept for totality
  return cmp > 0 ? sa : sb;
}

Cyclo8& Cyclo8::operator+=(const Cyclo8& o) {
  for (int k = 0; k < 4; ++k) {
    if (sgn(o.c_[k]) != 0) c_[k] += o.c_[k];
  }
  return *this;
}

Cyclo8& Cyclo8::operator-=(const Cyclo8& o) {
  for (int k = 0; k < 4; ++k) {
    if (sgn(o.c_[k]) != 0) c_[k] -= o.c_[k];
  }
  return *this;
}

Cyclo8& Cyclo8::operator*=(const Cyclo8& o) {
  if (o.is_rational()) {
    for (auto& q : c_) {
      if (sgn(q) != 0) q *= o.c_[0];
    }
    return *this;
  }
  if (is_rational()) {
    mpq_class s = c_[0];
    for (int k = 0; k < 4; ++k) c_[k] = s * o.c_[k];
    return *this;
  }
  std::array<mpq_class, 4> r;
  for (int a = 0; a < 4; ++a) {
    if (sgn(c_[a]) == 0) continue;
    for (int b = 0; b < 4; ++b) {
      if (sgn(o.c_[b]) == 0) continue;
      int e = a + b;
      if (e < 4) {
        r[e] += c_[a] * o.c_[b];
      } else {
        r[e - 4] -= c_[a] * o.c_[b];
      }
    }
  }
  c_ = std::move(r);
  return *this;
}

Cyclo8 Cyclo8::operator-() const {
  Cyclo8 r;
  for (int k = 0; k < 4; ++k) r.c_[k] = -c_[k];
  return r;
}

std::string Cyclo8::to_string() const {
  std::ostringstream os;
  os << c_[0].get_str() << " + " << c_[1].get_str() << "*z + " << c_[2].get_str()
     << "*z^2 + " << c_[3].get_str() << "*z^3";
  return os.str();
}

std::string Cyclo8::pretty() const {
  static const char* names[4] = {"", "z", "z^2", "z^3"};
  std::string out;
  for (int k = 0; k < 4; ++k) {
    if (sgn(c_[k]) == 0) continue;
    mpq_class a = abs(c_[k]);
    bool neg = sgn(c_[k]) < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (k == 0) {
      out += a.get_str();
    } else if (a == 1) {
      out += names[k];
    } else {
      out += a.get_str() + "*" + names[k];
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace strataforge
