#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace strataforge {

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero in Q(zeta8)") {}
};

struct NotReal : std::domain_error {
  explicit NotReal(const std::string& what) : std::domain_error(what) {}
};

// Element c0 + c1 z + c2 z^2 + c3 z^3 of Q(z), z = exp(i pi / 4), z^4 = -1.
// Under this embedding z^2 = i and z - z^3 = sqrt(2).
class Cyclo8 {
 public:
  Cyclo8() = default;
  Cyclo8(long n) { c_[0] = n; }  // NOLINT implicit from integers is convenient
  Cyclo8(const mpq_class& q) {  // NOLINT
    c_[0] = q;
    c_[0].canonicalize();
  }
  Cyclo8(mpq_class a, mpq_class b, mpq_class c, mpq_class d);

  static Cyclo8 zeta() { return {0, 1, 0, 0}; }
  static Cyclo8 i() { return {0, 0, 1, 0}; }
  static Cyclo8 sqrt2() { return {0, 1, 0, -1}; }
  // z^k for any integer k.
  static Cyclo8 zeta_pow(long k);

  const mpq_class& operator[](int k) const { return c_[k]; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  bool is_real() const;

  Cyclo8 conj() const;
  // Galois automorphism z -> z^k for k odd.
  Cyclo8 galois(int k) const;
  std::optional<Cyclo8> try_inverse() const;
  Cyclo8 inverse() const;

  // Exact sign of a real element; throws NotReal otherwise.
  int sign_real() const;
  // Rational part and sqrt(2)-coefficient of a real element.
  mpq_class real_rational_part() const { return c_[0]; }
  mpq_class real_sqrt2_part() const { return c_[1]; }

  Cyclo8& operator+=(const Cyclo8& o);
  Cyclo8& operator-=(const Cyclo8& o);
  Cyclo8& operator*=(const Cyclo8& o);
  Cyclo8& operator/=(const Cyclo8& o) { return *this *= o.inverse(); }

  friend Cyclo8 operator+(Cyclo8 a, const Cyclo8& b) { return a += b; }
  friend Cyclo8 operator-(Cyclo8 a, const Cyclo8& b) { return a -= b; }
  friend Cyclo8 operator*(Cyclo8 a, const Cyclo8& b) { return a *= b; }
  friend Cyclo8 operator/(Cyclo8 a, const Cyclo8& b) { return a /= b; }
  Cyclo8 operator-() const;

  friend bool operator==(const Cyclo8& a, const Cyclo8& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Cyclo8& a, const Cyclo8& b) { return !(a == b); }
  // Total order on coefficient tuples, only for canonical sorting.
  friend bool operator<(const Cyclo8& a, const Cyclo8& b) { return a.c_ < b.c_; }

  // "a + b*z + c*z^2 + d*z^3" with exact rationals.
  std::string to_string() const;
  // Shorter human form, e.g. "1/2 - z^3".
  std::string pretty() const;

 private:
  std::array<mpq_class, 4> c_;
};

}  // namespace strataforge
