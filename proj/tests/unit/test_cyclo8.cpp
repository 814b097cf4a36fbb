#include "doctest.h"
#include "test_support.hpp"

using strataforge::Cyclo8;

TEST_CASE("cyclotomic unit identities") {
  Cyclo8 z = Cyclo8::zeta();
  CHECK(z * z * z * z == Cyclo8(-1));
  CHECK(z * Cyclo8::zeta_pow(3) == Cyclo8(-1));
  CHECK(z.inverse() == -Cyclo8::zeta_pow(3));
  CHECK((Cyclo8(1) + Cyclo8::i()) * (Cyclo8(1) - Cyclo8::i()) == Cyclo8(2));
  CHECK(Cyclo8::sqrt2() * Cyclo8::sqrt2() == Cyclo8(2));
  CHECK(Cyclo8::zeta_pow(8).is_one());
  CHECK(Cyclo8::zeta_pow(-1) == Cyclo8::zeta_pow(7));
}

TEST_CASE("conjugation fixes the real subfield") {
  CHECK(Cyclo8::i().conj() == -Cyclo8::i());
  CHECK(Cyclo8(mpq_class(3, 2)).conj() == Cyclo8(mpq_class(3, 2)));
  CHECK(Cyclo8::sqrt2().conj() == Cyclo8::sqrt2());
  CHECK(Cyclo8::sqrt2().is_real());
  CHECK_FALSE(Cyclo8::zeta().is_real());
}

TEST_CASE("exact sign on the real subfield") {
  Cyclo8 r2 = Cyclo8::sqrt2();
  CHECK((Cyclo8(1) - r2).sign_real() == -1);
  CHECK(Cyclo8(0).sign_real() == 0);
  CHECK((Cyclo8(3) - Cyclo8(2) * r2).sign_real() == 1);
  CHECK((Cyclo8(-3) + Cyclo8(2) * r2).sign_real() == -1);
  CHECK_THROWS_AS((void)Cyclo8::i().sign_real(), strataforge::NotReal);
  CHECK_THROWS_AS((void)Cyclo8(0).inverse(), strataforge::DivisionByZero);
}

TEST_CASE("textual rendering") {
  Cyclo8 x(mpq_class(1, 2), 0, -3, 1);
  CHECK(x.to_string() == "1/2 + 0*z + -3*z^2 + 1*z^3");
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(20240611);
  for (int t = 0; t < 250; ++t) {
    Cyclo8 a = test_support::random_cyclo(rng), b = test_support::random_cyclo(rng),
           c = test_support::random_cyclo(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == Cyclo8(0));
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
  }
}

TEST_CASE("conjugation is an involutive automorphism") {
  std::mt19937 rng(7);
  for (int t = 0; t < 250; ++t) {
    Cyclo8 a = test_support::random_cyclo(rng), b = test_support::random_cyclo(rng);
    CHECK(a.conj().conj() == a);
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK((a + b).conj() == a.conj() + b.conj());
    CHECK((a * a.conj()).is_real());
  }
}

TEST_CASE("squares of real elements are nonnegative") {
  std::mt19937 rng(11);
  for (int t = 0; t < 250; ++t) {
    Cyclo8 x = test_support::random_real(rng);
    int s = (x * x).sign_real();
    CHECK(s >= 0);
    CHECK((s == 0) == x.is_zero());
  }
}
