#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "psv/cyclo.hpp"

using namespace psv;

TEST_CASE("roots of unity satisfy their defining relations") {
  CHECK(Cyclo::zeta(4).pow(2) == Cyclo(-1L));
  CHECK(Cyclo::zeta(3).pow(3) == Cyclo(1L));
  CHECK(Cyclo::zeta(1) == Cyclo(1L));
  CHECK(Cyclo::zeta(2) == Cyclo(-1L));
  CHECK(Cyclo(1L) + Cyclo::zeta(3) + Cyclo::zeta(3, 2) == Cyclo(0L));
  // zeta_6 = -zeta_3^2
  CHECK(Cyclo::zeta(6) == -Cyclo::zeta(3, 2));
  // zeta_8^2 = zeta_4
  CHECK(Cyclo::zeta(8).pow(2) == Cyclo::zeta(4));
  // negative powers wrap
  CHECK(Cyclo::zeta(5, -1) == Cyclo::zeta(5, 4));
}

TEST_CASE("field axioms on sampled elements") {
  std::vector<Cyclo> samples = {
      Cyclo(Rational(1, 2)), Cyclo(-3L), Cyclo::zeta(3),
      Cyclo(Rational(2, 5)) * Cyclo::zeta(8, 3),
      Cyclo(1L) + Cyclo::zeta(5), Cyclo::zeta(4) - Cyclo(Rational(7, 3))};
  for (const Cyclo& a : samples)
    for (const Cyclo& b : samples) {
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      for (const Cyclo& c : samples)
        CHECK((a + b) * c == a * c + b * c);
      if (!b.is_zero()) CHECK((a / b) * b == a);
    }
  for (const Cyclo& a : samples)
    if (!a.is_zero()) CHECK(a * a.inverse() == Cyclo(1L));
}

TEST_CASE("mixed-order arithmetic coerces and shrinks back") {
  Cyclo x = Cyclo::zeta(3) * Cyclo::zeta(4);  // order 12 monomial
  CHECK(x.pow(12) == Cyclo(1L));
  CHECK(x.order() == 12);
  // zeta_3 * zeta_3^2 collapses to a rational
  Cyclo y = Cyclo::zeta(3) * Cyclo::zeta(3, 2);
  CHECK(y.is_rational());
  CHECK(y.rational_value() == Rational(1));
}

TEST_CASE("monomial decomposition") {
  auto m = (Cyclo(Rational(3, 2)) * Cyclo::zeta(5, 2)).as_monomial();
  REQUIRE(m.has_value());
  CHECK(Cyclo(m->scale) * Cyclo::zeta(m->root_order, m->root_pow) ==
        Cyclo(Rational(3, 2)) * Cyclo::zeta(5, 2));
  CHECK(m->scale == Rational(3, 2));
  // 1 + zeta_3 = -zeta_3^2 is still a monomial
  CHECK((Cyclo(1L) + Cyclo::zeta(3)).as_monomial().has_value());
  // 1 + zeta_8 is not
  CHECK(!(Cyclo(1L) + Cyclo::zeta(8)).as_monomial().has_value());
  // zero decomposes with scale 0
  auto z = Cyclo(0L).as_monomial();
  REQUIRE(z.has_value());
  CHECK(z->scale == Rational(0));
}

TEST_CASE("p-adic valuation of monomials") {
  CHECK(padic_valuation(Cyclo(Rational(18, 5)), 3) == PadicVal::of(2));
  CHECK(padic_valuation(Cyclo(Rational(5, 12)), 2) == PadicVal::of(-2));
  CHECK(padic_valuation(Cyclo(0L), 7) == PadicVal::inf());
  CHECK(padic_valuation(Cyclo(8L) * Cyclo::zeta(3), 2) == PadicVal::of(3));
  // roots of unity of order prime to p are units
  CHECK(padic_valuation(Cyclo(1L) + Cyclo::zeta(3), 5) == PadicVal::of(0));
  // order divisible by p is refused rather than silently resolved
  CHECK_THROWS_AS(padic_valuation(Cyclo::zeta(3), 3), CycloError);
  // non-monomial elements are refused
  CHECK_THROWS_AS(padic_valuation(Cyclo(1L) + Cyclo::zeta(8), 2), CycloError);
}

TEST_CASE("exact kernel and rank") {
  CycloMatrix m(2, 2);
  m.at(0, 0) = Cyclo(1L);
  m.at(0, 1) = Cyclo(2L);
  m.at(1, 0) = Cyclo(2L);
  m.at(1, 1) = Cyclo(4L);
  auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  CHECK(m.at(0, 0) * ker[0][0] + m.at(0, 1) * ker[0][1] == Cyclo(0L));
  CHECK(exact_rank(m) == 1);

  CycloMatrix id(3, 3);
  for (int i = 0; i < 3; ++i) id.at(i, i) = Cyclo(1L);
  CHECK(kernel_basis(id).empty());
  CHECK(exact_rank(id) == 3);

  // second row is zeta_3 times the first: rank one over the field
  CycloMatrix z(2, 2);
  z.at(0, 0) = Cyclo(1L);
  z.at(0, 1) = Cyclo::zeta(3);
  z.at(1, 0) = Cyclo::zeta(3);
  z.at(1, 1) = Cyclo::zeta(3, 2);
  CHECK(exact_rank(z) == 1);
  auto kz = kernel_basis(z);
  REQUIRE(kz.size() == 1);
  CHECK(z.at(1, 0) * kz[0][0] + z.at(1, 1) * kz[0][1] == Cyclo(0L));
}
