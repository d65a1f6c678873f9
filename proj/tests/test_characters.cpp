#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "psv/characters.hpp"

using namespace psv;

namespace {

std::vector<FScalar> sample_points(const PadicContext* ctx) {
  std::vector<FScalar> xs;
  for (long v : {1L, 2L, 4L, 5L, 7L, -1L, -5L})
    xs.push_back(FScalar::from_rational(ctx, Rational(v)));
  xs.push_back(FScalar::from_rational(ctx, Rational(1, 3)));
  xs.push_back(FScalar::from_rational(ctx, Rational(9, 5)));
  xs.push_back(FScalar::from_rational(ctx, Rational(2, 27)));
  return xs;
}

}  // namespace

TEST_CASE("characters are multiplicative on F^x") {
  PadicContext ctx(3, 1, 3);
  std::vector<SmoothChar> chars = {
      SmoothChar::trivial(&ctx), SmoothChar::unramified(&ctx, Cyclo(5L)),
      SmoothChar::norm_char(&ctx)};
  for (const UnitChar& uc : enumerate_unit_characters(ctx.ring(2)))
    chars.push_back(SmoothChar::make(&ctx, Cyclo(Rational(2, 7)), uc));
  std::vector<FScalar> xs = sample_points(&ctx);
  for (const SmoothChar& chi : chars)
    for (const FScalar& x : xs)
      for (const FScalar& y : xs)
        CHECK(char_eval(chi, x * y) == char_eval(chi, x) * char_eval(chi, y));
}

TEST_CASE("the norm character") {
  PadicContext ctx(3, 1, 2);
  SmoothChar nm = SmoothChar::norm_char(&ctx);
  CHECK(char_eval(nm, FScalar::uniformizer_pow(&ctx, 1)) ==
        Cyclo(Rational(1, 3)));
  CHECK(char_eval(nm, FScalar::from_rational(&ctx, 5)) == Cyclo(1L));
  CHECK(char_eval(nm, FScalar::from_rational(&ctx, Rational(2, 9))) ==
        Cyclo(9L));
  PadicContext ctx2(2, 2, 2);  // |varpi| = 1/q = 1/4
  CHECK(char_eval(SmoothChar::norm_char(&ctx2),
                  FScalar::uniformizer_pow(&ctx2, 1)) == Cyclo(Rational(1, 4)));
}

TEST_CASE("product and inverse evaluate pointwise") {
  PadicContext ctx(3, 1, 3);
  UnitChar uc;
  for (const UnitChar& c : enumerate_unit_characters(ctx.ring(1)))
    if (!c.is_trivial()) uc = c;
  SmoothChar a = SmoothChar::make(&ctx, Cyclo(2L), uc);
  SmoothChar b = SmoothChar::unramified(&ctx, Cyclo(Rational(1, 5)));
  SmoothChar ab = char_mul(a, b);
  SmoothChar ai = char_inv(a);
  CHECK(a.conductor == 1);
  CHECK(ab.conductor == 1);
  CHECK(char_mul(a, ai).is_trivial());
  for (const FScalar& x : sample_points(&ctx)) {
    CHECK(char_eval(ab, x) == char_eval(a, x) * char_eval(b, x));
    CHECK(char_eval(ai, x) == char_eval(a, x).inverse());
    CHECK(char_eval(char_pow(a, 3), x) == char_eval(a, x).pow(3));
  }
  // ramified square of a quadratic character is unramified
  CHECK(char_mul(a, a).conductor == 0);
}

TEST_CASE("unit evaluation agrees with lifts") {
  PadicContext ctx(3, 1, 2);
  ResidueRing r = ctx.ring(2);
  for (const UnitChar& uc : enumerate_unit_characters(r)) {
    SmoothChar chi = SmoothChar::make(&ctx, Cyclo(7L), uc);
    for (const RElem& u : r.units())
      CHECK(char_eval_unit(chi, r, u) ==
            char_eval(chi, FScalar::from_relem(&ctx, r, u)));
  }
}

TEST_CASE("non-positive algebraic detection") {
  PadicContext ctx(3, 2, 1);
  CharDatum d;
  d.smooth = SmoothChar::trivial(&ctx);
  d.algebraic.exponents = {0, -2};
  NonPositiveResult r = is_non_positive_algebraic(d);
  CHECK(r.ok);
  CHECK(r.witness == std::vector<long>{0, -2});

  d.algebraic.exponents = {0, 1};
  CHECK(!is_non_positive_algebraic(d).ok);

  d.algebraic.exponents = {-1, -1};
  d.smooth = SmoothChar::unramified(&ctx, Cyclo(2L));
  CHECK(!is_non_positive_algebraic(d).ok);  // nontrivial smooth part

  UnitChar uc;
  for (const UnitChar& c : enumerate_unit_characters(ctx.ring(1)))
    if (!c.is_trivial()) uc = c;
  d.smooth = SmoothChar::make(&ctx, Cyclo(1L), uc);
  CHECK(!is_non_positive_algebraic(d).ok);  // ramified smooth part
}

TEST_CASE("datum arithmetic") {
  PadicContext ctx(3, 1, 1);
  CharDatum a{SmoothChar::unramified(&ctx, Cyclo(2L)), {{3}}};
  CharDatum b{SmoothChar::unramified(&ctx, Cyclo(5L)), {{-1}}};
  CharDatum ab = datum_mul(a, b);
  CHECK(ab.smooth.at_uniformizer == Cyclo(10L));
  CHECK(ab.algebraic.exponents == std::vector<long>{2});
  CharDatum e = datum_mul(a, datum_inv(a));
  CHECK(e.smooth.is_trivial());
  CHECK(e.algebraic.is_zero());
}
