#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "psv/criterion.hpp"

using namespace psv;

namespace {

PadicContext ctx(3, 1, 2);

CharDatum D(const Cyclo& at_unif, long e) {
  return {SmoothChar::unramified(&ctx, at_unif), {{e}}};
}

CharDatum DR(const Cyclo& at_unif, long e) {
  for (const UnitChar& uc : enumerate_unit_characters(ctx.ring(1)))
    if (!uc.is_trivial()) return {SmoothChar::make(&ctx, at_unif, uc), {{e}}};
  throw std::runtime_error("no ramified character");
}

}  // namespace

TEST_CASE("rank-2 decision") {
  CHECK(decide_gl2(CharTuple::make({D(Cyclo(2L), 0), D(Cyclo(2L), 0)}))
            .decision == Decision::Reducible);
  CHECK(decide_gl2(CharTuple::make({D(Cyclo(1L), -3), D(Cyclo(1L), 0)}))
            .decision == Decision::Reducible);
  CHECK(decide_gl2(CharTuple::make({D(Cyclo(1L), 1), D(Cyclo(1L), 0)}))
            .decision == Decision::Irreducible);
  CHECK(decide_gl2(CharTuple::make({D(Cyclo(5L), 0), D(Cyclo(2L), 0)}))
            .decision == Decision::Irreducible);
  CHECK(decide_gl2(CharTuple::make({DR(Cyclo(1L), 0), D(Cyclo(1L), 0)}))
            .decision == Decision::Irreducible);
  Verdict v =
      decide_gl2(CharTuple::make({D(Cyclo(7L), -1), D(Cyclo(7L), 2)}));
  REQUIRE(v.decision == Decision::Reducible);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->first == 1);
  CHECK(v.witness->second == std::vector<long>{-3});
}

TEST_CASE("rank-3 decision looks at both adjacent ratios") {
  auto t = [](CharDatum a, CharDatum b, CharDatum c) {
    return CharTuple::make({std::move(a), std::move(b), std::move(c)});
  };
  CHECK(decide_gl3(t(D(Cyclo(1L), 0), D(Cyclo(2L), 0), D(Cyclo(3L), 0)))
            .decision == Decision::Irreducible);
  CHECK(decide_gl3(t(D(Cyclo(2L), 0), D(Cyclo(2L), 0), D(Cyclo(3L), 0)))
            .decision == Decision::Reducible);
  Verdict v =
      decide_gl3(t(D(Cyclo(5L), 0), D(Cyclo(3L), -1), D(Cyclo(3L), 0)));
  REQUIRE(v.decision == Decision::Reducible);
  CHECK(v.witness->first == 2);
  // a non-positive outer ratio alone proves nothing
  CHECK(decide_gl3(t(D(Cyclo(2L), -1), D(Cyclo(3L), 0), D(Cyclo(2L), 0)))
            .decision == Decision::Irreducible);
  CHECK_THROWS_AS(decide_gl3(CharTuple::make({D(Cyclo(1L), 0)})),
                  CriterionError);
}

TEST_CASE("the parabolic of the exponent pattern") {
  auto part = [](long a, long b, long c) {
    return q_parabolic(CharTuple::make(
                           {D(Cyclo(1L), a), D(Cyclo(2L), b), D(Cyclo(3L), c)}))
        .name();
  };
  CHECK(part(0, 0, 0) == "G");
  CHECK(part(-1, 0, 1) == "G");
  CHECK(part(1, 0, 0) == "1+2");
  CHECK(part(0, 1, 0) == "2+1");
  CHECK(part(2, 1, 0) == "B");
  // smooth parts never influence the parabolic
  CHECK(q_parabolic(CharTuple::make({DR(Cyclo(5L), 1), D(Cyclo(7L), 0),
                                     D(Cyclo(2L), 0)}))
            .name() == "1+2");
}

TEST_CASE("rank-n criterion is one-directional") {
  Cyclo iq(Rational(1, 3));  // |varpi| at q = 3
  // generic: irreducible
  CHECK(decide_gln(CharTuple::make({D(Cyclo(1L), 0), D(Cyclo(2L), 0),
                                    D(Cyclo(5L), 0)}))
            .decision == GlnDecision::Irreducible);
  // chi1 chi3^{-1} = |.| within a block of size 3 and j - i = 2: excluded,
  // still irreducible by the block-size-3 adjacency rule
  CHECK(decide_gln(CharTuple::make({D(iq, 0), D(Cyclo(2L), 0),
                                    D(Cyclo(1L), 0)}))
            .decision == GlnDecision::Irreducible);
  // the same pair inside a 4-block is a genuine violation
  GlnVerdict v = decide_gln(CharTuple::make(
      {D(iq, 0), D(Cyclo(2L), 0), D(Cyclo(1L), 0), D(Cyclo(7L), 0)}));
  REQUIRE(v.decision == GlnDecision::Inconclusive);
  REQUIRE(v.witness.has_value());
  CHECK((*v.witness)[1] == 1);
  CHECK((*v.witness)[2] == 3);
  // adjacent equality violates in any block
  CHECK(decide_gln(CharTuple::make({D(Cyclo(2L), 0), D(Cyclo(2L), 0)}))
            .decision == GlnDecision::Inconclusive);
}

TEST_CASE("involution and twisting preserve decisions") {
  std::vector<CharTuple> tuples;
  tuples.push_back(CharTuple::make(
      {D(Cyclo(1L), -1), D(Cyclo(1L), 0), D(Cyclo(2L), 1)}));
  tuples.push_back(CharTuple::make(
      {DR(Cyclo(2L), 0), D(Cyclo(5L), 1), D(Cyclo(7L), -2)}));
  tuples.push_back(CharTuple::make(
      {D(Cyclo(3L), 2), D(Cyclo(3L), 2), D(Cyclo(1L), 0)}));
  CharDatum tw = DR(Cyclo(Rational(2, 5)), 3);
  for (const CharTuple& t : tuples) {
    Verdict base = decide_gl3(t);
    CHECK(decide_gl3(iota_transform(t)).decision == base.decision);
    CHECK(decide_gl3(twist(t, tw)).decision == base.decision);
    CHECK(decide_gl3(iota_transform(iota_transform(t))).decision ==
          base.decision);
    // iota is an involution entry-wise
    CharTuple tt = iota_transform(iota_transform(t));
    for (int i = 0; i < t.n(); ++i)
      CHECK(tt.entries[static_cast<size_t>(i)] ==
            t.entries[static_cast<size_t>(i)]);
  }
}

TEST_CASE("geometric lemma character bookkeeping") {
  std::array<SmoothChar, 3> chi = {SmoothChar::unramified(&ctx, Cyclo(2L)),
                                   SmoothChar::unramified(&ctx, Cyclo(3L)),
                                   SmoothChar::unramified(&ctx, Cyclo(5L))};
  GeomLemmaChars g = geometric_lemma_chars(chi);
  SmoothChar nm = SmoothChar::norm_char(&ctx);
  CHECK(g.chi_prime[0] == chi[0]);
  CHECK(g.chi_prime[1] == char_mul(chi[2], nm));
  CHECK(g.chi_prime[2] == char_mul(chi[1], char_inv(nm)));
  CHECK(g.chi_dprime[0] == char_mul(chi[1], nm));
  CHECK(g.chi_dprime[1] == char_mul(chi[2], nm));
  CHECK(g.chi_dprime[2] == char_mul(chi[0], char_pow(char_inv(nm), 2)));
  CHECK(g.zl_distinct_prime);   // chi2 != chi3 |.|
  CHECK(g.zl_distinct_dprime);  // chi1 != chi3 |.|^2
  // degenerate flags trip exactly on the collisions
  std::array<SmoothChar, 3> bad1 = {
      chi[0], char_mul(chi[2], nm), chi[2]};  // chi2 = chi3 |.|
  CHECK(!geometric_lemma_chars(bad1).zl_distinct_prime);
  std::array<SmoothChar, 3> bad2 = {
      char_mul(chi[2], char_pow(nm, 2)), chi[1], chi[2]};
  CHECK(!geometric_lemma_chars(bad2).zl_distinct_dprime);
}
