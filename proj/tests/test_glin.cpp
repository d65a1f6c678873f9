#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "psv/glin.hpp"

#include <random>

using namespace psv;

namespace {

// independent 3x3 determinant over Q for f = 1 exact matrices
Rational det3_oracle(const MatF& m) {
  Rational d(0);
  int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                    {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  for (int s = 0; s < 6; ++s) {
    Rational t(s < 3 ? 1 : -1);
    for (int i = 0; i < 3; ++i)
      t *= m.at(i, perm[s][i]).exact_rational();
    d += t;
  }
  return d;
}

MatF random_mat(const PadicContext* ctx, std::mt19937& g) {
  MatF m(ctx, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      long num = static_cast<long>(g() % 19) - 9;
      long e = static_cast<long>(g() % 5) - 2;
      Rational v(num);
      for (long t = 0; t < e; ++t) v *= ctx->p();
      for (long t = 0; t > e; --t) v /= ctx->p();
      m.at(i, j) = FScalar::from_rational(ctx, v);
    }
  return m;
}

}  // namespace

TEST_CASE("determinant matches the permanent-expansion oracle") {
  PadicContext ctx(3, 1, 3);
  std::mt19937 g(11);
  for (int t = 0; t < 50; ++t) {
    MatF m = random_mat(&ctx, g);
    CHECK(m.det().exact_rational() == det3_oracle(m));
  }
  CHECK(MatF::identity(&ctx, 3).det().exact_rational() == Rational(1));
}

TEST_CASE("inverse round trip") {
  PadicContext ctx(3, 1, 3);
  std::mt19937 g(12);
  MatF id = MatF::identity(&ctx, 3);
  int done = 0;
  for (int t = 0; t < 100 && done < 25; ++t) {
    MatF m = random_mat(&ctx, g);
    if (m.det().is_exact_zero()) continue;
    ++done;
    MatF r = m * m.inverse();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK((r.at(i, j) - id.at(i, j)).is_exact_zero());
  }
  CHECK(done == 25);
}

TEST_CASE("embed3 places a 2x2 block in the upper-left corner") {
  PadicContext ctx(2, 1, 2);
  MatF m2 = MatF::from_ints(&ctx, 2, {1, 2, 3, 4});
  MatF m3 = m2.embed3();
  CHECK(m3.at(0, 1).exact_rational() == Rational(2));
  CHECK(m3.at(1, 0).exact_rational() == Rational(3));
  CHECK(m3.at(2, 2).exact_rational() == Rational(1));
  CHECK(m3.at(0, 2).is_exact_zero());
  CHECK(m3.at(2, 0).is_exact_zero());
}

TEST_CASE("Iwasawa decomposition: g = k b with certified shapes") {
  PadicContext ctx(3, 1, 4);
  std::mt19937 g(13);
  int done = 0;
  for (int t = 0; t < 200 && done < 60; ++t) {
    MatF m = random_mat(&ctx, g);
    if (m.det().is_exact_zero()) continue;
    ++done;
    IwasawaFactors io = iwasawa_decompose(m);
    MatF back = io.k * io.b;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK((back.at(i, j) - m.at(i, j)).is_exact_zero());
        CHECK(io.k.at(i, j).val_lower_bound() >= 0);
        if (i > j) CHECK(io.b.at(i, j).is_exact_zero());
      }
    CHECK(io.k.det().val().v == 0);
  }
  CHECK(done == 60);
  CHECK_THROWS(iwasawa_decompose(MatF(&ctx, 3)));  // the zero matrix
}

TEST_CASE("cell labels form the symmetric group") {
  CellLabel e = CellLabel::from_name(3, "e");
  CellLabel s1 = CellLabel::from_name(3, "s1");
  CellLabel s2 = CellLabel::from_name(3, "s2");
  CellLabel w0 = CellLabel::from_name(3, "w0");
  CHECK(s1.compose(s1) == e);
  CHECK(s2.compose(s2) == e);
  CHECK(s1.compose(s2).name() == "s1s2");
  CHECK(s2.compose(s1).name() == "s2s1");
  CHECK(s1.compose(s2).compose(s1) == w0);
  CHECK(s2.compose(s1).compose(s2) == w0);
  CHECK(s1.compose(s2).inverse() == s2.compose(s1));
  CHECK(e.length() == 0);
  CHECK(s1.length() == 1);
  CHECK(s1.compose(s2).length() == 2);
  CHECK(w0.length() == 3);
  for (const std::string& nm : {"e", "s1", "s2", "s1s2", "s2s1", "w0"})
    CHECK(CellLabel::from_name(3, nm).name() == nm);
}

TEST_CASE("Weyl representatives land in their own cells") {
  PadicContext ctx(3, 1, 2);
  auto reps = weyl_reps(&ctx, 3);
  CHECK(reps.size() == 6);
  for (const auto& [lab, m] : reps) {
    CHECK(m.det().val().v == 0);
    CHECK(iwahori_cell(m) == lab);
  }
}

TEST_CASE("cell label is invariant under I on the left and B on the right") {
  PadicContext ctx(3, 1, 3);
  std::mt19937 g(17);
  auto rnd = [&](long n) { return static_cast<long>(g() % n); };
  for (const auto& [lab, w] : weyl_reps(&ctx, 3)) {
    for (int t = 0; t < 20; ++t) {
      // i in the Iwahori: unit diagonal units, integral above, (p) below
      MatF i(&ctx, 3), b(&ctx, 3);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          long u;
          if (r == c) u = 1 + 3 * rnd(3);          // unit
          else if (r < c) u = rnd(9);              // integral
          else u = 3 * rnd(3);                     // in (p)
          i.at(r, c) = FScalar::from_rational(&ctx, u);
          long v;
          if (r == c) v = 2;                       // unit (p = 3)
          else if (r < c) v = rnd(9);
          else v = 0;
          b.at(r, c) = FScalar::from_rational(&ctx, v);
        }
      CHECK(iwahori_cell(i * w * b) == lab);
    }
  }
}
