#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "psv/prinseries.hpp"

#include <random>

using namespace psv;

namespace {

std::array<SmoothChar, 3> generic_chi(const PadicContext* ctx) {
  return {SmoothChar::trivial(ctx), SmoothChar::unramified(ctx, Cyclo(3L)),
          SmoothChar::unramified(ctx, Cyclo(5L))};
}

MatF random_invertible(const PadicContext* ctx, std::mt19937& g) {
  for (;;) {
    MatF m(ctx, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m.at(i, j) = FScalar::from_rational(
            ctx, Rational(static_cast<long>(g() % 19) - 9));
    if (!m.det().is_exact_zero() && m.det().val().v == 0) return m;
  }
}

PSVector random_vector(const FlagModel& fm, const std::array<SmoothChar, 3>& chi,
                       std::mt19937& g) {
  PSVector f;
  f.model = &fm;
  f.chi = chi;
  f.values.resize(fm.size());
  for (Cyclo& v : f.values)
    v = Cyclo(Rational(static_cast<long>(g() % 11) - 5));
  return f;
}

}  // namespace

TEST_CASE("flag model size is (q^2+q+1)(q+1) q^{3(M-1)}") {
  for (auto [p, M, want] :
       {std::array<long, 3>{2, 1, 21}, {3, 1, 52}, {2, 2, 168}}) {
    PadicContext ctx(p, 1, static_cast<int>(M));
    CHECK(FlagModel::build(&ctx, 3, static_cast<int>(M)).size() ==
          static_cast<size_t>(want));
  }
  PadicContext ctx(2, 1, 2);
  CHECK(FlagModel::build(&ctx, 2, 2).size() == 6);  // (q+1) q^{M-1}
}

TEST_CASE("evaluation satisfies the defining cocycle f(gb) = chi(b)^{-1} f(g)") {
  PadicContext ctx(3, 1, 2);
  FlagModel fm = FlagModel::build(&ctx, 3, 2);
  auto chi = generic_chi(&ctx);
  std::mt19937 g(5);
  PSVector f = random_vector(fm, chi, g);
  auto rnd = [&](long n) { return static_cast<long>(g() % n); };
  for (int t = 0; t < 40; ++t) {
    MatF m = random_invertible(&ctx, g);
    // b upper triangular, diagonal varpi^{e_i} u_i
    MatF b(&ctx, 3);
    Cyclo factor(1L);
    for (int i = 0; i < 3; ++i) {
      long e = rnd(3) - 1;
      long u = 1 + 3 * rnd(3);
      FScalar d = FScalar::uniformizer_pow(&ctx, e) *
                  FScalar::from_rational(&ctx, u);
      b.at(i, i) = d;
      factor *= char_eval(chi[static_cast<size_t>(i)], d);
      for (int j = i + 1; j < 3; ++j)
        b.at(i, j) = FScalar::from_rational(&ctx, rnd(9));
    }
    CHECK(ps_eval(f, m * b) == factor.inverse() * ps_eval(f, m));
  }
}

TEST_CASE("the left action composes and ps_eval_right inverts") {
  PadicContext ctx(2, 1, 2);
  FlagModel fm = FlagModel::build(&ctx, 3, 2);
  auto chi = generic_chi(&ctx);
  std::mt19937 g(6);
  PSVector f = random_vector(fm, chi, g);
  for (int t = 0; t < 10; ++t) {
    MatF g1 = random_invertible(&ctx, g);
    MatF g2 = random_invertible(&ctx, g);
    PSVector lhs = group_act(g1 * g2, f);
    PSVector rhs = group_act(g1, group_act(g2, f));
    CHECK((lhs - rhs).is_zero());
    CHECK(ps_eval(group_act(g1, f), g2) == ps_eval(f, g1.inverse() * g2));
    CHECK(ps_eval_right(f, g1) == ps_eval(f, g1.inverse()));
  }
  CHECK((group_act(MatF::identity(&ctx, 3), f) - f).is_zero());
}

TEST_CASE("Hecke indices") {
  PadicContext ctx(3, 1, 2);
  MatF z1 = MatF::identity(&ctx, 3);
  z1.at(0, 0) = FScalar::uniformizer_pow(&ctx, 1);
  z1.at(1, 1) = FScalar::uniformizer_pow(&ctx, 1);
  CHECK(hecke_index(z1) == 9);
  MatF z2 = MatF::identity(&ctx, 3);
  z2.at(0, 0) = FScalar::uniformizer_pow(&ctx, 2);
  z2.at(1, 1) = FScalar::uniformizer_pow(&ctx, 2);
  CHECK(hecke_index(z2) == 81);
}

TEST_CASE("eigenspace: dimension and the eigen-relation itself") {
  PadicContext ctx(3, 1, 2);
  FlagModel fm = FlagModel::build(&ctx, 3, 2);
  auto chi = generic_chi(&ctx);
  std::vector<PSVector> eig = zlplus_eigenspace(fm, chi);
  CHECK(eig.size() == 12);  // (q+1) q^{M-1}
  MatF z1 = MatF::identity(&ctx, 3);
  z1.at(0, 0) = FScalar::uniformizer_pow(&ctx, 1);
  z1.at(1, 1) = FScalar::uniformizer_pow(&ctx, 1);
  Cyclo lambda = chi[0].at_uniformizer * chi[1].at_uniformizer;
  for (const PSVector& f : eig) {
    CHECK(!f.is_zero());
    CHECK((hecke_tau(z1, f) - lambda * f).is_zero());
  }
  // the strict eigenspace equals the generalized one in the generic case
  CHECK(zlplus_generalized_eigenspace(fm, chi, 2).size() == eig.size());
}

TEST_CASE("N0 orbit transport is consistent on the invariants") {
  PadicContext ctx(2, 1, 2);
  FlagModel fm = FlagModel::build(&ctx, 3, 2);
  auto chi = generic_chi(&ctx);
  std::vector<N0Orbit> orbits = n0_orbits(fm, chi);
  size_t covered = 0;
  for (const N0Orbit& o : orbits) covered += o.points.size();
  CHECK(covered == fm.size());
  for (const PSVector& f : n0_invariants(fm, chi))
    for (const N0Orbit& o : orbits) {
      if (o.forced_zero) {
        for (size_t pt : o.points) CHECK(f.values[pt] == Cyclo(0L));
      } else {
        for (size_t i = 0; i < o.points.size(); ++i)
          CHECK(f.values[o.points[i]] ==
                o.transport[i] * f.values[o.points[0]]);
      }
    }
}

TEST_CASE("Levi restriction keeps the Steinberg functional linear") {
  PadicContext ctx(2, 1, 2);
  FlagModel fm = FlagModel::build(&ctx, 3, 2);
  FlagModel lm = FlagModel::build(&ctx, 2, 2);
  auto chi = generic_chi(&ctx);
  std::vector<PSVector> eig = zlplus_eigenspace(fm, chi);
  REQUIRE(!eig.empty());
  LeviPSVector a = restrict_to_levi(eig[0], lm);
  CHECK(steinberg_projection(a - a) == Cyclo(0L));
  // restriction is additive
  if (eig.size() >= 2) {
    LeviPSVector b = restrict_to_levi(eig[1], lm);
    LeviPSVector s = restrict_to_levi(eig[0] + eig[1], lm);
    CHECK((s - a).values == b.values);
  }
}
