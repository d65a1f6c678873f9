#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "psv/density.hpp"

using namespace psv;

namespace {

// p = 3, M = 2: chi2 carries the quadratic character, n = 1 only
struct Setup {
  PadicContext ctx{3, 1, 2};
  std::array<SmoothChar, 3> chi;
  DensityConfig cfg;
  FlagModel fm;
  FlagModel lm;

  Setup()
      : chi{SmoothChar::trivial(&ctx), ramified(&ctx),
            SmoothChar::unramified(&ctx, Cyclo(2L))},
        cfg(DensityConfig::make(&ctx, chi, 1, 1)),
        fm(FlagModel::build(&ctx, 3, 2)),
        lm(FlagModel::build(&ctx, 2, 2)) {}

  static SmoothChar ramified(const PadicContext* ctx) {
    for (const UnitChar& uc : enumerate_unit_characters(ctx->ring(1)))
      if (!uc.is_trivial()) return SmoothChar::make(ctx, Cyclo(2L), uc);
    throw std::runtime_error("no ramified character");
  }
};

MatF lower3(const PadicContext* ctx, const FScalar& a, const FScalar& b,
            const FScalar& c) {
  MatF m = MatF::identity(ctx, 3);
  m.at(1, 0) = a;
  m.at(2, 0) = b;
  m.at(2, 1) = c;
  return m;
}

}  // namespace

TEST_CASE("configuration validation") {
  Setup s;
  CHECK(s.cfg.vp_gamma == 1);          // gamma = q / eta2(varpi) = 3
  CHECK(s.cfg.gamma == Cyclo(3L));
  CHECK(s.cfg.eta.c2 == 1);
  // equal adjacent characters are rejected
  std::array<SmoothChar, 3> bad = {s.chi[0], s.chi[1], s.chi[1]};
  CHECK_THROWS_AS(DensityConfig::make(&s.ctx, bad, 1, 1), DensityError);
  // n beyond M - level(g) is rejected
  CHECK_THROWS_AS(DensityConfig::make(&s.ctx, s.chi, 1, 2), DensityError);
  // n below the conductor of eta2 is rejected
  CHECK_THROWS_AS(DensityConfig::make(&s.ctx, s.chi, 0, 1), DensityError);
  // eta2(varpi) = q trips the guard-constant denominator already
  std::array<SmoothChar, 3> flat = {
      SmoothChar::trivial(&s.ctx), SmoothChar::unramified(&s.ctx, Cyclo(3L)),
      SmoothChar::unramified(&s.ctx, Cyclo(9L))};
  CHECK_THROWS_AS(DensityConfig::make(&s.ctx, flat, 1, 1), ReconError);
  // |gamma| = 1 is rejected: eta2(varpi) = 6 gives gamma = 1/2
  std::array<SmoothChar, 3> unit_gamma = {
      SmoothChar::trivial(&s.ctx), SmoothChar::unramified(&s.ctx, Cyclo(2L)),
      SmoothChar::unramified(&s.ctx, Cyclo(12L))};
  CHECK_THROWS_AS(DensityConfig::make(&s.ctx, unit_gamma, 1, 1), DensityError);
}

TEST_CASE("f_n is an eigenvector with the prescribed Levi restriction") {
  Setup s;
  PSVector f = build_fn(1, s.cfg, s.fm);
  MatF z1 = MatF::identity(&s.ctx, 3);
  z1.at(0, 0) = FScalar::uniformizer_pow(&s.ctx, 1);
  z1.at(1, 1) = FScalar::uniformizer_pow(&s.ctx, 1);
  Cyclo lambda = s.chi[0].at_uniformizer * s.chi[1].at_uniformizer;
  CHECK((hecke_tau(z1, f) - lambda * f).is_zero());

  LeviRestrictionData data = levi_tables(restrict_to_levi(f, s.lm));
  ResidueRing r = s.ctx.ring(2);
  FScalar pin = FScalar::uniformizer_pow(&s.ctx, -1);
  for (const RElem& a : r.elements()) {
    FScalar af = FScalar::from_relem(&s.ctx, r, a);
    CHECK(data.lower[r.index(a)] == Cyclo(0L));
    CHECK(data.upper_s1[r.index(a)] == s.cfg.gamma * s.cfg.g.at(af * pin));
  }
  // vanishing on the e and s2 type patches
  for (const PatchPoint& pt : enumerate_patch_points(&s.ctx, 2))
    if (pt.patch == Patch::E || pt.patch == Patch::S2) {
      CHECK(fn_expected(1, s.cfg, pt) == Cyclo(0L));
      CHECK(ps_eval(f, patch_matrix(&s.ctx, pt)) == Cyclo(0L));
    }
}

TEST_CASE("h_n = (s1 s2)^{-1} f_n matches its closed-form tables") {
  Setup s;
  PSVector f = build_fn(1, s.cfg, s.fm);
  MatF s12 = s1_mat(&s.ctx) * s2_mat(&s.ctx);
  PSVector h = build_hn(1, s.cfg, s.fm);
  CHECK((h - group_act(s12.inverse(), f)).is_zero());

  ResidueRing r = s.ctx.ring(2);
  for (const RElem& ar : r.elements()) {
    FScalar a = FScalar::from_relem(&s.ctx, r, ar);
    if (!(r.val(ar) >= 1)) continue;  // lower patch has a in (varpi)
    for (const RElem& br : r.elements())
      for (const RElem& cr : r.elements()) {
        FScalar b = FScalar::from_relem(&s.ctx, r, br);
        FScalar c = FScalar::from_relem(&s.ctx, r, cr);
        CHECK(ps_eval(h, lower3(&s.ctx, a, b, c)) ==
              hn_expected_lower(1, s.cfg, a, b, c));
      }
  }
}

TEST_CASE("h'_n: witness value and agreement with h_n where claimed") {
  Setup s;
  PSVector hp = build_hprime(1, s.cfg, s.fm);
  PSVector h = build_hn(1, s.cfg, s.fm);

  // witness point: lower(varpi^{c12+1}) carries h(0,-1) gamma^{c12+1}
  FScalar w = FScalar::uniformizer_pow(&s.ctx, s.cfg.eta.c12 + 1);
  FScalar z = FScalar::exact_zero(&s.ctx);
  Cyclo h0m1 = h_integral(z, FScalar::from_rational(&s.ctx, -1), s.cfg.eta.eta2,
                          s.cfg.g, s.cfg.eta.C1);
  CHECK(ps_eval(hp, lower3(&s.ctx, w, z, z)) ==
        h0m1 * s.cfg.gamma.pow(s.cfg.eta.c12 + 1));
  CHECK(h0m1 != Cyclo(0L));

  // the difference h_n - h'_n decays: every value gains at least
  // n v_p(gamma) - r1 with r1 >= 0; at minimum it is p-integral here
  PSVector d = h - hp;
  for (const Cyclo& v : d.values)
    if (v != Cyclo(0L)) {
      PadicVal pv = padic_valuation(v, 3);
      CHECK(!pv.infinite);
      CHECK(pv.v >= 0);
    }
}

TEST_CASE("the limit vector v") {
  Setup s;
  LeviPSVector v = build_v(s.cfg, s.lm);
  // v(1) = 0 and v(lower(a)) = q^{val a} / eta2(a) above the conductor
  ResidueRing r = s.ctx.ring(2);
  for (const RElem& ar : r.elements()) {
    MatF low = MatF::identity(&s.ctx, 2);
    low.at(1, 0) = FScalar::from_relem(&s.ctx, r, ar);
    Cyclo got = levi_eval(v, low);
    FScalar af = FScalar::from_relem(&s.ctx, r, ar);
    if (r.is_zero(ar)) {
      CHECK(got == Cyclo(0L));
    } else if (r.val(ar) >= 1) {
      // deeper than the conductor of eta1 eta2 (= 0 here)
      Cyclo want = Cyclo(1L);
      for (int i = 0; i < r.val(ar); ++i) want *= Cyclo(3L);
      CHECK(got == want / char_eval(s.cfg.eta.eta2, af));
    } else {
      // a unit: lower(a) sits in the s1 cell, value C2 through the cocycle
      CHECK(got == char_eval(s.cfg.eta.eta1, af) * s.cfg.eta.C2);
    }
  }
}
