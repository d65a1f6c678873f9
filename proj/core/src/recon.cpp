#include "psv/recon.hpp"

#include <optional>
#include <sstream>

namespace psv {

namespace {

constexpr long kBigVal = 1L << 30;

long val_or_big(const FScalar& x) {
  if (x.is_exact_zero()) return kBigVal;
  if (!x.val_certain()) throw PrecisionError("recon: valuation not certified");
  PadicVal v = x.val();
  return v.infinite ? kBigVal : v.v;
}

Rational inv_qpow(int64_t q, int L) {
  Rational r(1);
  for (int i = 0; i < L; ++i) r /= Rational(static_cast<long>(q));
  return r;
}

// exact integer lifts of ring(m)
std::vector<FScalar> lifts(const PadicContext* ctx, int m) {
  ResidueRing r = ctx->ring(m);
  std::vector<FScalar> out;
  out.reserve(r.size());
  for (const RElem& e : r.elements())
    out.push_back(FScalar::from_relem(ctx, r, e));
  return out;
}

// exact lifts of the maximal ideal at level m: varpi * lifts of ring(m-1)
std::vector<FScalar> ideal_lifts(const PadicContext* ctx, int m) {
  std::vector<FScalar> out;
  if (m <= 1) {
    out.push_back(FScalar::exact_zero(ctx));
    return out;
  }
  FScalar pi = FScalar::uniformizer_pow(ctx, 1);
  for (const FScalar& x : lifts(ctx, m - 1)) out.push_back(pi * x);
  return out;
}

constexpr int kLevelCap = 14;

ResidueRing checked_ring(const PadicContext* ctx, int L) {
  if (L > kLevelCap)
    throw ReconError("recon: integration level " + std::to_string(L) +
                     " exceeds cap");
  return ctx->ring(L);
}

Cyclo table_at(const PadicContext* ctx, int level,
               const std::vector<Cyclo>& tab, const FScalar& x) {
  if (val_or_big(x) < 0)
    throw ReconError("recon: table argument outside O");
  ResidueRing r = ctx->ring(level);
  return tab[r.index(x.residue_at(level))];
}

}  // namespace

EtaPair EtaPair::make(const SmoothChar& eta1, const SmoothChar& eta2) {
  EtaPair e;
  e.eta1 = eta1;
  e.eta2 = eta2;
  e.eta12 = char_mul(eta1, eta2);
  e.c2 = eta2.conductor;
  e.c12 = e.eta12.conductor;
  const long q = static_cast<long>(eta2.ctx->q());
  if (e.c2 == 0 && eta2.at_uniformizer == Cyclo(q))
    throw ReconError("eta2 equals the inverse norm character");
  if (e.c12 == 0 && e.eta12.at_uniformizer == Cyclo(q * q))
    throw ReconError("eta1*eta2 equals the squared inverse norm character");
  e.C1 = e.c2 == 0
             ? Cyclo(q - 1) / (Cyclo(q) - eta2.at_uniformizer)
             : Cyclo(0L);
  // C2 solves (1 - eta1 eta2(varpi)/q^2) f(s2 s1) = ((q-1)/q) {...}, i.e.
  // C2 = q(q-1)/(q^2 - eta1 eta2(varpi))
  e.C2 = e.c12 == 0
             ? Cyclo(q) * Cyclo(q - 1) / (Cyclo(q * q) - e.eta12.at_uniformizer)
             : Cyclo(0L);
  return e;
}

EtaPair EtaPair::from_chi(const std::array<SmoothChar, 3>& chi) {
  return make(char_mul(char_inv(chi[0]), chi[1]),
              char_mul(char_inv(chi[1]), chi[2]));
}

LeviRestrictionData levi_tables(const LeviPSVector& lf) {
  const FlagModel& lm = *lf.model;
  const PadicContext* ctx = lm.context();
  const int M = lm.level();
  LeviRestrictionData d;
  d.ctx = ctx;
  d.level = M;
  ResidueRing r = ctx->ring(M);
  d.lower.resize(r.size());
  d.upper_s1.resize(r.size());
  FScalar one = FScalar::from_rational(ctx, Rational(1));
  FScalar zero = FScalar::exact_zero(ctx);
  for (const RElem& e : r.elements()) {
    FScalar a = FScalar::from_relem(ctx, r, e);
    MatF low(ctx, 2);
    low.at(0, 0) = one;
    low.at(0, 1) = zero;
    low.at(1, 0) = a;
    low.at(1, 1) = one;
    d.lower[r.index(e)] = levi_eval(lf, low);
    // [[1,a],[0,1]] * [[0,-1],[1,0]] = [[a,-1],[1,0]]
    MatF up(ctx, 2);
    up.at(0, 0) = a;
    up.at(0, 1) = -one;
    up.at(1, 0) = one;
    up.at(1, 1) = zero;
    d.upper_s1[r.index(e)] = levi_eval(lf, up);
  }
  return d;
}

Cyclo GTable::at(const FScalar& x) const {
  if (val_or_big(x) < 0) return Cyclo(0L);
  return table_at(ctx, level, values, x);
}

Cyclo k_integral(const FScalar& a, const FScalar& b, const FScalar& c,
                 const SmoothChar& eta2, const GTable& g) {
  const PadicContext* ctx = g.ctx;
  const long va = val_or_big(a);
  if (va < 1) throw ReconError("k_integral: val(a) >= 1 required");
  int L = 1;
  if (va < kBigVal) L = std::max<long>(L, eta2.conductor - va);
  const long vc = val_or_big(c);
  if (vc < kBigVal) L = std::max<long>(L, g.level - vc);
  ResidueRing r = checked_ring(ctx, L);
  FScalar one = FScalar::from_rational(ctx, Rational(1));
  Cyclo sum(0L);
  for (const FScalar& t : lifts(ctx, L))
    sum += char_eval(eta2, one + a * t) * g.at(b + c * t);
  return Cyclo(inv_qpow(r.q(), L)) * sum;
}

Cyclo h_integral(const FScalar& a, const FScalar& b, const SmoothChar& eta2,
                 const GTable& g, const Cyclo& C1) {
  const PadicContext* ctx = g.ctx;
  if (val_or_big(a) < 0 || val_or_big(b) < 0)
    throw ReconError("h_integral: arguments must lie in O");
  Cyclo ga = g.at(a);
  const long vb = val_or_big(b);
  if (vb >= kBigVal) return C1 * ga;
  const int L0 = std::max<long>(0, g.level - vb);
  const int L = std::max({1, L0, L0 - 1 + eta2.conductor});
  ResidueRing r = checked_ring(ctx, L);
  Cyclo sum(0L);
  for (const FScalar& t : lifts(ctx, L)) {
    if (t.is_exact_zero()) continue;  // integrand vanishes near 0
    sum += char_eval(eta2, t) * (g.at(a + b * t) - ga);
  }
  return Cyclo(inv_qpow(r.q(), L)) * sum + C1 * ga;
}

GTable special_g(const SmoothChar& eta2) {
  const PadicContext* ctx = eta2.ctx;
  const int c = std::max(eta2.conductor, 1);
  GTable g;
  g.ctx = ctx;
  g.level = c;
  ResidueRing r = ctx->ring(c);
  g.values.resize(r.size());
  int64_t qc = 1;
  for (int i = 0; i < c; ++i) qc *= r.q();
  RElem minus_one = r.neg(r.one());
  for (const RElem& e : r.elements())
    g.values[r.index(e)] = (e == minus_one) ? Cyclo(qc - 1) : Cyclo(-1L);
  return g;
}

MatF patch_matrix(const PadicContext* ctx, const PatchPoint& pt) {
  MatF u = MatF::identity(ctx, 3);
  switch (pt.patch) {
    case Patch::E:
      u.at(1, 0) = pt.a;
      u.at(2, 0) = pt.b;
      u.at(2, 1) = pt.c;
      return u;
    case Patch::S1:
      u.at(0, 1) = pt.a;
      u.at(2, 0) = pt.c;
      u.at(2, 1) = pt.b;
      return u * s1_mat(ctx);
    case Patch::S2:
      u.at(1, 0) = pt.a;
      u.at(2, 0) = pt.c;
      return u * s2_mat(ctx);
    case Patch::S1S2:
      u.at(0, 1) = pt.a;
      u.at(2, 1) = pt.c;
      return u * s1_mat(ctx) * s2_mat(ctx);
    case Patch::S2S1:
      u.at(1, 0) = pt.a;
      return u * s2_mat(ctx) * s1_mat(ctx);
    case Patch::W0:
      u.at(0, 1) = pt.a;
      return u * w0_mat(ctx);
  }
  throw ReconError("unknown patch");
}

Cyclo reconstruct(const LeviRestrictionData& data, const EtaPair& eta,
                  const PatchPoint& pt) {
  const PadicContext* ctx = data.ctx;
  const int M = data.level;
  const SmoothChar& eta2 = eta.eta2;
  FScalar one = FScalar::from_rational(ctx, Rational(1));

  auto look = [&](const std::vector<Cyclo>& tab, const FScalar& x) {
    return table_at(ctx, M, tab, x);
  };

  // int_O eta2(1+c t) T[a+b t] dt with val(b), val(c) >= 1
  auto shift_integral = [&](const std::vector<Cyclo>& tab, const FScalar& a,
                            const FScalar& b, const FScalar& c) {
    int L = 1;
    const long vc = val_or_big(c);
    if (vc < kBigVal) L = std::max<long>(L, eta.c2 - vc);
    const long vb = val_or_big(b);
    if (vb < kBigVal) L = std::max<long>(L, M - vb);
    ResidueRing r = checked_ring(ctx, L);
    Cyclo sum(0L);
    for (const FScalar& t : lifts(ctx, L))
      sum += char_eval(eta2, one + c * t) * look(tab, a + b * t);
    return Cyclo(inv_qpow(r.q(), L)) * sum;
  };

  // int_O eta2(t)(T[a+b t]-T[a]) dt + C1 T[a] with b in O
  auto hlike = [&](const std::vector<Cyclo>& tab, const FScalar& a,
                   const FScalar& b) {
    Cyclo Ta = look(tab, a);
    const long vb = val_or_big(b);
    if (vb >= kBigVal) return eta.C1 * Ta;
    const int L0 = std::max<long>(0, M - vb);
    const int L = std::max({1, L0, L0 - 1 + eta.c2});
    ResidueRing r = checked_ring(ctx, L);
    Cyclo sum(0L);
    for (const FScalar& t : lifts(ctx, L)) {
      if (t.is_exact_zero()) continue;
      sum += char_eval(eta2, t) * (look(tab, a + b * t) - Ta);
    }
    return Cyclo(inv_qpow(r.q(), L)) * sum + eta.C1 * Ta;
  };

  // int_{(varpi)} eta2(sign*(1 - sign*a t)) ... shared boundary integral:
  // int over the maximal ideal of eta2(u + a t) T[t] dt, u = +-1
  auto boundary = [&](const std::vector<Cyclo>& tab, const FScalar& u,
                      const FScalar& a) {
    const int L = std::max(1, M);
    ResidueRing r = checked_ring(ctx, L);
    Cyclo sum(0L);
    for (const FScalar& t : lifts(ctx, L)) {
      if (val_or_big(t) < 1) continue;
      sum += char_eval(eta2, u + a * t) * look(tab, t);
    }
    return Cyclo(inv_qpow(r.q(), L)) * sum;
  };

  switch (pt.patch) {
    case Patch::E: {
      if (val_or_big(pt.a) < 0 || val_or_big(pt.b) < 1 || val_or_big(pt.c) < 1)
        throw ReconError("patch e: need a in O, b,c in (varpi)");
      if (val_or_big(pt.b) < eta.c12) return Cyclo(0L);
      return shift_integral(data.lower, pt.a, pt.b, pt.c);
    }
    case Patch::S1: {
      if (val_or_big(pt.a) < 0 || val_or_big(pt.b) < 1 || val_or_big(pt.c) < 1)
        throw ReconError("patch s1: need a in O, b,c in (varpi)");
      if (val_or_big(pt.b) < eta.c12) return Cyclo(0L);
      return shift_integral(data.upper_s1, pt.a, pt.b, pt.c);
    }
    case Patch::S2: {
      if (val_or_big(pt.a) < 0 || val_or_big(pt.c) < 1)
        throw ReconError("patch s2: need a in O, c in (varpi)");
      if (val_or_big(pt.c) < eta.c12) return Cyclo(0L);
      return hlike(data.lower, pt.a, pt.c);
    }
    case Patch::S1S2: {
      if (val_or_big(pt.a) < 0 || val_or_big(pt.c) < 1)
        throw ReconError("patch s1s2: need a in O, c in (varpi)");
      if (val_or_big(pt.c) < eta.c12) return Cyclo(0L);
      return hlike(data.upper_s1, pt.a, -pt.c);
    }
    case Patch::S2S1: {
      if (val_or_big(pt.a) < 0) throw ReconError("patch s2s1: need a in O");
      return eta.C2 * (hlike(data.lower, pt.a, one) +
                       boundary(data.upper_s1, one, -pt.a));
    }
    case Patch::W0: {
      if (val_or_big(pt.a) < 0) throw ReconError("patch w0: need a in O");
      return eta.C2 * (hlike(data.upper_s1, pt.a, -one) +
                       boundary(data.lower, -one, pt.a));
    }
  }
  throw ReconError("unknown patch");
}

std::vector<PatchPoint> enumerate_patch_points(const PadicContext* ctx, int M) {
  std::vector<FScalar> os = lifts(ctx, M);
  std::vector<FScalar> ms = ideal_lifts(ctx, M);
  FScalar z = FScalar::exact_zero(ctx);
  std::vector<PatchPoint> pts;
  for (const FScalar& a : os) {
    for (const FScalar& b : ms)
      for (const FScalar& c : ms) {
        pts.push_back({Patch::E, a, b, c});
        pts.push_back({Patch::S1, a, b, c});
      }
    for (const FScalar& c : ms) {
      pts.push_back({Patch::S2, a, z, c});
      pts.push_back({Patch::S1S2, a, z, c});
    }
    pts.push_back({Patch::S2S1, a, z, z});
    pts.push_back({Patch::W0, a, z, z});
  }
  return pts;
}

namespace {
const char* patch_name(Patch p) {
  switch (p) {
    case Patch::E: return "e";
    case Patch::S1: return "s1";
    case Patch::S2: return "s2";
    case Patch::S1S2: return "s1s2";
    case Patch::S2S1: return "s2s1";
    case Patch::W0: return "w0";
  }
  return "?";
}
}  // namespace

ExplicitReport verify_theorem_explicit(const FlagModel& model,
                                       const std::array<SmoothChar, 3>& chi,
                                       const FlagModel& levi_model) {
  const PadicContext* ctx = model.context();
  EtaPair eta = EtaPair::from_chi(chi);
  std::vector<PSVector> eig = zlplus_eigenspace(model, chi);
  ExplicitReport rep;
  rep.eigen_dim = static_cast<int>(eig.size());
  std::vector<PatchPoint> pts = enumerate_patch_points(ctx, model.level());
  for (const PSVector& f : eig) {
    LeviRestrictionData data = levi_tables(restrict_to_levi(f, levi_model));
    for (const PatchPoint& pt : pts) {
      Cyclo lhs = ps_eval(f, patch_matrix(ctx, pt));
      Cyclo rhs = reconstruct(data, eta, pt);
      ++rep.checks;
      if (lhs != rhs) {
        ++rep.failures;
        if (rep.first_failure.empty()) {
          std::ostringstream os;
          os << "patch " << patch_name(pt.patch) << " a=" << pt.a.str()
             << " b=" << pt.b.str() << " c=" << pt.c.str()
             << " lhs=" << lhs.str() << " rhs=" << rhs.str();
          rep.first_failure = os.str();
        }
      }
    }
    // f(s2) = C1 f(1)
    Cyclo fs2 = ps_eval(f, s2_mat(ctx));
    Cyclo f1 = ps_eval(f, MatF::identity(ctx, 3));
    if (fs2 != eta.C1 * f1) rep.eq2_ok = false;
  }
  return rep;
}

PSVector assemble_from_levi(const FlagModel& model,
                            const std::array<SmoothChar, 3>& chi,
                            const LeviRestrictionData& data) {
  const PadicContext* ctx = model.context();
  EtaPair eta = EtaPair::from_chi(chi);
  std::vector<std::optional<Cyclo>> vals(model.size());
  auto set_value = [&](size_t idx, const Cyclo& v) {
    if (vals[idx] && *vals[idx] != v)
      throw ReconError("assemble_from_levi: conflicting patch values");
    vals[idx] = v;
  };
  ResidueRing r = model.ring();
  for (const PatchPoint& pt : enumerate_patch_points(ctx, model.level())) {
    MatF m = patch_matrix(ctx, pt);
    FlagModel::SectionResult sec = model.section(model.reduce_mat(m));
    // m = rep * b, f(m) = chi(b)^{-1} f(rep)
    Cyclo bfac(1L);
    for (int i = 0; i < 3; ++i)
      bfac *= char_eval_unit(chi[static_cast<size_t>(i)], r, sec.diag[static_cast<size_t>(i)]);
    set_value(sec.rep, bfac * reconstruct(data, eta, pt));
  }
  for (const N0Orbit& orb : n0_orbits(model, chi)) {
    std::optional<Cyclo> base;
    if (orb.forced_zero) {
      for (size_t i = 0; i < orb.points.size(); ++i)
        if (vals[orb.points[i]] && !vals[orb.points[i]]->is_zero())
          throw ReconError("assemble_from_levi: nonzero on forced-zero orbit");
      base = Cyclo(0L);
    } else {
      for (size_t i = 0; i < orb.points.size(); ++i) {
        if (!vals[orb.points[i]]) continue;
        Cyclo cand = *vals[orb.points[i]] / orb.transport[i];
        if (base && *base != cand)
          throw ReconError("assemble_from_levi: inconsistent orbit values");
        base = cand;
      }
    }
    if (!base) throw ReconError("assemble_from_levi: orbit not covered");
    for (size_t i = 0; i < orb.points.size(); ++i)
      set_value(orb.points[i], orb.transport[i] * *base);
  }
  PSVector f;
  f.model = &model;
  f.chi = chi;
  f.values.resize(model.size());
  for (size_t i = 0; i < vals.size(); ++i) f.values[i] = *vals[i];
  return f;
}

bool verify_int_chi(const SmoothChar& eta2, int k_max) {
  const PadicContext* ctx = eta2.ctx;
  const long q = static_cast<long>(ctx->q());
  for (int k = 1; k <= k_max; ++k) {
    const int L = std::max({1, k, k - 1 + eta2.conductor});
    ResidueRing r = checked_ring(ctx, L);
    Cyclo lhs(0L);
    for (const RElem& e : r.elements()) {
      if (r.val(e) >= k) continue;
      lhs += char_eval(eta2, FScalar::from_relem(ctx, r, e));
    }
    lhs = Cyclo(inv_qpow(q, L)) * lhs;
    Cyclo rhs(0L);
    if (eta2.conductor == 0) {
      Cyclo ratio = eta2.at_uniformizer * Cyclo(Rational(1, q));
      rhs = (Cyclo(q - 1) / (Cyclo(q) - eta2.at_uniformizer)) *
            (Cyclo(1L) - ratio.pow(k));
    }
    if (lhs != rhs) return false;
  }
  return true;
}

namespace {

LemmaReport finish_report(LemmaReport rep) {
  rep.holds_at_max = !rep.holds.empty() && rep.holds.back();
  rep.stabilized_k = -1;
  for (int i = static_cast<int>(rep.holds.size()) - 1; i >= 0; --i) {
    if (!rep.holds[static_cast<size_t>(i)]) break;
    rep.stabilized_k = rep.k_min + i;
  }
  return rep;
}

void check_lemma_inputs(const PSVector& f, const FScalar& x, int k_min,
                        int k_max) {
  if (!f.model) throw ReconError("lemma verifier: empty vector");
  if (val_or_big(x) >= 0)
    throw ReconError("lemma verifier: x must lie outside O");
  if (k_min < 1 || k_max < k_min)
    throw ReconError("lemma verifier: bad k range");
}

}  // namespace

LemmaReport verify_s2s1_formula(const PSVector& f, const FScalar& x, int k_min,
                                int k_max) {
  check_lemma_inputs(f, x, k_min, k_max);
  const FlagModel& model = *f.model;
  const PadicContext* ctx = model.context();
  EtaPair eta = EtaPair::from_chi(f.chi);
  FScalar one = FScalar::from_rational(ctx, Rational(1));
  std::vector<FScalar> as = lifts(ctx, model.level());
  MatF s21 = s2_mat(ctx) * s1_mat(ctx);
  LemmaReport rep;
  rep.k_min = k_min;
  rep.k_max = k_max;
  for (int k = k_min; k <= k_max; ++k) {
    FScalar y = FScalar::uniformizer_pow(ctx, -k);
    bool ok = true;
    for (const FScalar& a : as) {
      MatF g = MatF::identity(ctx, 3);
      g.at(0, 2) = y;
      g.at(1, 0) = x;
      g.at(1, 2) = a * y;
      Cyclo lhs = ps_eval(f, g * s21);
      MatF low = MatF::identity(ctx, 3);
      low.at(1, 0) = a;
      Cyclo rhs = char_eval(eta.eta12, y) * char_eval(eta.eta2, a - x) *
                  ps_eval(f, low);
      if (lhs != rhs) {
        ok = false;
        break;
      }
    }
    rep.holds.push_back(ok);
  }
  return finish_report(rep);
}

LemmaReport verify_s2s1_variant(const PSVector& f, const FScalar& x, int k_min,
                                int k_max) {
  check_lemma_inputs(f, x, k_min, k_max);
  const FlagModel& model = *f.model;
  const PadicContext* ctx = model.context();
  const int M = model.level();
  EtaPair eta = EtaPair::from_chi(f.chi);
  MatF s21 = s2_mat(ctx) * s1_mat(ctx);
  // f on the lower-unipotent patch, tabulated once
  ResidueRing r = ctx->ring(M);
  std::vector<Cyclo> lower_tab(r.size());
  for (const RElem& e : r.elements()) {
    MatF low = MatF::identity(ctx, 3);
    low.at(1, 0) = FScalar::from_relem(ctx, r, e);
    lower_tab[r.index(e)] = ps_eval(f, low);
  }
  std::vector<FScalar> os = lifts(ctx, M);
  Rational scale = inv_qpow(r.q(), 2 * M);
  LemmaReport rep;
  rep.k_min = k_min;
  rep.k_max = k_max;
  for (int k = k_min; k <= k_max; ++k) {
    FScalar y = FScalar::uniformizer_pow(ctx, -k);
    MatF g = MatF::identity(ctx, 3);
    g.at(0, 2) = y;
    g.at(1, 0) = x;
    Cyclo lhs = ps_eval(f, g * s21);
    Cyclo sum(0L);
    for (const FScalar& s : os) {
      FScalar ys = y + s;
      Cyclo cs = char_eval(eta.eta12, ys);
      FScalar inv = ys.inverse();
      for (const FScalar& t : os) {
        FScalar v = t * inv;  // val >= k >= 1
        sum += cs * char_eval(eta.eta2, v - x) *
               table_at(ctx, M, lower_tab, v);
      }
    }
    rep.holds.push_back(lhs == Cyclo(scale) * sum);
  }
  return finish_report(rep);
}

}  // namespace psv
