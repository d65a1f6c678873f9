#include "psv/padic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace psv {

namespace {

int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (int64_t(1) << 61) / std::max<int64_t>(b, 1))
      throw PadicError("residue ring cardinality overflows");
    r *= b;
  }
  return r;
}

int64_t mod_norm(int64_t a, int64_t m) {
  a %= m;
  if (a < 0) a += m;
  return a;
}

// polynomial arithmetic over F_p for finding the defining polynomial
using FpPoly = std::vector<int64_t>;

FpPoly fp_mod(FpPoly a, const FpPoly& b, int64_t p) {
  while (!a.empty() && a.back() % p == 0) a.pop_back();
  while (a.size() >= b.size()) {
    int64_t f = mod_norm(a.back() * mod_inverse(b.back(), p), p);
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = mod_norm(a[shift + i] - f * b[i], p);
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

bool fp_divides(const FpPoly& d, const FpPoly& a, int64_t p) {
  return fp_mod(a, d, p).empty();
}

void gen_monic(int deg, int64_t p, std::vector<FpPoly>& out) {
  FpPoly poly(static_cast<size_t>(deg) + 1, 0);
  poly[static_cast<size_t>(deg)] = 1;
  std::function<void(int)> rec = [&](int i) {
    if (i == deg) {
      out.push_back(poly);
      return;
    }
    for (int64_t c = 0; c < p; ++c) {
      poly[static_cast<size_t>(i)] = c;
      rec(i + 1);
    }
    poly[static_cast<size_t>(i)] = 0;
  };
  rec(0);
}

bool fp_irreducible(const FpPoly& a, int64_t p) {
  int deg = static_cast<int>(a.size()) - 1;
  for (int d = 1; d <= deg / 2; ++d) {
    std::vector<FpPoly> cands;
    gen_monic(d, p, cands);
    for (const auto& c : cands)
      if (fp_divides(c, a, p)) return false;
  }
  return true;
}

std::vector<int64_t> find_modpoly(int64_t p, int f) {
  if (f == 1) return {0, 1};  // x (unused beyond degree bookkeeping)
  std::vector<FpPoly> cands;
  gen_monic(f, p, cands);
  for (const auto& c : cands)
    if (fp_irreducible(c, p)) return c;
  throw PadicError("no irreducible polynomial found");  // unreachable
}

}  // namespace

int64_t mod_inverse(int64_t a, int64_t mod) {
  int64_t t = 0, newt = 1, r = mod, newr = mod_norm(a, mod);
  while (newr != 0) {
    int64_t q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (r != 1) throw PadicError("element not invertible");
  return mod_norm(t, mod);
}

int64_t rational_mod(const Rational& r, int64_t p, int64_t pk) {
  mpz_class num = r.get_num(), den = r.get_den();
  mpz_class pkz(static_cast<long>(pk));
  if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
    throw PadicError("rational has p in the denominator");
  mpz_class nm = num % pkz, dm = den % pkz;
  int64_t n = mod_norm(nm.get_si(), pk);
  int64_t d = mod_norm(dm.get_si(), pk);
  return mod_norm(n * mod_inverse(d, pk), pk);
}

PadicContext::PadicContext(long p, int f, int level) : p_(p), f_(f), level_(level) {
  if (p < 2 || f < 1 || f > kMaxResidueDegree || level < 1)
    throw PadicError("invalid (p, f, level)");
  q_ = ipow(p, f);
  modpoly_ = find_modpoly(p, f);
  ipow(q_, level);  // overflow guard for the largest ring in the session
}

ResidueRing::ResidueRing(const PadicContext* ctx, int m) : ctx_(ctx), m_(m) {
  if (m < 0) throw PadicError("negative ring level");
  pm_ = ipow(ctx->p(), m);
}

int64_t ResidueRing::p() const { return ctx_->p(); }
int ResidueRing::degree() const { return ctx_->f(); }
int64_t ResidueRing::q() const { return ctx_->q(); }
size_t ResidueRing::size() const {
  size_t s = 1;
  for (int i = 0; i < degree(); ++i) s *= static_cast<size_t>(pm_);
  return s;
}

RElem ResidueRing::one() const {
  RElem r;
  if (m_ > 0) r.c[0] = 1;
  return r;
}

RElem ResidueRing::from_int(int64_t v) const {
  RElem r;
  r.c[0] = mod_norm(v, pm_);
  return r;
}

RElem ResidueRing::add(const RElem& a, const RElem& b) const {
  RElem r;
  for (int i = 0; i < degree(); ++i) r.c[i] = mod_norm(a.c[i] + b.c[i], pm_);
  return r;
}

RElem ResidueRing::sub(const RElem& a, const RElem& b) const {
  RElem r;
  for (int i = 0; i < degree(); ++i) r.c[i] = mod_norm(a.c[i] - b.c[i], pm_);
  return r;
}

RElem ResidueRing::neg(const RElem& a) const { return sub(zero(), a); }

RElem ResidueRing::mul(const RElem& a, const RElem& b) const {
  int f = degree();
  std::array<int64_t, 2 * kMaxResidueDegree - 1> prod{};
  for (int i = 0; i < f; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < f; ++j)
      prod[i + j] = mod_norm(prod[i + j] + a.c[i] * b.c[j], pm_);
  }
  const auto& mp = ctx_->modpoly();
  for (int k = 2 * f - 2; k >= f; --k) {
    int64_t top = prod[k];
    if (top == 0) continue;
    prod[k] = 0;
    for (int i = 0; i < f; ++i)
      prod[k - f + i] = mod_norm(prod[k - f + i] - top * mp[i], pm_);
  }
  RElem r;
  for (int i = 0; i < f; ++i) r.c[i] = prod[i];
  return r;
}

RElem ResidueRing::pow(const RElem& a, long e) const {
  if (e < 0) return pow(inv(a), -e);
  RElem acc = one(), base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

int ResidueRing::val(const RElem& a) const {
  int64_t pj = 1;
  for (int j = 0; j < m_; ++j) {
    bool divides = true;
    for (int i = 0; i < degree(); ++i)
      if (a.c[i] % (pj * p()) != 0) {
        divides = false;
        break;
      }
    if (!divides) return j;
    pj *= p();
  }
  return m_;
}

RElem ResidueRing::inv(const RElem& a) const {
  if (!is_unit(a)) throw PadicError("inversion of a non-unit");
  // invert in the residue field, then Hensel-lift
  ResidueRing r1(ctx_, 1);
  RElem a1 = reduce(a, 1);
  RElem x1;
  bool found = false;
  for (size_t i = 0; i < r1.size() && !found; ++i) {
    RElem cand = r1.from_index(i);
    if (r1.mul(a1, cand) == r1.one()) {
      x1 = cand;
      found = true;
    }
  }
  if (!found) throw PadicError("field inversion failed");
  RElem x;
  for (int i = 0; i < degree(); ++i) x.c[i] = x1.c[i];
  RElem two = from_int(2);
  for (int it = 0; it < m_; ++it) x = mul(x, sub(two, mul(a, x)));
  return x;
}

RElem ResidueRing::reduce(const RElem& a, int m2) const {
  if (m2 > m_) throw PadicError("cannot reduce upward");
  ResidueRing r2(ctx_, m2);
  RElem r;
  for (int i = 0; i < degree(); ++i) r.c[i] = mod_norm(a.c[i], r2.pm());
  return r;
}

size_t ResidueRing::index(const RElem& a) const {
  size_t idx = 0;
  for (int i = degree() - 1; i >= 0; --i)
    idx = idx * static_cast<size_t>(pm_) + static_cast<size_t>(a.c[i]);
  return idx;
}

RElem ResidueRing::from_index(size_t idx) const {
  RElem r;
  for (int i = 0; i < degree(); ++i) {
    r.c[i] = static_cast<int64_t>(idx % static_cast<size_t>(pm_));
    idx /= static_cast<size_t>(pm_);
  }
  return r;
}

std::vector<RElem> ResidueRing::elements() const {
  std::vector<RElem> out;
  out.reserve(size());
  for (size_t i = 0; i < size(); ++i) out.push_back(from_index(i));
  return out;
}

std::vector<RElem> ResidueRing::units() const {
  std::vector<RElem> out;
  for (size_t i = 0; i < size(); ++i) {
    RElem e = from_index(i);
    if (is_unit(e)) out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// FScalar

FScalar FScalar::exact_zero(const PadicContext* ctx) {
  FScalar s;
  s.kind_ = Kind::Exact;
  s.ctx_ = ctx;
  s.ex_.assign(static_cast<size_t>(ctx->f()), Rational(0));
  return s;
}

FScalar FScalar::from_coeffs(const PadicContext* ctx, std::vector<Rational> c) {
  if (static_cast<int>(c.size()) != ctx->f())
    throw PadicError("coefficient count must equal the residue degree");
  FScalar s;
  s.kind_ = Kind::Exact;
  s.ctx_ = ctx;
  for (auto& x : c) x.canonicalize();
  s.ex_ = std::move(c);
  return s;
}

FScalar FScalar::from_rational(const PadicContext* ctx, const Rational& r) {
  std::vector<Rational> c(static_cast<size_t>(ctx->f()), Rational(0));
  c[0] = r;
  return from_coeffs(ctx, std::move(c));
}

FScalar FScalar::from_relem(const PadicContext* ctx, const ResidueRing& r,
                            const RElem& a) {
  std::vector<Rational> c(static_cast<size_t>(ctx->f()), Rational(0));
  for (int i = 0; i < r.degree(); ++i) c[static_cast<size_t>(i)] = Rational(static_cast<long>(a.c[i]));
  return from_coeffs(ctx, std::move(c));
}

FScalar FScalar::uniformizer_pow(const PadicContext* ctx, long k) {
  Rational r(1);
  if (k >= 0)
    for (long i = 0; i < k; ++i) r *= ctx->p();
  else
    for (long i = 0; i < -k; ++i) r /= ctx->p();
  return from_rational(ctx, r);
}

FScalar FScalar::approx(const PadicContext* ctx, long val, const RElem& unit,
                        int prec) {
  if (prec < 1) throw PadicError("approx scalar needs positive precision");
  ResidueRing r = ctx->ring(prec);
  if (!r.is_unit(unit)) throw PadicError("approx unit part is not a unit");
  FScalar s;
  s.kind_ = Kind::Approx;
  s.ctx_ = ctx;
  s.val_ = val;
  s.unit_ = unit;
  s.prec_ = prec;
  return s;
}

FScalar FScalar::zero_at_prec(const PadicContext* ctx, int prec) {
  FScalar s;
  s.kind_ = Kind::ZeroAtPrec;
  s.ctx_ = ctx;
  s.prec_ = prec;
  return s;
}

bool FScalar::is_exact_zero() const {
  if (kind_ != Kind::Exact) return false;
  for (const auto& c : ex_)
    if (c != 0) return false;
  return true;
}

PadicVal FScalar::val() const {
  switch (kind_) {
    case Kind::Exact: {
      PadicVal best = PadicVal::inf();
      for (const auto& c : ex_) {
        PadicVal v = rational_valuation(c, ctx_->p());
        if (!v.infinite && (best.infinite || v.v < best.v)) best = v;
      }
      return best;
    }
    case Kind::Approx:
      return PadicVal::of(val_);
    case Kind::ZeroAtPrec:
      throw PrecisionError("valuation not certified at available precision");
  }
  throw PadicError("unreachable");
}

long FScalar::val_lower_bound() const {
  switch (kind_) {
    case Kind::Exact: {
      PadicVal v = val();
      return v.infinite ? (1L << 40) : v.v;
    }
    case Kind::Approx:
      return val_;
    case Kind::ZeroAtPrec:
      return prec_;
  }
  throw PadicError("unreachable");
}

bool FScalar::unit_prec_at_least(int c) const {
  if (kind_ == Kind::Exact) return !is_exact_zero();
  if (kind_ == Kind::Approx) return prec_ >= c;
  return false;
}

RElem FScalar::unit_at(int c) const {
  ResidueRing r = ctx_->ring(c);
  if (kind_ == Kind::Exact) {
    PadicVal v = val();
    if (v.infinite) throw PadicError("zero has no unit part");
    int64_t pc = r.pm();
    RElem out;
    for (int i = 0; i < ctx_->f(); ++i) {
      Rational y = ex_[static_cast<size_t>(i)];
      if (v.v >= 0)
        for (long j = 0; j < v.v; ++j) y /= ctx_->p();
      else
        for (long j = 0; j < -v.v; ++j) y *= ctx_->p();
      out.c[i] = rational_mod(y, ctx_->p(), pc);
    }
    return out;
  }
  if (kind_ == Kind::Approx) {
    if (prec_ < c)
      throw PrecisionError("unit part requested beyond guaranteed precision");
    return ctx_->ring(prec_).reduce(unit_, c);
  }
  throw PrecisionError("zero-at-precision has no unit part");
}

RElem FScalar::residue_at(int c) const {
  ResidueRing r = ctx_->ring(c);
  if (kind_ == Kind::Exact) {
    RElem out;
    for (int i = 0; i < ctx_->f(); ++i)
      out.c[i] = rational_mod(ex_[static_cast<size_t>(i)], ctx_->p(), r.pm());
    return out;
  }
  if (kind_ == Kind::ZeroAtPrec) {
    if (prec_ >= c) return r.zero();
    throw PrecisionError("residue requested beyond guaranteed precision");
  }
  if (val_ < 0) throw PadicError("residue of a non-integral scalar");
  if (val_ >= c) return r.zero();
  if (prec_ < c - val_)
    throw PrecisionError("residue requested beyond guaranteed precision");
  ResidueRing rp = ctx_->ring(prec_);
  RElem u = rp.reduce(unit_, c - static_cast<int>(val_));
  RElem out;
  int64_t pv = 1;
  for (long j = 0; j < val_; ++j) pv *= ctx_->p();
  for (int i = 0; i < ctx_->f(); ++i) out.c[i] = mod_norm(u.c[i] * pv, r.pm());
  return out;
}

const std::vector<Rational>& FScalar::exact_coeffs() const {
  if (kind_ != Kind::Exact) throw PadicError("scalar is not exact");
  return ex_;
}

Rational FScalar::exact_rational() const {
  if (kind_ != Kind::Exact) throw PadicError("scalar is not exact");
  for (size_t i = 1; i < ex_.size(); ++i)
    if (ex_[i] != 0) throw PadicError("scalar is not in Q_p");
  return ex_[0];
}

FScalar FScalar::to_approx(int prec) const {
  if (kind_ != Kind::Exact) throw PadicError("to_approx expects exact input");
  if (is_exact_zero()) return zero_at_prec(ctx_, prec);
  PadicVal v = val();
  return approx(ctx_, v.v, unit_at(prec), prec);
}

FScalar FScalar::operator-() const {
  FScalar s = *this;
  switch (kind_) {
    case Kind::Exact:
      for (auto& c : s.ex_) c = -c;
      return s;
    case Kind::Approx:
      s.unit_ = ctx_->ring(prec_).neg(unit_);
      return s;
    case Kind::ZeroAtPrec:
      return s;
  }
  throw PadicError("unreachable");
}

FScalar FScalar::inverse() const {
  switch (kind_) {
    case Kind::Exact: {
      if (is_exact_zero()) throw PadicError("inversion of zero");
      if (ctx_->f() == 1) return from_rational(ctx_, Rational(1) / ex_[0]);
      // extended Euclid over Q[x] against an exact lift of the modulus
      std::vector<Rational> mod(ctx_->modpoly().begin(), ctx_->modpoly().end());
      std::vector<Rational> r0 = mod, r1 = ex_;
      while (!r1.empty() && r1.back() == 0) r1.pop_back();
      std::vector<Rational> s0, s1{Rational(1)};
      auto polymul = [](const std::vector<Rational>& a,
                        const std::vector<Rational>& b) {
        std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
        for (size_t i = 0; i < a.size(); ++i)
          for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
      };
      while (!r1.empty()) {
        // divide r0 by r1
        std::vector<Rational> a = r0, qpoly;
        if (a.size() >= r1.size())
          qpoly.assign(a.size() - r1.size() + 1, Rational(0));
        while (a.size() >= r1.size()) {
          Rational fct = a.back() / r1.back();
          size_t shift = a.size() - r1.size();
          qpoly[shift] = fct;
          for (size_t i = 0; i < r1.size(); ++i) a[shift + i] -= fct * r1[i];
          while (!a.empty() && a.back() == 0) a.pop_back();
        }
        std::vector<Rational> s2 = s0;
        if (!qpoly.empty() && !s1.empty()) {
          auto qs = polymul(qpoly, s1);
          if (s2.size() < qs.size()) s2.resize(qs.size(), Rational(0));
          for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
          while (!s2.empty() && s2.back() == 0) s2.pop_back();
        }
        r0 = std::move(r1);
        r1 = std::move(a);
        s0 = std::move(s1);
        s1 = std::move(s2);
      }
      if (r0.size() != 1) throw PadicError("inversion failed (non-unit)");
      std::vector<Rational> inv = s0;
      for (auto& c : inv) c /= r0[0];
      inv.resize(static_cast<size_t>(ctx_->f()), Rational(0));
      return from_coeffs(ctx_, std::move(inv));
    }
    case Kind::Approx: {
      FScalar s = *this;
      s.val_ = -val_;
      s.unit_ = ctx_->ring(prec_).inv(unit_);
      return s;
    }
    case Kind::ZeroAtPrec:
      throw PrecisionError("cannot invert: not certified nonzero");
  }
  throw PadicError("unreachable");
}

FScalar operator+(const FScalar& a, const FScalar& b) {
  const PadicContext* ctx = a.context();
  if (a.kind() == FScalar::Kind::Exact && b.kind() == FScalar::Kind::Exact) {
    std::vector<Rational> c = a.exact_coeffs();
    const auto& d = b.exact_coeffs();
    for (size_t i = 0; i < c.size(); ++i) c[i] += d[i];
    return FScalar::from_coeffs(ctx, std::move(c));
  }
  // absolute precision of the sum
  auto abs_prec = [](const FScalar& s) -> long {
    constexpr long kInf = (1L << 40);
    switch (s.kind()) {
      case FScalar::Kind::Exact:
        return kInf;
      case FScalar::Kind::Approx:
        return s.val().v + s.prec();
      case FScalar::Kind::ZeroAtPrec:
        return s.val_lower_bound();
    }
    return kInf;
  };
  long A = std::min(abs_prec(a), abs_prec(b));
  long t = std::min({0L, a.val_lower_bound(), b.val_lower_bound()});
  int work = static_cast<int>(A - t);
  if (work < 1) throw PrecisionError("sum has no representable digits");
  ResidueRing r = ctx->ring(work);
  auto scaled_residue = [&](const FScalar& s) -> RElem {
    if (s.kind() == FScalar::Kind::Exact) {
      // multiply by p^{-t}; t <= 0 so this clears denominators of p
      std::vector<Rational> c = s.exact_coeffs();
      for (auto& x : c)
        for (long j = 0; j < -t; ++j) x *= ctx->p();
      RElem out;
      for (int i = 0; i < ctx->f(); ++i)
        out.c[i] = rational_mod(c[static_cast<size_t>(i)], ctx->p(), r.pm());
      return out;
    }
    if (s.kind() == FScalar::Kind::ZeroAtPrec) return r.zero();
    // Approx: p^{val - t} * unit mod p^work
    long v = s.val().v - t;
    RElem u = s.unit_at(std::min<int>(s.prec(), work));
    // lift u into ring(work)
    RElem out;
    int64_t pv = 1;
    for (long j = 0; j < v; ++j) pv *= ctx->p();
    for (int i = 0; i < ctx->f(); ++i) out.c[i] = mod_norm(u.c[i] * pv, r.pm());
    return out;
  };
  RElem sum = r.add(scaled_residue(a), scaled_residue(b));
  int vs = r.val(sum);
  if (vs >= work) return FScalar::zero_at_prec(ctx, static_cast<int>(A));
  long v_result = vs + t;
  int unit_prec = static_cast<int>(A - v_result);
  // divide by p^{vs}
  RElem u;
  int64_t pvs = 1;
  for (int j = 0; j < vs; ++j) pvs *= ctx->p();
  for (int i = 0; i < ctx->f(); ++i) u.c[i] = sum.c[i] / pvs;
  RElem ured = r.reduce(u, unit_prec);
  return FScalar::approx(ctx, v_result, ured, unit_prec);
}

FScalar operator-(const FScalar& a, const FScalar& b) { return a + (-b); }

FScalar operator*(const FScalar& a, const FScalar& b) {
  const PadicContext* ctx = a.context();
  if (a.kind() == FScalar::Kind::Exact && b.kind() == FScalar::Kind::Exact) {
    int f = ctx->f();
    std::vector<Rational> prod(static_cast<size_t>(2 * f - 1), Rational(0));
    const auto& x = a.exact_coeffs();
    const auto& y = b.exact_coeffs();
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) prod[static_cast<size_t>(i + j)] += x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
    const auto& mp = ctx->modpoly();
    for (int k = 2 * f - 2; k >= f; --k) {
      Rational top = prod[static_cast<size_t>(k)];
      if (top == 0) continue;
      prod[static_cast<size_t>(k)] = 0;
      for (int i = 0; i < f; ++i)
        prod[static_cast<size_t>(k - f + i)] -= top * mp[static_cast<size_t>(i)];
    }
    prod.resize(static_cast<size_t>(f));
    return FScalar::from_coeffs(ctx, std::move(prod));
  }
  if (a.is_exact_zero() || b.is_exact_zero()) return FScalar::exact_zero(ctx);
  if (a.kind() == FScalar::Kind::ZeroAtPrec ||
      b.kind() == FScalar::Kind::ZeroAtPrec) {
    long bound = a.val_lower_bound() + b.val_lower_bound();
    return FScalar::zero_at_prec(ctx, static_cast<int>(bound));
  }
  // at least one Approx, none zero
  int prec = 1 << 20;
  if (a.kind() == FScalar::Kind::Approx) prec = std::min(prec, a.prec());
  if (b.kind() == FScalar::Kind::Approx) prec = std::min(prec, b.prec());
  ResidueRing r = ctx->ring(prec);
  RElem u = r.mul(a.unit_at(prec), b.unit_at(prec));
  return FScalar::approx(ctx, a.val().v + b.val().v, u, prec);
}

FScalar operator/(const FScalar& a, const FScalar& b) { return a * b.inverse(); }

bool FScalar::agrees_with(const FScalar& b) const {
  if (kind_ == Kind::Exact && b.kind_ == Kind::Exact) return ex_ == b.ex_;
  FScalar d = *this - b;
  return d.is_exact_zero() || d.kind_ == Kind::ZeroAtPrec;
}

std::string FScalar::str() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Exact: {
      os << "exact[";
      for (size_t i = 0; i < ex_.size(); ++i)
        os << (i ? "," : "") << ex_[i].get_str();
      os << "]";
      break;
    }
    case Kind::Approx:
      os << "p^" << val_ << "*u(mod p^" << prec_ << ")";
      break;
    case Kind::ZeroAtPrec:
      os << "O(p^" << prec_ << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Haar integration

Rational CosetDomain::volume(const ResidueRing& r) const {
  Rational qr(static_cast<long>(r.q()));
  switch (kind) {
    case Kind::FullO:
      return Rational(1);
    case Kind::Units:
      return 1 - 1 / qr;
    case Kind::Ball: {
      if (center.val_lower_bound() < 0 && center.val().v < radius)
        return Rational(0);
      Rational v(1);
      for (int i = 0; i < radius; ++i) v /= qr;
      for (int i = 0; i > radius; --i) v *= qr;
      return v;
    }
    case Kind::UnitComplement: {
      Rational v(1);
      for (int i = 0; i < k; ++i) v /= qr;
      return 1 - v;
    }
  }
  throw PadicError("unreachable");
}

Cyclo haar_integrate(const Integrand& fn, const CosetDomain& dom,
                     const ResidueRing& r) {
  if (fn.size() != r.size())
    throw PadicError("integrand table size does not match the ring");
  const int m = r.level();
  Cyclo sum(0L);
  auto add_point = [&](size_t idx) { sum += fn[idx]; };
  switch (dom.kind) {
    case CosetDomain::Kind::FullO:
      for (size_t i = 0; i < fn.size(); ++i) add_point(i);
      break;
    case CosetDomain::Kind::Units:
      for (size_t i = 0; i < fn.size(); ++i)
        if (r.is_unit(r.from_index(i))) add_point(i);
      break;
    case CosetDomain::Kind::UnitComplement:
      if (dom.k > m)
        throw PrecisionError("domain requires precision beyond the ring level");
      for (size_t i = 0; i < fn.size(); ++i)
        if (r.val(r.from_index(i)) < dom.k) add_point(i);
      break;
    case CosetDomain::Kind::Ball: {
      if (dom.radius > m)
        throw PrecisionError("domain requires precision beyond the ring level");
      if (dom.center.val_lower_bound() < 0) {
        PadicVal cv = dom.center.val();
        if (cv.v < dom.radius) return Cyclo(0L);  // ball misses O entirely
      }
      if (dom.radius < 0)
        throw PadicError("ball not contained in O at negative radius");
      RElem c0 = dom.center.residue_at(dom.radius);
      ResidueRing rr = r.context()->ring(dom.radius);
      for (size_t i = 0; i < fn.size(); ++i)
        if (r.reduce(r.from_index(i), dom.radius) == c0) add_point(i);
      break;
    }
  }
  Rational scale(1);
  for (int i = 0; i < m * r.degree(); ++i) scale /= r.p();
  return Cyclo(scale) * sum;
}

// ---------------------------------------------------------------------------
// Unit characters

Rational UnitChar::log_of(const ResidueRing& r, const RElem& u) const {
  if (r.level() < level) throw PadicError("ring level below character level");
  if (!r.is_unit(u)) throw PadicError("character evaluated off the unit group");
  if (level == 0) return Rational(0);
  ResidueRing rc = r.context()->ring(level);
  return logs[rc.index(r.reduce(u, level))];
}

Cyclo UnitChar::eval(const ResidueRing& r, const RElem& u) const {
  Rational lg = log_of(r, u);
  // e^{2 pi i a/b} = zeta_b^a
  long den = static_cast<long>(lg.get_den().get_si());
  long num = static_cast<long>(lg.get_num().get_si());
  return Cyclo::zeta(static_cast<int>(den), num);
}

UnitGroupStructure unit_group_structure(const ResidueRing& r) {
  UnitGroupStructure s;
  size_t n = r.size();
  std::vector<bool> in_h(n, false);
  std::vector<RElem> h = {r.one()};
  in_h[r.index(r.one())] = true;
  for (size_t i = 0; i < n; ++i) {
    RElem g = r.from_index(i);
    if (!r.is_unit(g) || in_h[i]) continue;
    long d = 1;
    RElem gp = g;
    while (!in_h[r.index(gp)]) {
      gp = r.mul(gp, g);
      ++d;
    }
    s.gens.push_back(g);
    s.rel_orders.push_back(d);
    std::vector<RElem> nh;
    RElem gk = r.one();
    for (long k = 0; k < d; ++k) {
      for (const auto& e : h) {
        RElem x = r.mul(gk, e);
        nh.push_back(x);
        in_h[r.index(x)] = true;
      }
      gk = r.mul(gk, g);
    }
    h = std::move(nh);
  }
  return s;
}

int unit_char_conductor(const ResidueRing& r, const std::vector<Rational>& logs) {
  int c = r.level();
  // smallest c' such that the character is trivial on 1 + (p^{c'})
  for (int cp = 0; cp <= r.level(); ++cp) {
    bool trivial = true;
    for (size_t i = 0; i < r.size() && trivial; ++i) {
      RElem u = r.from_index(i);
      if (!r.is_unit(u)) continue;
      RElem um1 = r.sub(u, r.one());
      if (r.val(um1) < cp) continue;  // not in 1 + (p^{c'})
      if (logs[i] != 0) trivial = false;
    }
    if (trivial) {
      c = cp;
      break;
    }
  }
  return c;
}

std::vector<UnitChar> enumerate_unit_characters(const ResidueRing& r) {
  size_t n = r.size();
  UnitGroupStructure s = unit_group_structure(r);
  // value tables on the growing subgroup chain, additively in Q/Z
  struct Partial {
    std::vector<Rational> logs;  // indexed by ring index; only subgroup slots valid
  };
  std::vector<Partial> chars(1);
  chars[0].logs.assign(n, Rational(0));
  std::vector<RElem> h = {r.one()};
  auto modone = [](Rational x) {
    mpz_class fl = x.get_num() / x.get_den();
    if (x < 0 && fl * x.get_den() != x.get_num()) fl -= 1;
    Rational y = x - Rational(fl);
    y.canonicalize();
    return y;
  };
  for (size_t gi = 0; gi < s.gens.size(); ++gi) {
    const RElem& g = s.gens[gi];
    long d = s.rel_orders[gi];
    RElem gd = r.pow(g, d);
    std::vector<Partial> next;
    next.reserve(chars.size() * static_cast<size_t>(d));
    for (const auto& ch : chars) {
      Rational w0 = ch.logs[r.index(gd)];
      for (long t = 0; t < d; ++t) {
        Partial ext;
        ext.logs.assign(n, Rational(0));
        Rational v = modone((w0 + t) / d);
        RElem gk = r.one();
        for (long k = 0; k < d; ++k) {
          for (const auto& e : h) {
            RElem x = r.mul(gk, e);
            ext.logs[r.index(x)] = modone(Rational(k) * v + ch.logs[r.index(e)]);
          }
          gk = r.mul(gk, g);
        }
        next.push_back(std::move(ext));
      }
    }
    chars = std::move(next);
    std::vector<RElem> nh;
    RElem gk = r.one();
    for (long k = 0; k < d; ++k) {
      for (const auto& e : h) nh.push_back(r.mul(gk, e));
      gk = r.mul(gk, g);
    }
    h = std::move(nh);
  }
  std::vector<UnitChar> out;
  out.reserve(chars.size());
  for (auto& ch : chars) {
    UnitChar uc;
    uc.level = r.level();
    uc.logs = std::move(ch.logs);
    uc.conductor = unit_char_conductor(r, uc.logs);
    out.push_back(std::move(uc));
  }
  return out;
}

UnitChar unit_char_lift(const ResidueRing& to, const UnitChar& ch) {
  if (ch.level > to.level()) throw PadicError("cannot lift downward");
  UnitChar out;
  out.level = to.level();
  out.logs.assign(to.size(), Rational(0));
  for (size_t i = 0; i < to.size(); ++i) {
    RElem u = to.from_index(i);
    if (!to.is_unit(u)) continue;
    out.logs[i] = ch.log_of(to, u);
  }
  out.conductor = ch.conductor;
  return out;
}

UnitChar unit_char_mul(const ResidueRing& r, const UnitChar& a, const UnitChar& b) {
  UnitChar la = unit_char_lift(r, a), lb = unit_char_lift(r, b);
  UnitChar out;
  out.level = r.level();
  out.logs.assign(r.size(), Rational(0));
  for (size_t i = 0; i < r.size(); ++i) {
    Rational s = la.logs[i] + lb.logs[i];
    if (s >= 1) s -= 1;
    s.canonicalize();
    out.logs[i] = s;
  }
  out.conductor = unit_char_conductor(r, out.logs);
  return out;
}

UnitChar unit_char_inv(const ResidueRing& r, const UnitChar& a) {
  UnitChar la = unit_char_lift(r, a);
  UnitChar out;
  out.level = r.level();
  out.logs.assign(r.size(), Rational(0));
  for (size_t i = 0; i < r.size(); ++i) {
    Rational s = la.logs[i] == 0 ? Rational(0) : Rational(1) - la.logs[i];
    s.canonicalize();
    out.logs[i] = s;
  }
  out.conductor = unit_char_conductor(r, out.logs);
  return out;
}

}  // namespace psv
