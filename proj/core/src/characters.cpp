#include "psv/characters.hpp"

namespace psv {

namespace {

UnitChar trivial_unit_char(const PadicContext* ctx) {
  UnitChar uc;
  uc.level = 0;
  uc.logs.assign(1, Rational(0));
  uc.conductor = 0;
  (void)ctx;
  return uc;
}

// restrict a character known to factor through level c
UnitChar unit_char_truncate(const PadicContext* ctx, const UnitChar& ch, int c) {
  if (c == ch.level) return ch;
  if (c > ch.level) throw CharError("truncation above the stored level");
  UnitChar out;
  out.level = c;
  ResidueRing rc = ctx->ring(c);
  out.logs.assign(rc.size(), Rational(0));
  ResidueRing rl = ctx->ring(ch.level);
  // any lift of a unit of R_c works since ch factors through R_c^x
  for (size_t i = 0; i < rc.size(); ++i) {
    RElem u = rc.from_index(i);
    if (!rc.is_unit(u)) continue;
    out.logs[i] = ch.logs[rl.index(u)];  // same coeffs read as a lift
  }
  out.conductor = ch.conductor;
  return out;
}

}  // namespace

SmoothChar SmoothChar::trivial(const PadicContext* ctx) {
  SmoothChar s;
  s.ctx = ctx;
  s.unit_char = trivial_unit_char(ctx);
  return s;
}

SmoothChar SmoothChar::unramified(const PadicContext* ctx, Cyclo at_unif) {
  if (at_unif.is_zero()) throw CharError("character value must be nonzero");
  SmoothChar s = trivial(ctx);
  s.at_uniformizer = std::move(at_unif);
  return s;
}

SmoothChar SmoothChar::norm_char(const PadicContext* ctx) {
  return unramified(ctx, Cyclo(Rational(1, static_cast<long>(ctx->q()))));
}

SmoothChar SmoothChar::make(const PadicContext* ctx, Cyclo at_unif,
                            const UnitChar& uc) {
  if (at_unif.is_zero()) throw CharError("character value must be nonzero");
  SmoothChar s;
  s.ctx = ctx;
  s.at_uniformizer = std::move(at_unif);
  int c = uc.conductor;
  if (c == 0) {
    s.unit_char = trivial_unit_char(ctx);
  } else {
    if (uc.level < c) throw CharError("unit character below its conductor");
    s.unit_char = unit_char_truncate(ctx, uc, c);
  }
  s.conductor = c;
  return s;
}

Cyclo char_eval_unit(const SmoothChar& chi, const ResidueRing& r,
                     const RElem& u) {
  if (chi.conductor == 0) return Cyclo(1L);
  if (r.level() < chi.conductor)
    throw PrecisionError("unit known below the conductor");
  return chi.unit_char.eval(r, u);
}

Cyclo char_eval(const SmoothChar& chi, const FScalar& x) {
  if (x.is_exact_zero()) throw CharError("character evaluated at zero");
  PadicVal v = x.val();  // throws PrecisionError on uncertified input
  Cyclo res = chi.at_uniformizer.pow(v.v);
  if (chi.conductor > 0) {
    RElem u = x.unit_at(chi.conductor);
    res *= chi.unit_char.eval(chi.ctx->ring(chi.conductor), u);
  }
  return res;
}

SmoothChar char_mul(const SmoothChar& a, const SmoothChar& b) {
  const PadicContext* ctx = a.ctx ? a.ctx : b.ctx;
  int lv = std::max(a.conductor, b.conductor);
  SmoothChar s;
  s.ctx = ctx;
  s.at_uniformizer = a.at_uniformizer * b.at_uniformizer;
  if (lv == 0) {
    s.unit_char = trivial_unit_char(ctx);
    s.conductor = 0;
    return s;
  }
  ResidueRing r = ctx->ring(lv);
  UnitChar prod = unit_char_mul(r, a.unit_char, b.unit_char);
  s.conductor = prod.conductor;
  s.unit_char = s.conductor == 0 ? trivial_unit_char(ctx)
                                 : unit_char_truncate(ctx, prod, s.conductor);
  return s;
}

SmoothChar char_inv(const SmoothChar& a) {
  SmoothChar s;
  s.ctx = a.ctx;
  s.at_uniformizer = a.at_uniformizer.inverse();
  s.conductor = a.conductor;
  if (a.conductor == 0) {
    s.unit_char = trivial_unit_char(a.ctx);
  } else {
    s.unit_char = unit_char_inv(a.ctx->ring(a.conductor), a.unit_char);
  }
  return s;
}

SmoothChar char_pow(const SmoothChar& a, long e) {
  if (e < 0) return char_pow(char_inv(a), -e);
  SmoothChar acc = SmoothChar::trivial(a.ctx);
  for (long i = 0; i < e; ++i) acc = char_mul(acc, a);
  return acc;
}

CharDatum datum_mul(const CharDatum& a, const CharDatum& b) {
  CharDatum d;
  d.smooth = char_mul(a.smooth, b.smooth);
  d.algebraic.exponents = a.algebraic.exponents;
  for (size_t i = 0; i < d.algebraic.exponents.size(); ++i)
    d.algebraic.exponents[i] += b.algebraic.exponents[i];
  return d;
}

CharDatum datum_inv(const CharDatum& a) {
  CharDatum d;
  d.smooth = char_inv(a.smooth);
  d.algebraic.exponents = a.algebraic.exponents;
  for (auto& e : d.algebraic.exponents) e = -e;
  return d;
}

NonPositiveResult is_non_positive_algebraic(const CharDatum& d) {
  NonPositiveResult r;
  if (!d.smooth.is_trivial()) return r;
  for (long e : d.algebraic.exponents)
    if (e > 0) return r;
  r.ok = true;
  r.witness = d.algebraic.exponents;
  return r;
}

}  // namespace psv
