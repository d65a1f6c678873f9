#pragma once
// Smooth characters of F^x and the smooth x algebraic character data consumed
// by the irreducibility criteria.

#include "psv/padic.hpp"

namespace psv {

struct CharError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// chi(varpi^v u) = at_uniformizer^v * unit_char(u mod varpi^c).
// unit_char is always stored at level exactly c.
struct SmoothChar {
  const PadicContext* ctx = nullptr;
  Cyclo at_uniformizer = Cyclo(1L);
  UnitChar unit_char;
  int conductor = 0;

  static SmoothChar trivial(const PadicContext* ctx);
  static SmoothChar unramified(const PadicContext* ctx, Cyclo at_unif);
  static SmoothChar norm_char(const PadicContext* ctx);  // |.|_F
  static SmoothChar make(const PadicContext* ctx, Cyclo at_unif,
                         const UnitChar& uc);

  bool is_trivial() const { return conductor == 0 && at_uniformizer == Cyclo(1L); }
  bool is_unramified() const { return conductor == 0; }
  friend bool operator==(const SmoothChar& a, const SmoothChar& b) {
    return a.at_uniformizer == b.at_uniformizer && a.conductor == b.conductor &&
           a.unit_char.logs == b.unit_char.logs;
  }
  friend bool operator!=(const SmoothChar& a, const SmoothChar& b) {
    return !(a == b);
  }
};

Cyclo char_eval(const SmoothChar& chi, const FScalar& x);
// evaluation on a residue-ring element of valuation v_extra in varpi^Z * R_m^x
Cyclo char_eval_unit(const SmoothChar& chi, const ResidueRing& r, const RElem& u);

SmoothChar char_mul(const SmoothChar& a, const SmoothChar& b);
SmoothChar char_inv(const SmoothChar& a);
SmoothChar char_pow(const SmoothChar& a, long e);

// t |-> prod_kappa kappa(t)^{a_kappa}; Hom(F,C) modeled as f labels.
struct AlgebraicPart {
  std::vector<long> exponents;  // length f

  static AlgebraicPart zero(int f) { return {std::vector<long>(static_cast<size_t>(f), 0)}; }
  bool is_zero() const {
    for (long e : exponents)
      if (e != 0) return false;
    return true;
  }
  friend bool operator==(const AlgebraicPart&, const AlgebraicPart&) = default;
};

struct CharDatum {
  SmoothChar smooth;
  AlgebraicPart algebraic;

  friend bool operator==(const CharDatum& a, const CharDatum& b) {
    return a.smooth == b.smooth && a.algebraic == b.algebraic;
  }
  friend bool operator!=(const CharDatum& a, const CharDatum& b) {
    return !(a == b);
  }
};

CharDatum datum_mul(const CharDatum& a, const CharDatum& b);
CharDatum datum_inv(const CharDatum& a);

struct NonPositiveResult {
  bool ok = false;
  std::vector<long> witness;  // the exponent tuple when ok
};

// true iff the smooth part is trivial and every exponent is <= 0
NonPositiveResult is_non_positive_algebraic(const CharDatum& d);

}  // namespace psv
