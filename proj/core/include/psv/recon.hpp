#pragma once
// The explicit-formula engine: helper integrals h and k, the six patchwise
// reconstruction formulas recovering an eigenspace vector from its
// restriction to the Levi, and verifiers for the supporting identities.

#include "psv/prinseries.hpp"

namespace psv {

struct ReconError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// eta1 = chi1^{-1} chi2, eta2 = chi2^{-1} chi3, with the two guard constants
//   C1 = delta_{c(eta2)=0} (q-1)/(q - eta2(varpi))
//   C2 = delta_{c(eta1 eta2)=0} q (q-1)/(q^2 - eta1 eta2(varpi))
struct EtaPair {
  SmoothChar eta1, eta2, eta12;
  int c2 = 0, c12 = 0;
  Cyclo C1, C2;

  static EtaPair make(const SmoothChar& eta1, const SmoothChar& eta2);
  static EtaPair from_chi(const std::array<SmoothChar, 3>& chi);
};

// f(lower(a)) and f(upper(a) s1) on a in R_M, the data the formulas consume
struct LeviRestrictionData {
  const PadicContext* ctx = nullptr;
  int level = 0;
  std::vector<Cyclo> lower;     // a -> f([[1,0],[a,1]] embedded)
  std::vector<Cyclo> upper_s1;  // a -> f([[1,a],[0,1]] s1 embedded)
};

LeviRestrictionData levi_tables(const LeviPSVector& lf);

// value table of a compactly supported locally constant g: F -> Q(zeta),
// supported in O, constant on balls of radius `level`
struct GTable {
  const PadicContext* ctx = nullptr;
  int level = 1;
  std::vector<Cyclo> values;  // indexed by ring(level)

  Cyclo at(const FScalar& x) const;  // 0 outside O
};

// k(a,b,c) = int_O eta2(1+at) g(b+ct) dt, val(a) >= 1
Cyclo k_integral(const FScalar& a, const FScalar& b, const FScalar& c,
                 const SmoothChar& eta2, const GTable& g);
// h(a,b) = int_O eta2(t)(g(a+bt)-g(a)) dt + C1 g(a), a,b in O
Cyclo h_integral(const FScalar& a, const FScalar& b, const SmoothChar& eta2,
                 const GTable& g, const Cyclo& C1);

// g of the density argument: c = max(c(eta2),1); -1 on O minus (-1+(varpi^c)),
// q^c - 1 on -1+(varpi^c)
GTable special_g(const SmoothChar& eta2);

enum class Patch { E, S1, S2, S1S2, S2S1, W0 };

struct PatchPoint {
  Patch patch;
  FScalar a, b, c;  // unused slots ignored per patch
};

// the displayed left-hand-side matrix of the patch point
MatF patch_matrix(const PadicContext* ctx, const PatchPoint& pt);

Cyclo reconstruct(const LeviRestrictionData& data, const EtaPair& eta,
                  const PatchPoint& pt);

// all level-M coordinate tuples of every patch
std::vector<PatchPoint> enumerate_patch_points(const PadicContext* ctx, int M);

struct ExplicitReport {
  int eigen_dim = 0;
  long checks = 0;
  long failures = 0;
  bool eq2_ok = true;
  std::string first_failure;
};

ExplicitReport verify_theorem_explicit(const FlagModel& model,
                                       const std::array<SmoothChar, 3>& chi,
                                       const FlagModel& levi_model);

// rebuild a full eigenspace vector from Levi data via the six formulas plus
// N0-transport; throws on conflicts or uncovered orbits
PSVector assemble_from_levi(const FlagModel& model,
                            const std::array<SmoothChar, 3>& chi,
                            const LeviRestrictionData& data);

// int_{O minus (varpi^k)} eta2 = delta_{c(eta2)=0} (q-1)/(q-eta2(varpi)) *
// (1 - (eta2(varpi)/q)^k), checked exactly for 1 <= k <= k_max
bool verify_int_chi(const SmoothChar& eta2, int k_max);

struct LemmaReport {
  int k_min = 0, k_max = 0;
  std::vector<bool> holds;  // per k in [k_min, k_max]
  int stabilized_k = -1;    // smallest k from which all later ks hold
  bool holds_at_max = false;
};

// f((1,0,y; x,1,ay; 0,0,1) s2 s1) = eta1 eta2(y) eta2(a-x) f(lower(a)),
// tested for y = varpi^{-k}, all a in R_M; requires val(x) < 0
LemmaReport verify_s2s1_formula(const PSVector& f, const FScalar& x, int k_min,
                                int k_max);
// f((1,0,y; x,1,0; 0,0,1) s2 s1) = int int eta1eta2(y+s)
//   eta2(t/(y+s)-x) f(lower(t/(y+s))) ds dt, y = varpi^{-k}
LemmaReport verify_s2s1_variant(const PSVector& f, const FScalar& x, int k_min,
                                int k_max);

}  // namespace psv
