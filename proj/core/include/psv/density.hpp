#pragma once
// The approximation family: f_n with prescribed Levi restriction, its
// translate h_n, the comparison function h'_n with values on the line C*v,
// and the finite-level verification of the norm hypotheses (inf-norm lower
// bound for h'_n, geometric decay of h_n - h'_n).

#include "psv/recon.hpp"

namespace psv {

struct DensityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DensityConfig {
  const PadicContext* ctx = nullptr;
  std::array<SmoothChar, 3> chi;
  EtaPair eta;
  GTable g;        // the mean-zero bump of special_g(eta2)
  Cyclo gamma;     // q / eta2(varpi), |gamma| < 1
  long vp_gamma = 0;
  int n_min = 1, n_max = 1;

  // requires chi1 != chi2, chi2 != chi3, eta2 ramified or != 1, the EtaPair
  // invariants, v_p(gamma) > 0, and c(eta2) <= n_min <= n_max <= M - level(g)
  static DensityConfig make(const PadicContext* ctx,
                            const std::array<SmoothChar, 3>& chi, int n_min,
                            int n_max);
};

// the eigenspace element with Levi data (0, gamma^n g(a / varpi^n))
PSVector build_fn(int n, const DensityConfig& cfg, const FlagModel& model);
// h_n := (s1 s2)^{-1} f_n
PSVector build_hn(int n, const DensityConfig& cfg, const FlagModel& model);
// h'_n assembled from its two displayed patch tables, zero elsewhere
PSVector build_hprime(int n, const DensityConfig& cfg, const FlagModel& model);
// the limiting Levi vector v
LeviPSVector build_v(const DensityConfig& cfg, const FlagModel& levi_model);

// closed-form cell values
Cyclo fn_expected(int n, const DensityConfig& cfg, const PatchPoint& pt);
// (1,0,0; a,1,0; b,c,1), a in (varpi), b,c in O
Cyclo hn_expected_lower(int n, const DensityConfig& cfg, const FScalar& a,
                        const FScalar& b, const FScalar& c);
// (1,a,0; 0,1,0; c,b,1) s1; depends only on c
Cyclo hn_expected_s1(int n, const DensityConfig& cfg, const FScalar& c);
Cyclo hprime_expected_lower(int n, const DensityConfig& cfg, const FScalar& a,
                            const FScalar& b, const FScalar& c);

struct DensityReport {
  bool ok = true;
  long checks = 0;
  std::vector<std::string> failures;

  long vp_gamma = 0;
  // inf-norm of h'_n: min over n and model points of v_p
  long hprime_min_val = 0;
  // v_p(h(0,-1)) + (c(eta1 eta2)+1) v_p(gamma), the witness-point valuation
  long hprime_witness_val = 0;
  // fitted decay constant: v_p((h_n - h'_n)(x)) >= n v_p(gamma) - r1
  long r1 = 0;
  bool r1_validated = false;
  std::vector<long> diff_min_val;  // per n; LONG_MAX means identically zero
  std::vector<long> s2cell_min_val;  // per n, h_n on the s2-type patch
};

DensityReport check_density_hypotheses(const DensityConfig& cfg,
                                       const FlagModel& model,
                                       const FlagModel& levi_model);

}  // namespace psv
