#pragma once
// Finite-level model of the smooth principal series of GL3(F) (and of the
// Levi GL2 x GL1): flag cosets at level M, evaluation, group action, the
// Hecke operator tau_ell, N0-invariants, Z_L^+ eigenspaces, restriction to
// the Levi, and the Steinberg functional.

#include "psv/characters.hpp"
#include "psv/glin.hpp"

#include <unordered_map>

namespace psv {

struct PsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// matrix over a residue ring, row major
using RingMat = std::vector<RElem>;

class FlagModel {
 public:
  static FlagModel build(const PadicContext* ctx, int n, int M);

  const PadicContext* context() const { return ctx_; }
  int n() const { return n_; }
  int level() const { return M_; }
  const ResidueRing& ring() const { return ring_; }
  size_t size() const { return reps_.size(); }
  const RingMat& rep(size_t i) const { return reps_[i]; }
  MatF rep_lift(size_t i) const;  // exact integer lift

  struct SectionResult {
    size_t rep;
    std::array<RElem, 3> diag;  // pivots: the diagonal of the b-part
  };
  // g = rep * b with b upper triangular over R_M; g must be invertible
  SectionResult section(const RingMat& g) const;

  RingMat ring_mul(const RingMat& a, const RingMat& b) const;
  RingMat reduce_mat(const MatF& g) const;  // entries mod varpi^M

 private:
  const PadicContext* ctx_ = nullptr;
  int n_ = 0, M_ = 0;
  ResidueRing ring_;
  std::vector<RingMat> reps_;
  std::unordered_map<std::string, size_t> index_;

  static std::string key_of(const RingMat& m, const ResidueRing& r);
  // canonical form + pivot diagonal, without index lookup
  static std::pair<RingMat, std::array<RElem, 3>> canonicalize(
      const RingMat& g, const ResidueRing& r, int n);
};

struct PSVector {
  const FlagModel* model = nullptr;
  std::array<SmoothChar, 3> chi;
  std::vector<Cyclo> values;

  bool is_zero() const;
  friend PSVector operator+(const PSVector& a, const PSVector& b);
  friend PSVector operator-(const PSVector& a, const PSVector& b);
  friend PSVector operator*(const Cyclo& c, const PSVector& a);
};

struct LeviPSVector {
  const FlagModel* model = nullptr;  // n = 2 flag model
  std::array<SmoothChar, 2> chi;     // chi1, chi2 on the GL2 factor
  SmoothChar chi3;                   // GL1 twist datum
  std::vector<Cyclo> values;

  bool is_zero() const;
  friend LeviPSVector operator-(const LeviPSVector& a, const LeviPSVector& b);
};

// f(g) via g = k*b, f(k b) = chi(b)^{-1} f(k)
Cyclo ps_eval(const PSVector& f, const MatF& g);
// the same vector read in the opposite model (functions on B\G with right
// translation): value on the right coset of g, i.e. ps_eval at g^{-1}
Cyclo ps_eval_right(const PSVector& f, const MatF& g);
// fast path: g already an invertible matrix over R_M
Cyclo ps_eval_ring(const PSVector& f, const RingMat& g);

Cyclo levi_eval(const LeviPSVector& f, const MatF& g2);

// (gamma f)(g) = f(gamma^{-1} g)
PSVector group_act(const MatF& gamma, const PSVector& f);

// tau_ell for ell = diag(l1,l2,l3) in L^+ (block 2+1); f must be N0-invariant
PSVector hecke_tau(const MatF& ell, const PSVector& f);
// [N0 : ell N0 ell^{-1}]
long hecke_index(const MatF& ell);

struct N0Orbit {
  std::vector<size_t> points;
  std::vector<Cyclo> transport;  // f(points[i]) = transport[i] * f(points[0])
  bool forced_zero = false;      // inconsistent cocycle: f vanishes here
};

std::vector<N0Orbit> n0_orbits(const FlagModel& model,
                               const std::array<SmoothChar, 3>& chi);
std::vector<PSVector> n0_invariants(const FlagModel& model,
                                    const std::array<SmoothChar, 3>& chi);

// {f N0-invariant : tau_{z1} f = chi1 chi2(varpi) f, f(u g) = chi(u) f(g) for
// unit central u in Z_L}
std::vector<PSVector> zlplus_eigenspace(const FlagModel& model,
                                        const std::array<SmoothChar, 3>& chi);

// kernel of (tau_{z1} - chi1 chi2(varpi))^power on the N0-invariants, still
// subject to the unit-central equivariance; power = 1 recovers the strict
// eigenspace, power = 2 absorbs the Jordan block that appears when the
// Z_L-characters of two Jacquet constituents collide
std::vector<PSVector> zlplus_generalized_eigenspace(
    const FlagModel& model, const std::array<SmoothChar, 3>& chi, int power);

LeviPSVector restrict_to_levi(const PSVector& f, const FlagModel& levi_model);

// int_{U cap L} f(x s1) dx for f supported in the big cell of the Levi flag
Cyclo steinberg_projection(const LeviPSVector& f);

}  // namespace psv
