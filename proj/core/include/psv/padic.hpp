#pragma once
// Residue rings O_F/(p^m) for F/Q_p unramified of degree f, scalars of F with
// tracked precision, Haar integration of level-m functions, and the dual
// groups of the unit quotients.

#include "psv/cyclo.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace psv {

struct PadicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionError : PadicError {
  using PadicError::PadicError;
};

inline constexpr int kMaxResidueDegree = 4;

// Coefficients of an element of (Z/p^m)[x]/(modpoly), low degree first.
// Only the first f slots are meaningful.
struct RElem {
  std::array<int64_t, kMaxResidueDegree> c{0, 0, 0, 0};
  friend bool operator==(const RElem&, const RElem&) = default;
};

class PadicContext;

class ResidueRing {
 public:
  ResidueRing() = default;
  ResidueRing(const PadicContext* ctx, int m);

  const PadicContext* context() const { return ctx_; }
  int level() const { return m_; }
  int64_t p() const;
  int degree() const;
  int64_t pm() const { return pm_; }      // p^m
  int64_t q() const;                      // p^f
  size_t size() const;                    // q^m

  RElem zero() const { return RElem{}; }
  RElem one() const;
  RElem from_int(int64_t v) const;

  RElem add(const RElem& a, const RElem& b) const;
  RElem sub(const RElem& a, const RElem& b) const;
  RElem neg(const RElem& a) const;
  RElem mul(const RElem& a, const RElem& b) const;
  RElem pow(const RElem& a, long e) const;  // e >= 0, or unit with any e
  RElem inv(const RElem& a) const;          // throws unless unit

  // largest j <= m with a in (p^j); val(0) = m
  int val(const RElem& a) const;
  bool is_unit(const RElem& a) const { return val(a) == 0; }
  bool is_zero(const RElem& a) const { return val(a) == m_; }

  RElem reduce(const RElem& a, int m2) const;  // to ring(m2), m2 <= m

  size_t index(const RElem& a) const;
  RElem from_index(size_t idx) const;
  std::vector<RElem> elements() const;
  std::vector<RElem> units() const;

 private:
  const PadicContext* ctx_ = nullptr;
  int m_ = 0;
  int64_t pm_ = 1;
};

class PadicContext {
 public:
  PadicContext(long p, int f, int level);

  long p() const { return p_; }
  int f() const { return f_; }
  int level() const { return level_; }  // session precision M
  int64_t q() const { return q_; }
  const std::vector<int64_t>& modpoly() const { return modpoly_; }  // monic, deg f
  ResidueRing ring(int m) const { return ResidueRing(this, m); }
  ResidueRing top() const { return ring(level_); }

 private:
  long p_;
  int f_;
  int level_;
  int64_t q_;
  std::vector<int64_t> modpoly_;  // lift of an irreducible poly over F_p, coeffs in [0,p)
};

// Scalar of F. Three states:
//  - Exact: coordinate vector over Q in the power basis of the (unramified)
//    field, loss-free under all arithmetic;
//  - Approx: p^val * unit with the unit known mod p^prec;
//  - ZeroAtPrec: indistinguishable from 0 at the stated absolute precision.
class FScalar {
 public:
  enum class Kind { Exact, Approx, ZeroAtPrec };

  static FScalar exact_zero(const PadicContext* ctx);
  static FScalar from_rational(const PadicContext* ctx, const Rational& r);
  static FScalar from_coeffs(const PadicContext* ctx, std::vector<Rational> c);
  static FScalar from_relem(const PadicContext* ctx, const ResidueRing& r,
                            const RElem& a);  // exact integer lift
  static FScalar uniformizer_pow(const PadicContext* ctx, long k);
  static FScalar approx(const PadicContext* ctx, long val, const RElem& unit,
                        int prec);
  static FScalar zero_at_prec(const PadicContext* ctx, int prec);

  Kind kind() const { return kind_; }
  const PadicContext* context() const { return ctx_; }
  bool is_exact() const { return kind_ == Kind::Exact; }
  bool is_exact_zero() const;

  // Exact/Approx only; ZeroAtPrec has no certified valuation.
  PadicVal val() const;
  // lower bound on the valuation, always available
  long val_lower_bound() const;
  bool val_certain() const { return kind_ != Kind::ZeroAtPrec; }

  // guaranteed precision of the unit part (Approx), or +infinity (Exact)
  bool unit_prec_at_least(int c) const;
  // Approx / ZeroAtPrec stored precision
  int prec() const { return prec_; }
  // unit part mod p^c
  RElem unit_at(int c) const;
  // reduction mod p^c of an integral scalar (val >= 0 required)
  RElem residue_at(int c) const;

  const std::vector<Rational>& exact_coeffs() const;
  Rational exact_rational() const;  // f = 1 convenience

  FScalar operator-() const;
  FScalar inverse() const;
  friend FScalar operator+(const FScalar& a, const FScalar& b);
  friend FScalar operator-(const FScalar& a, const FScalar& b);
  friend FScalar operator*(const FScalar& a, const FScalar& b);
  friend FScalar operator/(const FScalar& a, const FScalar& b);

  // decidable only when both sides exact; otherwise agreement at the shared
  // guaranteed precision
  bool agrees_with(const FScalar& b) const;

  std::string str() const;

  FScalar() = default;  // exact zero over no context; assign before use

 private:
  FScalar to_approx(int prec) const;

  Kind kind_ = Kind::Exact;
  const PadicContext* ctx_ = nullptr;
  std::vector<Rational> ex_;  // Exact: length f
  long val_ = 0;              // Approx
  RElem unit_{};              // Approx: element of ring(prec_)
  int prec_ = 0;              // Approx / ZeroAtPrec
};

// Subsets of F used as integration domains.
struct CosetDomain {
  enum class Kind { FullO, Units, Ball, UnitComplement };
  Kind kind = Kind::FullO;
  // Ball: center + p^radius * O
  FScalar center;
  int radius = 0;
  // UnitComplement: O \ (p^k)
  int k = 0;

  static CosetDomain full_o() { return {}; }
  static CosetDomain units() {
    CosetDomain d;
    d.kind = Kind::Units;
    return d;
  }
  static CosetDomain ball(FScalar center, int radius) {
    CosetDomain d;
    d.kind = Kind::Ball;
    d.center = std::move(center);
    d.radius = radius;
    return d;
  }
  static CosetDomain o_minus_power(int k) {
    CosetDomain d;
    d.kind = Kind::UnitComplement;
    d.k = k;
    return d;
  }

  Rational volume(const ResidueRing& r) const;  // under vol(O) = 1
};

// Integrand: explicit value table on R_m, indexed by ResidueRing::index.
using Integrand = std::vector<Cyclo>;

// q^{-m} * sum of fn over the residue points of dom (intersected with O).
Cyclo haar_integrate(const Integrand& fn, const CosetDomain& dom,
                     const ResidueRing& r);

// Character of (O/p^c)^x, values recorded additively in Q/Z.
struct UnitChar {
  int level = 0;               // c
  std::vector<Rational> logs;  // size q^c, defined on unit indices, in [0,1)
  int conductor = 0;

  bool is_trivial() const { return conductor == 0; }
  // u must be a unit in ring(lv) with lv >= level
  Cyclo eval(const ResidueRing& r, const RElem& u) const;
  Rational log_of(const ResidueRing& r, const RElem& u) const;
  friend bool operator==(const UnitChar&, const UnitChar&) = default;
};

struct UnitGroupStructure {
  std::vector<RElem> gens;       // chain generators of (O/p^c)^x
  std::vector<long> rel_orders;  // relative order of each generator
};

UnitGroupStructure unit_group_structure(const ResidueRing& r);

// The full dual group of (O/p^c)^x, each character with exact conductor.
std::vector<UnitChar> enumerate_unit_characters(const ResidueRing& r);

int unit_char_conductor(const ResidueRing& r, const std::vector<Rational>& logs);
UnitChar unit_char_lift(const ResidueRing& to, const UnitChar& ch);
UnitChar unit_char_mul(const ResidueRing& r, const UnitChar& a, const UnitChar& b);
UnitChar unit_char_inv(const ResidueRing& r, const UnitChar& a);

int64_t mod_inverse(int64_t a, int64_t mod);
// residue of a rational with p-coprime denominator
int64_t rational_mod(const Rational& r, int64_t p, int64_t pk);

}  // namespace psv
