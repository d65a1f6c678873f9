#pragma once
// Exact arithmetic in cyclotomic fields Q(zeta_N), p-adic valuations of
// monomial elements, and exact linear algebra over Q(zeta_N).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace psv {

using Rational = mpq_class;

struct CycloError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Session-wide cap on the cyclotomic order reachable through coercions.
// Large orders mean someone fed us characters far outside the intended range.
void set_cyclo_order_cap(int cap);
int cyclo_order_cap();

// Element of Q(zeta_N) in the power basis of Q[x]/Phi_N(x).
// Arithmetic between different orders coerces to the lcm. After every
// operation the representation is shrunk back to rational / minimal-order
// monomial form when possible, so orders do not creep upward.
class Cyclo {
 public:
  Cyclo() : order_(1), c_(1, Rational(0)) {}
  Cyclo(const Rational& r) : order_(1), c_(1, r) { c_[0].canonicalize(); }
  Cyclo(long v) : order_(1), c_(1, Rational(v)) {}
  Cyclo(int v) : Cyclo(static_cast<long>(v)) {}

  // zeta_n^k
  static Cyclo zeta(int n, long k = 1);
  static Cyclo from_coeffs(int order, std::vector<Rational> coeffs);

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;  // throws unless is_rational()

  // r * zeta_n^k decomposition (n = order_ after normalization); nullopt if
  // the element is not a rational multiple of a root of unity.
  struct Monomial {
    Rational scale;
    int root_order;
    long root_pow;
  };
  std::optional<Monomial> as_monomial() const;

  Cyclo operator-() const;
  Cyclo inverse() const;  // throws on zero
  Cyclo pow(long e) const;

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b);
  Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
  Cyclo& operator-=(const Cyclo& b) { return *this = *this - b; }
  Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }
  Cyclo& operator/=(const Cyclo& b) { return *this = *this / b; }

  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  std::string str() const;

 private:
  Cyclo(int order, std::vector<Rational> coeffs)
      : order_(order), c_(std::move(coeffs)) {}
  Cyclo to_order(int m) const;  // m must be a multiple of order_
  void normalize();

  int order_;
  std::vector<Rational> c_;  // length phi(order_)
};

// Valuation value: finite or +infinity (valuation of 0).
struct PadicVal {
  bool infinite = false;
  long v = 0;

  static PadicVal inf() { return {true, 0}; }
  static PadicVal of(long x) { return {false, x}; }
  friend bool operator==(const PadicVal&, const PadicVal&) = default;
};

PadicVal rational_valuation(const Rational& r, long p);

// v_p on the subring {rational * root of unity, p coprime to the root order}.
// Anything outside that subring is refused: picking a prime of Q(zeta_N)
// above p would silently fix a choice the caller never made.
PadicVal padic_valuation(const Cyclo& a, long p);

class CycloMatrix {
 public:
  CycloMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Cyclo& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Cyclo& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

 private:
  int rows_, cols_;
  std::vector<Cyclo> a_;
};

// Exact right-kernel basis via division-controlled Gaussian elimination with
// first-nonzero pivoting. Empty result iff the matrix is injective.
std::vector<std::vector<Cyclo>> kernel_basis(const CycloMatrix& m);
int exact_rank(const CycloMatrix& m);

}  // namespace psv
