#pragma once
// Matrices over F with tracked precision, the Iwasawa decomposition G = KB,
// Weyl representatives, and Iwahori-Bruhat cell labels.

#include "psv/padic.hpp"

#include <array>

namespace psv {

struct GlinError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class MatF {
 public:
  MatF() = default;
  MatF(const PadicContext* ctx, int n);

  static MatF identity(const PadicContext* ctx, int n);
  // exact integer entries, row major
  static MatF from_ints(const PadicContext* ctx, int n,
                        std::initializer_list<long> vals);

  int n() const { return n_; }
  const PadicContext* context() const { return ctx_; }
  FScalar& at(int i, int j) { return e_[static_cast<size_t>(i * n_ + j)]; }
  const FScalar& at(int i, int j) const {
    return e_[static_cast<size_t>(i * n_ + j)];
  }

  FScalar det() const;  // n <= 3, exact expansion
  MatF inverse() const;
  MatF transpose() const;
  bool is_exact() const;
  bool agrees_with(const MatF& o) const;

  // embed a 2x2 block into the upper-left of a 3x3 (identity elsewhere)
  MatF embed3() const;

  friend MatF operator*(const MatF& a, const MatF& b);

  std::string str() const;

 private:
  const PadicContext* ctx_ = nullptr;
  int n_ = 0;
  std::vector<FScalar> e_;
};

struct IwasawaFactors {
  MatF k;  // entries in O, unit determinant
  MatF b;  // upper triangular
};

// g = k*b with the minimal-valuation pivot rule (ties to the lowest row).
// Throws PrecisionError when pivots cannot be certified.
IwasawaFactors iwasawa_decompose(const MatF& g);

// Label of the Iwahori double coset I w B, recorded as the permutation w
// (one-line images w(0..n-1)).
struct CellLabel {
  int n = 3;
  std::array<int, 3> w{0, 1, 2};

  std::string name() const;  // e, s1, s2, s1s2, s2s1, w0 (n=3); e, s1 (n=2)
  int length() const;        // Bruhat length
  friend bool operator==(const CellLabel&, const CellLabel&) = default;

  static CellLabel from_name(int n, const std::string& nm);
  CellLabel compose(const CellLabel& o) const;  // this * o as permutations
  CellLabel inverse() const;
};

// all Weyl labels in a fixed order with their integer representatives
std::vector<std::pair<CellLabel, MatF>> weyl_reps(const PadicContext* ctx,
                                                  int n = 3);
MatF s1_mat(const PadicContext* ctx);
MatF s2_mat(const PadicContext* ctx);
MatF w0_mat(const PadicContext* ctx);

// k integral with unit det, known mod at least varpi
CellLabel iwahori_cell(const MatF& k);

}  // namespace psv
