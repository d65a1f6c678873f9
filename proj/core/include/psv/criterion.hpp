#pragma once
// Symbolic irreducibility decisions for continuous principal series: the
// rank-2 and rank-3 criteria, the parabolic Q determined by the algebraic
// exponent differences, the one-directional rank-n criterion, the outer
// involution, and the character bookkeeping of the geometric lemma.

#include "psv/characters.hpp"

#include <optional>

namespace psv {

struct CriterionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CharTuple {
  std::vector<CharDatum> entries;

  int n() const { return static_cast<int>(entries.size()); }
  static CharTuple make(std::vector<CharDatum> entries);
};

// breakpoints 0 = n_0 < n_1 < ... < n_r = n; i is a breakpoint iff the
// exponent difference lambda_i - lambda_{i+1} is not componentwise <= 0
struct PartitionQ {
  std::vector<int> breakpoints;

  int blocks() const { return static_cast<int>(breakpoints.size()) - 1; }
  std::string name() const;  // "B", "2+1", "1+2", "G" for n = 3
};

enum class Decision { Reducible, Irreducible };

struct Verdict {
  Decision decision = Decision::Irreducible;
  // reducible: 1-based adjacent index i and the non-positive exponent tuple
  // with chi_i chi_{i+1}^{-1} = prod_kappa kappa^{k_kappa}
  std::optional<std::pair<int, std::vector<long>>> witness;
};

Verdict decide_gl2(const CharTuple& t);  // n = 2
Verdict decide_gl3(const CharTuple& t);  // n = 3

PartitionQ q_parabolic(const CharTuple& t);  // n = 3; any n accepted

enum class GlnDecision { Irreducible, Inconclusive };

struct GlnVerdict {
  GlnDecision decision = GlnDecision::Irreducible;
  // inconclusive: the violating (block k, i, j), i and j 1-based
  std::optional<std::array<int, 3>> witness;
};

// one-directional: Irreducible when no block pair violates the two
// conditions; otherwise Inconclusive with the violating triple
GlnVerdict decide_gln(const CharTuple& t);

// (chi_1, ..., chi_n) -> (chi_n^{-1}, ..., chi_1^{-1})
CharTuple iota_transform(const CharTuple& t);
// multiply every entry by a common datum
CharTuple twist(const CharTuple& t, const CharDatum& d);

struct GeomLemmaChars {
  std::array<SmoothChar, 3> chi_prime;   // chi1, chi3|.|, chi2|.|^{-1}
  std::array<SmoothChar, 3> chi_dprime;  // chi2|.|, chi3|.|, chi1|.|^{-2}
  bool zl_distinct_prime = false;        // chi2 != chi3 |.|
  bool zl_distinct_dprime = false;       // chi1 != chi3 |.|^2
};

GeomLemmaChars geometric_lemma_chars(const std::array<SmoothChar, 3>& chi);

}  // namespace psv
