#include "psv/criterion.hpp"

namespace psv {

namespace {

void require_n(const CharTuple& t, int n) {
  if (t.n() != n)
    throw CriterionError("criterion: expected a tuple of length " +
                         std::to_string(n));
}

// chi_i chi_{i+1}^{-1} for 1-based i
CharDatum adjacent_ratio(const CharTuple& t, int i) {
  return datum_mul(t.entries[static_cast<size_t>(i - 1)],
                   datum_inv(t.entries[static_cast<size_t>(i)]));
}

// lambda_i - lambda_j componentwise <= 0 (1-based indices)
bool exponents_non_positive(const CharTuple& t, int i, int j) {
  const auto& a = t.entries[static_cast<size_t>(i - 1)].algebraic.exponents;
  const auto& b = t.entries[static_cast<size_t>(j - 1)].algebraic.exponents;
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] - b[k] > 0) return false;
  return true;
}

}  // namespace

CharTuple CharTuple::make(std::vector<CharDatum> entries) {
  if (entries.size() < 2)
    throw CriterionError("CharTuple: need at least two characters");
  const PadicContext* ctx = entries.front().smooth.ctx;
  size_t f = entries.front().algebraic.exponents.size();
  for (const CharDatum& d : entries) {
    if (!d.smooth.ctx || d.smooth.ctx != ctx)
      throw CriterionError("CharTuple: mismatched contexts");
    if (d.algebraic.exponents.size() != f)
      throw CriterionError("CharTuple: mismatched exponent lengths");
  }
  if (f != static_cast<size_t>(ctx->f()))
    throw CriterionError("CharTuple: exponent length must equal f");
  CharTuple t;
  t.entries = std::move(entries);
  return t;
}

std::string PartitionQ::name() const {
  const int n = breakpoints.back();
  if (n == 3) {
    if (blocks() == 3) return "B";
    if (blocks() == 1) return "G";
    return breakpoints[1] == 2 ? "2+1" : "1+2";
  }
  std::string s;
  for (int b = 0; b < blocks(); ++b) {
    if (b) s += "+";
    s += std::to_string(breakpoints[static_cast<size_t>(b + 1)] -
                        breakpoints[static_cast<size_t>(b)]);
  }
  return s;
}

Verdict decide_gl2(const CharTuple& t) {
  require_n(t, 2);
  NonPositiveResult r = is_non_positive_algebraic(adjacent_ratio(t, 1));
  Verdict v;
  if (r.ok) {
    v.decision = Decision::Reducible;
    v.witness = {1, r.witness};
  }
  return v;
}

Verdict decide_gl3(const CharTuple& t) {
  require_n(t, 3);
  for (int i = 1; i <= 2; ++i) {
    NonPositiveResult r = is_non_positive_algebraic(adjacent_ratio(t, i));
    if (r.ok) {
      Verdict v;
      v.decision = Decision::Reducible;
      v.witness = {i, r.witness};
      return v;
    }
  }
  return Verdict{};
}

PartitionQ q_parabolic(const CharTuple& t) {
  PartitionQ q;
  q.breakpoints.push_back(0);
  for (int i = 1; i < t.n(); ++i)
    if (!exponents_non_positive(t, i, i + 1)) q.breakpoints.push_back(i);
  q.breakpoints.push_back(t.n());
  return q;
}

GlnVerdict decide_gln(const CharTuple& t) {
  const PadicContext* ctx = t.entries.front().smooth.ctx;
  SmoothChar norm = SmoothChar::norm_char(ctx);
  PartitionQ q = q_parabolic(t);
  for (int k = 0; k < q.blocks(); ++k) {
    const int lo = q.breakpoints[static_cast<size_t>(k)];
    const int hi = q.breakpoints[static_cast<size_t>(k + 1)];
    for (int i = lo + 1; i < hi; ++i)
      for (int j = i + 1; j <= hi; ++j) {
        if (hi - lo == 3 && j - i != 1) continue;
        // chi_i chi_j^{-1} = |.|^{j-i-1} x (exponent differences): in the
        // smooth x algebraic model the algebraic part matches automatically,
        // so the test is on the smooth parts
        SmoothChar ratio =
            char_mul(t.entries[static_cast<size_t>(i - 1)].smooth,
                     char_inv(t.entries[static_cast<size_t>(j - 1)].smooth));
        if (ratio == char_pow(norm, j - i - 1)) {
          GlnVerdict v;
          v.decision = GlnDecision::Inconclusive;
          v.witness = {{k, i, j}};
          return v;
        }
      }
  }
  return GlnVerdict{};
}

CharTuple iota_transform(const CharTuple& t) {
  std::vector<CharDatum> rev;
  rev.reserve(t.entries.size());
  for (auto it = t.entries.rbegin(); it != t.entries.rend(); ++it)
    rev.push_back(datum_inv(*it));
  return CharTuple::make(std::move(rev));
}

CharTuple twist(const CharTuple& t, const CharDatum& d) {
  std::vector<CharDatum> out;
  out.reserve(t.entries.size());
  for (const CharDatum& e : t.entries) out.push_back(datum_mul(e, d));
  return CharTuple::make(std::move(out));
}

GeomLemmaChars geometric_lemma_chars(const std::array<SmoothChar, 3>& chi) {
  const PadicContext* ctx = chi[0].ctx;
  if (!ctx || chi[1].ctx != ctx || chi[2].ctx != ctx)
    throw CriterionError("geometric_lemma_chars: mismatched contexts");
  SmoothChar norm = SmoothChar::norm_char(ctx);
  SmoothChar norm_inv = char_inv(norm);
  GeomLemmaChars out;
  out.chi_prime = {chi[0], char_mul(chi[2], norm), char_mul(chi[1], norm_inv)};
  out.chi_dprime = {char_mul(chi[1], norm), char_mul(chi[2], norm),
                    char_mul(chi[0], char_pow(norm, -2))};
  out.zl_distinct_prime = !(chi[1] == char_mul(chi[2], norm));
  out.zl_distinct_dprime = !(chi[0] == char_mul(chi[2], char_pow(norm, 2)));
  return out;
}

}  // namespace psv
