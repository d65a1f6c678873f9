#include "psv/glin.hpp"

#include <sstream>

namespace psv {

MatF::MatF(const PadicContext* ctx, int n) : ctx_(ctx), n_(n) {
  if (n < 1 || n > 3) throw GlinError("matrix size must be 1..3");
  e_.assign(static_cast<size_t>(n) * n, FScalar::exact_zero(ctx));
}

MatF MatF::identity(const PadicContext* ctx, int n) {
  MatF m(ctx, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = FScalar::from_rational(ctx, 1);
  return m;
}

MatF MatF::from_ints(const PadicContext* ctx, int n,
                     std::initializer_list<long> vals) {
  if (static_cast<int>(vals.size()) != n * n)
    throw GlinError("entry count mismatch");
  MatF m(ctx, n);
  auto it = vals.begin();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = FScalar::from_rational(ctx, Rational(*it++));
  return m;
}

MatF operator*(const MatF& a, const MatF& b) {
  if (a.n() != b.n()) throw GlinError("size mismatch");
  MatF c(a.context(), a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) {
      FScalar s = FScalar::exact_zero(a.context());
      for (int k = 0; k < a.n(); ++k) s = s + a.at(i, k) * b.at(k, j);
      c.at(i, j) = s;
    }
  return c;
}

FScalar MatF::det() const {
  if (n_ == 1) return at(0, 0);
  if (n_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
  FScalar d = FScalar::exact_zero(ctx_);
  d = d + at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1));
  d = d - at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0));
  d = d + at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
  return d;
}

MatF MatF::inverse() const {
  FScalar d = det();
  FScalar di = d.inverse();
  MatF inv(ctx_, n_);
  if (n_ == 1) {
    inv.at(0, 0) = di;
    return inv;
  }
  if (n_ == 2) {
    inv.at(0, 0) = at(1, 1) * di;
    inv.at(0, 1) = -at(0, 1) * di;
    inv.at(1, 0) = -at(1, 0) * di;
    inv.at(1, 1) = at(0, 0) * di;
    return inv;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // cofactor with the cyclic index trick keeps all signs positive
      inv.at(j, i) = (at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0)) * di;
    }
  return inv;
}

MatF MatF::transpose() const {
  MatF t(ctx_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool MatF::is_exact() const {
  for (const auto& x : e_)
    if (x.kind() != FScalar::Kind::Exact) return false;
  return true;
}

bool MatF::agrees_with(const MatF& o) const {
  if (n_ != o.n_) return false;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (!at(i, j).agrees_with(o.at(i, j))) return false;
  return true;
}

MatF MatF::embed3() const {
  if (n_ != 2) throw GlinError("embed3 expects a 2x2 matrix");
  MatF m = MatF::identity(ctx_, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.at(i, j) = at(i, j);
  return m;
}

std::string MatF::str() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    os << (i ? "; " : "[");
    for (int j = 0; j < n_; ++j) os << (j ? "," : "") << at(i, j).str();
  }
  os << "]";
  return os.str();
}

IwasawaFactors iwasawa_decompose(const MatF& g) {
  const PadicContext* ctx = g.context();
  int n = g.n();
  MatF k = g;
  MatF b = MatF::identity(ctx, n);
  std::vector<bool> used(static_cast<size_t>(n), false);
  for (int j = 0; j < n; ++j) {
    // pivot: minimal certified valuation among unused rows, lowest row wins
    int prow = -1;
    long pval = 0;
    for (int i = 0; i < n; ++i) {
      if (used[static_cast<size_t>(i)]) continue;
      const FScalar& x = k.at(i, j);
      if (x.is_exact_zero() || !x.val_certain()) continue;
      long v = x.val().v;
      if (prow == -1 || v < pval) {
        prow = i;
        pval = v;
      }
    }
    if (prow == -1)
      throw PrecisionError("no certifiable pivot in column (singular input?)");
    for (int i = 0; i < n; ++i) {
      if (used[static_cast<size_t>(i)] || i == prow) continue;
      if (k.at(i, j).val_lower_bound() < pval)
        throw PrecisionError("pivot valuation not certified at this precision");
    }
    FScalar piv = k.at(prow, j);
    FScalar pinv = piv.inverse();
    // scale column j so the pivot becomes a one
    for (int i = 0; i < n; ++i) k.at(i, j) = k.at(i, j) * pinv;
    for (int c = 0; c < n; ++c) b.at(j, c) = b.at(j, c) * piv;
    // clear the pivot row in the later columns
    for (int j2 = j + 1; j2 < n; ++j2) {
      FScalar f = k.at(prow, j2);
      if (f.is_exact_zero()) continue;
      for (int i = 0; i < n; ++i) k.at(i, j2) = k.at(i, j2) - f * k.at(i, j);
      for (int c = 0; c < n; ++c) b.at(j, c) = b.at(j, c) + f * b.at(j2, c);
    }
    used[static_cast<size_t>(prow)] = true;
  }
  return {std::move(k), std::move(b)};
}

std::string CellLabel::name() const {
  if (n == 2) return w[0] == 0 ? "e" : "s1";
  std::array<int, 3> id{0, 1, 2}, a{1, 0, 2}, bb{0, 2, 1}, ab{1, 2, 0},
      ba{2, 0, 1}, w0{2, 1, 0};
  if (w == id) return "e";
  if (w == a) return "s1";
  if (w == bb) return "s2";
  if (w == ab) return "s1s2";
  if (w == ba) return "s2s1";
  if (w == w0) return "w0";
  throw GlinError("not a permutation");
}

int CellLabel::length() const {
  int len = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (w[static_cast<size_t>(i)] > w[static_cast<size_t>(j)]) ++len;
  return len;
}

CellLabel CellLabel::from_name(int n, const std::string& nm) {
  CellLabel c;
  c.n = n;
  if (n == 2) {
    c.w = {0, 1, 2};
    if (nm == "s1") c.w = {1, 0, 2};
    else if (nm != "e") throw GlinError("unknown label");
    return c;
  }
  if (nm == "e") c.w = {0, 1, 2};
  else if (nm == "s1") c.w = {1, 0, 2};
  else if (nm == "s2") c.w = {0, 2, 1};
  else if (nm == "s1s2") c.w = {1, 2, 0};
  else if (nm == "s2s1") c.w = {2, 0, 1};
  else if (nm == "w0") c.w = {2, 1, 0};
  else throw GlinError("unknown label");
  return c;
}

CellLabel CellLabel::compose(const CellLabel& o) const {
  CellLabel c;
  c.n = n;
  for (int i = 0; i < n; ++i)
    c.w[static_cast<size_t>(i)] =
        w[static_cast<size_t>(o.w[static_cast<size_t>(i)])];
  for (int i = n; i < 3; ++i) c.w[static_cast<size_t>(i)] = i;
  return c;
}

CellLabel CellLabel::inverse() const {
  CellLabel c;
  c.n = n;
  for (int i = 0; i < n; ++i) c.w[static_cast<size_t>(w[static_cast<size_t>(i)])] = i;
  for (int i = n; i < 3; ++i) c.w[static_cast<size_t>(i)] = i;
  return c;
}

MatF s1_mat(const PadicContext* ctx) {
  return MatF::from_ints(ctx, 3, {0, -1, 0, 1, 0, 0, 0, 0, 1});
}
MatF s2_mat(const PadicContext* ctx) {
  return MatF::from_ints(ctx, 3, {1, 0, 0, 0, 0, -1, 0, 1, 0});
}
MatF w0_mat(const PadicContext* ctx) {
  return s1_mat(ctx) * s2_mat(ctx) * s1_mat(ctx);
}

std::vector<std::pair<CellLabel, MatF>> weyl_reps(const PadicContext* ctx,
                                                  int n) {
  std::vector<std::pair<CellLabel, MatF>> out;
  if (n == 2) {
    out.emplace_back(CellLabel::from_name(2, "e"), MatF::identity(ctx, 2));
    out.emplace_back(CellLabel::from_name(2, "s1"),
                     MatF::from_ints(ctx, 2, {0, -1, 1, 0}));
    return out;
  }
  MatF e = MatF::identity(ctx, 3), s1 = s1_mat(ctx), s2 = s2_mat(ctx);
  out.emplace_back(CellLabel::from_name(3, "e"), e);
  out.emplace_back(CellLabel::from_name(3, "s1"), s1);
  out.emplace_back(CellLabel::from_name(3, "s2"), s2);
  out.emplace_back(CellLabel::from_name(3, "s1s2"), s1 * s2);
  out.emplace_back(CellLabel::from_name(3, "s2s1"), s2 * s1);
  out.emplace_back(CellLabel::from_name(3, "w0"), s1 * s2 * s1);
  return out;
}

CellLabel iwahori_cell(const MatF& k) {
  const PadicContext* ctx = k.context();
  int n = k.n();
  ResidueRing r1 = ctx->ring(1);
  // reduction mod varpi
  std::vector<RElem> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[static_cast<size_t>(i * n + j)] = k.at(i, j).residue_at(1);
  // rank of the bottom-left submatrix rows >= i, cols <= j
  auto rank = [&](int i0, int jmax) {
    if (i0 >= n || jmax < 0) return 0;
    std::vector<RElem> m;
    int rows = n - i0, cols = jmax + 1;
    for (int i = i0; i < n; ++i)
      for (int j = 0; j <= jmax; ++j) m.push_back(a[static_cast<size_t>(i * n + j)]);
    int rk = 0;
    for (int c = 0; c < cols && rk < rows; ++c) {
      int pr = -1;
      for (int i = rk; i < rows; ++i)
        if (!r1.is_zero(m[static_cast<size_t>(i * cols + c)])) {
          pr = i;
          break;
        }
      if (pr == -1) continue;
      for (int j = 0; j < cols; ++j)
        std::swap(m[static_cast<size_t>(rk * cols + j)],
                  m[static_cast<size_t>(pr * cols + j)]);
      RElem pinv = r1.inv(m[static_cast<size_t>(rk * cols + c)]);
      for (int i = rk + 1; i < rows; ++i) {
        RElem f = r1.mul(m[static_cast<size_t>(i * cols + c)], pinv);
        for (int j = 0; j < cols; ++j)
          m[static_cast<size_t>(i * cols + j)] =
              r1.sub(m[static_cast<size_t>(i * cols + j)],
                     r1.mul(f, m[static_cast<size_t>(rk * cols + j)]));
      }
      ++rk;
    }
    return rk;
  };
  CellLabel c;
  c.n = n;
  c.w = {0, 1, 2};
  for (int j = 0; j < n; ++j) {
    bool found = false;
    for (int i = 0; i < n; ++i) {
      int jump = rank(i, j) - rank(i + 1, j) - rank(i, j - 1) + rank(i + 1, j - 1);
      if (jump == 1) {
        c.w[static_cast<size_t>(j)] = i;
        found = true;
        break;
      }
    }
    if (!found) throw GlinError("input not invertible mod varpi");
  }
  return c;
}

}  // namespace psv
