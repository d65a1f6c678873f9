#include "psv/prinseries.hpp"

#include <deque>

namespace psv {

namespace {

RingMat ring_identity(const ResidueRing& r, int n) {
  RingMat m(static_cast<size_t>(n) * n, r.zero());
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i * n + i)] = r.one();
  return m;
}

}  // namespace

std::string FlagModel::key_of(const RingMat& m, const ResidueRing& r) {
  std::string k;
  k.reserve(m.size() * sizeof(size_t));
  for (const auto& e : m) {
    size_t idx = r.index(e);
    k.append(reinterpret_cast<const char*>(&idx), sizeof(size_t));
  }
  return k;
}

std::pair<RingMat, std::array<RElem, 3>> FlagModel::canonicalize(
    const RingMat& g, const ResidueRing& r, int n) {
  RingMat w = g;
  std::array<RElem, 3> diag{r.one(), r.one(), r.one()};
  std::array<bool, 3> used{false, false, false};
  for (int j = 0; j < n; ++j) {
    int pr = -1;
    for (int i = 0; i < n; ++i) {
      if (used[static_cast<size_t>(i)]) continue;
      if (r.is_unit(w[static_cast<size_t>(i * n + j)])) {
        pr = i;
        break;
      }
    }
    if (pr == -1) throw PsError("matrix not invertible over R_M");
    RElem piv = w[static_cast<size_t>(pr * n + j)];
    RElem pinv = r.inv(piv);
    for (int i = 0; i < n; ++i)
      w[static_cast<size_t>(i * n + j)] =
          r.mul(w[static_cast<size_t>(i * n + j)], pinv);
    diag[static_cast<size_t>(j)] = piv;
    for (int j2 = j + 1; j2 < n; ++j2) {
      RElem c = w[static_cast<size_t>(pr * n + j2)];
      if (r.is_zero(c)) continue;
      for (int i = 0; i < n; ++i)
        w[static_cast<size_t>(i * n + j2)] =
            r.sub(w[static_cast<size_t>(i * n + j2)],
                  r.mul(c, w[static_cast<size_t>(i * n + j)]));
    }
    used[static_cast<size_t>(pr)] = true;
  }
  return {std::move(w), diag};
}

RingMat FlagModel::ring_mul(const RingMat& a, const RingMat& b) const {
  RingMat c(static_cast<size_t>(n_) * n_, ring_.zero());
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const RElem& aik = a[static_cast<size_t>(i * n_ + k)];
      if (ring_.is_zero(aik)) continue;
      for (int j = 0; j < n_; ++j)
        c[static_cast<size_t>(i * n_ + j)] =
            ring_.add(c[static_cast<size_t>(i * n_ + j)],
                      ring_.mul(aik, b[static_cast<size_t>(k * n_ + j)]));
    }
  return c;
}

RingMat FlagModel::reduce_mat(const MatF& g) const {
  RingMat m(static_cast<size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      m[static_cast<size_t>(i * n_ + j)] = g.at(i, j).residue_at(M_);
  return m;
}

MatF FlagModel::rep_lift(size_t i) const {
  MatF m(ctx_, n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      m.at(a, b) = FScalar::from_relem(ctx_, ring_,
                                       reps_[i][static_cast<size_t>(a * n_ + b)]);
  return m;
}

FlagModel::SectionResult FlagModel::section(const RingMat& g) const {
  auto [canon, diag] = canonicalize(g, ring_, n_);
  auto it = index_.find(key_of(canon, ring_));
  if (it == index_.end()) throw PsError("canonical form not enumerated");
  return {it->second, diag};
}

FlagModel FlagModel::build(const PadicContext* ctx, int n, int M) {
  FlagModel fm;
  fm.ctx_ = ctx;
  fm.n_ = n;
  fm.M_ = M;
  fm.ring_ = ctx->ring(M);
  const ResidueRing& r = fm.ring_;
  // generators of GL_n(R_M): elementary e_{ij}(varpi^a omega^b) plus
  // diagonal unit generators
  std::vector<RingMat> gens;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int a = 0; a < M; ++a)
        for (int b = 0; b < ctx->f(); ++b) {
          RingMat e = ring_identity(r, n);
          RElem t = r.zero();
          int64_t pa = 1;
          for (int x = 0; x < a; ++x) pa *= ctx->p();
          t.c[b] = pa;
          e[static_cast<size_t>(i * n + j)] = t;
          gens.push_back(std::move(e));
        }
    }
  UnitGroupStructure ug = unit_group_structure(r);
  for (int d = 0; d < n; ++d)
    for (const auto& u : ug.gens) {
      RingMat e = ring_identity(r, n);
      e[static_cast<size_t>(d * n + d)] = u;
      gens.push_back(std::move(e));
    }
  // BFS over cosets
  std::deque<size_t> queue;
  auto push = [&](const RingMat& g) -> bool {
    auto [canon, diag] = canonicalize(g, r, n);
    (void)diag;
    std::string k = key_of(canon, r);
    if (fm.index_.count(k)) return false;
    fm.index_.emplace(std::move(k), fm.reps_.size());
    fm.reps_.push_back(std::move(canon));
    queue.push_back(fm.reps_.size() - 1);
    return true;
  };
  push(ring_identity(r, n));
  while (!queue.empty()) {
    size_t cur = queue.front();
    queue.pop_front();
    RingMat base = fm.reps_[cur];
    for (const auto& g : gens) push(fm.ring_mul(g, base));
  }
  return fm;
}

bool PSVector::is_zero() const {
  for (const auto& v : values)
    if (!v.is_zero()) return false;
  return true;
}

PSVector operator+(const PSVector& a, const PSVector& b) {
  PSVector c = a;
  for (size_t i = 0; i < c.values.size(); ++i) c.values[i] += b.values[i];
  return c;
}

PSVector operator-(const PSVector& a, const PSVector& b) {
  PSVector c = a;
  for (size_t i = 0; i < c.values.size(); ++i) c.values[i] -= b.values[i];
  return c;
}

PSVector operator*(const Cyclo& s, const PSVector& a) {
  PSVector c = a;
  for (auto& v : c.values) v *= s;
  return c;
}

bool LeviPSVector::is_zero() const {
  for (const auto& v : values)
    if (!v.is_zero()) return false;
  return true;
}

LeviPSVector operator-(const LeviPSVector& a, const LeviPSVector& b) {
  LeviPSVector c = a;
  for (size_t i = 0; i < c.values.size(); ++i) c.values[i] -= b.values[i];
  return c;
}

namespace {

Cyclo eval_ring_impl(const FlagModel& m, const SmoothChar* chis,
                     const std::vector<Cyclo>& vals, const RingMat& g) {
  auto sec = m.section(g);
  Cyclo factor(1L);
  for (int j = 0; j < m.n(); ++j)
    factor *= char_eval_unit(chis[j], m.ring(), sec.diag[static_cast<size_t>(j)]);
  return vals[sec.rep] / factor;
}

Cyclo eval_full_impl(const FlagModel& m, const SmoothChar* chis,
                     const std::vector<Cyclo>& vals, const MatF& g) {
  auto iw = iwasawa_decompose(g);
  Cyclo cb(1L);
  for (int j = 0; j < m.n(); ++j) cb *= char_eval(chis[j], iw.b.at(j, j));
  return eval_ring_impl(m, chis, vals, m.reduce_mat(iw.k)) / cb;
}

}  // namespace

Cyclo ps_eval(const PSVector& f, const MatF& g) {
  return eval_full_impl(*f.model, f.chi.data(), f.values, g);
}

Cyclo ps_eval_right(const PSVector& f, const MatF& g) {
  return ps_eval(f, g.inverse());
}

Cyclo ps_eval_ring(const PSVector& f, const RingMat& g) {
  return eval_ring_impl(*f.model, f.chi.data(), f.values, g);
}

Cyclo levi_eval(const LeviPSVector& f, const MatF& g2) {
  return eval_full_impl(*f.model, f.chi.data(), f.values, g2);
}

PSVector group_act(const MatF& gamma, const PSVector& f) {
  PSVector out = f;
  MatF gi = gamma.inverse();
  for (size_t i = 0; i < f.model->size(); ++i)
    out.values[i] = ps_eval(f, gi * f.model->rep_lift(i));
  return out;
}

namespace {

// ell = diag(l1, l2, l3), exact diagonal in L^+
std::array<long, 3> ell_vals(const MatF& ell) {
  if (ell.n() != 3) throw PsError("tau expects a 3x3 diagonal");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && !ell.at(i, j).is_exact_zero())
        throw PsError("tau expects a diagonal element");
  std::array<long, 3> v{};
  for (int i = 0; i < 3; ++i) v[static_cast<size_t>(i)] = ell.at(i, i).val().v;
  if (v[0] < v[2] || v[1] < v[2]) throw PsError("element not in L^+");
  return v;
}

}  // namespace

long hecke_index(const MatF& ell) {
  auto v = ell_vals(ell);
  long idx = 1;
  for (long i = 0; i < (v[0] - v[2]) + (v[1] - v[2]); ++i)
    idx *= ell.context()->q();
  return idx;
}

PSVector hecke_tau(const MatF& ell, const PSVector& f) {
  const PadicContext* ctx = f.model->context();
  auto v = ell_vals(ell);
  int k1 = static_cast<int>(v[0] - v[2]), k2 = static_cast<int>(v[1] - v[2]);
  ResidueRing r1 = ctx->ring(k1), r2 = ctx->ring(k2);
  MatF elli = ell.inverse();
  Rational scale(1);
  for (long i = 0; i < k1 + k2; ++i) scale /= static_cast<long>(ctx->q());
  PSVector out = f;
  for (size_t i = 0; i < f.model->size(); ++i) {
    Cyclo sum(0L);
    MatF rep = f.model->rep_lift(i);
    for (size_t xi = 0; xi < r1.size(); ++xi)
      for (size_t yi = 0; yi < r2.size(); ++yi) {
        MatF ninv = MatF::identity(ctx, 3);
        ninv.at(0, 2) = -FScalar::from_relem(ctx, r1, r1.from_index(xi));
        ninv.at(1, 2) = -FScalar::from_relem(ctx, r2, r2.from_index(yi));
        sum += ps_eval(f, elli * ninv * rep);
      }
    out.values[i] = Cyclo(scale) * sum;
  }
  return out;
}

std::vector<N0Orbit> n0_orbits(const FlagModel& model,
                               const std::array<SmoothChar, 3>& chi) {
  const PadicContext* ctx = model.context();
  const ResidueRing& r = model.ring();
  // N0 generators at level M: e13(omega^b), e23(omega^b)
  std::vector<RingMat> gens;
  for (int pos = 0; pos < 2; ++pos)
    for (int b = 0; b < ctx->f(); ++b) {
      RingMat e = ring_identity(r, 3);
      RElem t = r.zero();
      t.c[b] = 1;
      e[static_cast<size_t>(pos * 3 + 2)] = t;
      gens.push_back(std::move(e));
    }
  size_t n = model.size();
  std::vector<int> orbit_of(n, -1);
  std::vector<N0Orbit> orbits;
  for (size_t start = 0; start < n; ++start) {
    if (orbit_of[start] != -1) continue;
    N0Orbit orb;
    std::vector<Cyclo> tr(n);
    std::deque<size_t> queue;
    int oid = static_cast<int>(orbits.size());
    orbit_of[start] = oid;
    tr[start] = Cyclo(1L);
    orb.points.push_back(start);
    queue.push_back(start);
    while (!queue.empty()) {
      size_t cur = queue.front();
      queue.pop_front();
      for (const auto& g : gens) {
        auto sec = model.section(model.ring_mul(g, model.rep(cur)));
        Cyclo factor(1L);
        for (int j = 0; j < 3; ++j)
          factor *= char_eval_unit(chi[static_cast<size_t>(j)], r,
                                   sec.diag[static_cast<size_t>(j)]);
        // f(rep_j) = factor * f(rep_cur)
        Cyclo t2 = factor * tr[cur];
        if (orbit_of[sec.rep] == -1) {
          orbit_of[sec.rep] = oid;
          tr[sec.rep] = t2;
          orb.points.push_back(sec.rep);
          queue.push_back(sec.rep);
        } else if (tr[sec.rep] != t2) {
          orb.forced_zero = true;
        }
      }
    }
    orb.transport.reserve(orb.points.size());
    for (size_t pt : orb.points) orb.transport.push_back(tr[pt]);
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

std::vector<PSVector> n0_invariants(const FlagModel& model,
                                    const std::array<SmoothChar, 3>& chi) {
  std::vector<PSVector> out;
  for (const auto& orb : n0_orbits(model, chi)) {
    if (orb.forced_zero) continue;
    PSVector v;
    v.model = &model;
    v.chi = chi;
    v.values.assign(model.size(), Cyclo(0L));
    for (size_t i = 0; i < orb.points.size(); ++i)
      v.values[orb.points[i]] = orb.transport[i];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<PSVector> zlplus_generalized_eigenspace(
    const FlagModel& model, const std::array<SmoothChar, 3>& chi, int power) {
  if (power < 1 || power > 2) throw PsError("power must be 1 or 2");
  const PadicContext* ctx = model.context();
  auto orbits = n0_orbits(model, chi);
  std::vector<PSVector> basis = n0_invariants(model, chi);
  size_t d = basis.size();
  if (d == 0) return {};
  std::vector<size_t> conbases, zerobases;
  for (const auto& o : orbits)
    (o.forced_zero ? zerobases : conbases).push_back(o.points[0]);
  MatF z1 = MatF::identity(ctx, 3);
  z1.at(0, 0) = FScalar::uniformizer_pow(ctx, 1);
  z1.at(1, 1) = FScalar::uniformizer_pow(ctx, 1);
  MatF z1i = z1.inverse();
  Cyclo lambda = chi[0].at_uniformizer * chi[1].at_uniformizer;
  ResidueRing r1c = ctx->ring(1);
  const ResidueRing& r = model.ring();
  Rational qinv2(1);
  for (int i = 0; i < 2; ++i) qinv2 /= static_cast<long>(ctx->q());
  auto tau_at = [&](const PSVector& f, size_t rep_idx) {
    MatF rep = model.rep_lift(rep_idx);
    Cyclo sum(0L);
    for (size_t xi = 0; xi < r1c.size(); ++xi)
      for (size_t yi = 0; yi < r1c.size(); ++yi) {
        MatF ninv = MatF::identity(ctx, 3);
        ninv.at(0, 2) = -FScalar::from_relem(ctx, r1c, r1c.from_index(xi));
        ninv.at(1, 2) = -FScalar::from_relem(ctx, r1c, r1c.from_index(yi));
        sum += ps_eval(f, z1i * ninv * rep);
      }
    return Cyclo(qinv2) * sum;
  };
  // endomorphism matrix of tau on the invariant basis (disjoint supports,
  // value 1 at each orbit base, so coefficients = values at the bases)
  std::vector<std::vector<Cyclo>> T(d, std::vector<Cyclo>(d, Cyclo(0L)));
  std::vector<std::vector<Cyclo>> F(zerobases.size(),
                                    std::vector<Cyclo>(d, Cyclo(0L)));
  for (size_t bi = 0; bi < d; ++bi) {
    for (size_t j = 0; j < d; ++j) T[j][bi] = tau_at(basis[bi], conbases[j]);
    for (size_t z = 0; z < zerobases.size(); ++z)
      F[z][bi] = tau_at(basis[bi], zerobases[z]);
  }
  std::vector<std::vector<Cyclo>> P = T;
  for (size_t i = 0; i < d; ++i) P[i][i] -= lambda;
  if (power == 2) {
    std::vector<std::vector<Cyclo>> P2(d, std::vector<Cyclo>(d, Cyclo(0L)));
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j)
        for (size_t k = 0; k < d; ++k) P2[i][j] += P[i][k] * P[k][j];
    P = std::move(P2);
  }
  // unit-central equivariance conditions f(u g) = chi(u) f(g)
  UnitGroupStructure ug = unit_group_structure(r);
  struct UCond {
    RingMat u;
    Cyclo mu;
  };
  std::vector<UCond> uconds;
  for (const auto& g : ug.gens) {
    RingMat u1 = ring_identity(r, 3);
    u1[0] = g;
    u1[4] = g;
    Cyclo mu1 = char_eval_unit(chi[0], r, g) * char_eval_unit(chi[1], r, g);
    uconds.push_back({std::move(u1), std::move(mu1)});
    RingMat u2 = ring_identity(r, 3);
    u2[8] = g;
    uconds.push_back({std::move(u2), char_eval_unit(chi[2], r, g)});
  }
  size_t nrows = d + zerobases.size() + conbases.size() * uconds.size();
  CycloMatrix A(static_cast<int>(nrows), static_cast<int>(d));
  int row = 0;
  for (size_t i = 0; i < d; ++i, ++row)
    for (size_t j = 0; j < d; ++j) A.at(row, static_cast<int>(j)) = P[i][j];
  for (size_t z = 0; z < zerobases.size(); ++z, ++row)
    for (size_t j = 0; j < d; ++j) A.at(row, static_cast<int>(j)) = F[z][j];
  for (size_t pi = 0; pi < conbases.size(); ++pi) {
    for (const auto& uc : uconds) {
      RingMat urep = model.ring_mul(uc.u, model.rep(conbases[pi]));
      for (size_t bi = 0; bi < d; ++bi)
        A.at(row, static_cast<int>(bi)) = ps_eval_ring(basis[bi], urep) -
                                          uc.mu * basis[bi].values[conbases[pi]];
      ++row;
    }
  }
  auto kb = kernel_basis(A);
  std::vector<PSVector> out;
  for (const auto& coeffs : kb) {
    PSVector v;
    v.model = &model;
    v.chi = chi;
    v.values.assign(model.size(), Cyclo(0L));
    for (size_t bi = 0; bi < d; ++bi) {
      if (coeffs[bi].is_zero()) continue;
      for (size_t i = 0; i < model.size(); ++i)
        v.values[i] += coeffs[bi] * basis[bi].values[i];
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<PSVector> zlplus_eigenspace(const FlagModel& model,
                                        const std::array<SmoothChar, 3>& chi) {
  return zlplus_generalized_eigenspace(model, chi, 1);
}

LeviPSVector restrict_to_levi(const PSVector& f, const FlagModel& levi_model) {
  if (levi_model.n() != 2 || levi_model.level() != f.model->level())
    throw PsError("levi model mismatch");
  LeviPSVector out;
  out.model = &levi_model;
  out.chi = {f.chi[0], f.chi[1]};
  out.chi3 = f.chi[2];
  out.values.assign(levi_model.size(), Cyclo(0L));
  const ResidueRing& r = f.model->ring();
  for (size_t i = 0; i < levi_model.size(); ++i) {
    const RingMat& l = levi_model.rep(i);
    RingMat g(9, r.zero());
    g[0] = l[0];
    g[1] = l[1];
    g[3] = l[2];
    g[4] = l[3];
    g[8] = r.one();
    out.values[i] = ps_eval_ring(f, g);
  }
  return out;
}

Cyclo steinberg_projection(const LeviPSVector& f) {
  const FlagModel& m = *f.model;
  const PadicContext* ctx = m.context();
  const ResidueRing& r = m.ring();
  // support must avoid the closure of the small cell: f(lower2(y)) = 0 for
  // y in (varpi)
  for (size_t i = 0; i < m.size(); ++i) {
    const RingMat& rep = m.rep(i);
    bool small_cell = rep[0] == r.one() && r.is_zero(rep[1]) &&
                      !r.is_unit(rep[2]) && rep[3] == r.one();
    if (small_cell && !f.values[i].is_zero())
      throw PsError("function not supported in the big cell");
  }
  Cyclo sum(0L);
  for (size_t ai = 0; ai < r.size(); ++ai) {
    RElem a = r.from_index(ai);
    // upper2(a) * s1 = [[a, -1], [1, 0]]
    RingMat g = {a, r.neg(r.one()), r.one(), r.zero()};
    sum += eval_ring_impl(m, f.chi.data(), f.values, g);
  }
  Rational scale(1);
  for (int i = 0; i < m.level() * ctx->f(); ++i) scale /= ctx->p();
  return Cyclo(scale) * sum;
}

}  // namespace psv
