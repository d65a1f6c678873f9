#include "psv/cyclo.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace psv {

namespace {

int g_order_cap = 1000;

long euler_phi(long n) {
  long result = n;
  long m = n;
  for (long d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      result -= result / d;
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

using Poly = std::vector<Rational>;  // coefficient list, low degree first

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// quotient of exact division (used with divisor dividing the dividend, and
// generally for Euclid steps where a remainder is produced)
Poly poly_divmod(Poly a, const Poly& b, Poly* rem_out) {
  trim(a);
  if (b.empty()) throw CycloError("polynomial division by zero");
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  while (a.size() >= b.size()) {
    Rational f = a.back() / lead;
    size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  if (rem_out) *rem_out = a;
  trim(q);
  return q;
}

struct CycloTable {
  int n = 1;
  int phi = 1;
  Poly modulus;                  // Phi_n, monic, degree phi
  std::vector<Poly> pow_red;     // x^k mod Phi_n for k in [0, max(2*phi-1, n))
  // pow_red entries are dense vectors of length phi
};

std::map<int, CycloTable> g_tables;
std::mutex g_tables_mu;

Poly cyclotomic_poly(int n);  // forward

const CycloTable& table_for(int n) {
  std::lock_guard<std::mutex> lk(g_tables_mu);
  auto it = g_tables.find(n);
  if (it != g_tables.end()) return it->second;
  CycloTable t;
  t.n = n;
  t.modulus = cyclotomic_poly(n);
  t.phi = static_cast<int>(t.modulus.size()) - 1;
  int kmax = std::max(2 * t.phi - 1, n);
  t.pow_red.reserve(kmax);
  Poly cur(1, Rational(1));  // x^0
  cur.resize(t.phi, Rational(0));
  for (int k = 0; k < kmax; ++k) {
    t.pow_red.push_back(cur);
    // multiply by x, reduce: modulus is monic
    Poly next(t.phi, Rational(0));
    for (int i = 0; i + 1 < t.phi; ++i) next[i + 1] = cur[i];
    const Rational& top = cur[t.phi - 1];
    if (top != 0)
      for (int i = 0; i < t.phi; ++i) next[i] -= top * t.modulus[i];
    cur = std::move(next);
  }
  auto [pos, ok] = g_tables.emplace(n, std::move(t));
  (void)ok;
  return pos->second;
}

Poly cyclotomic_poly(int n) {
  // x^n - 1 divided by the product of Phi_d over proper divisors d | n
  if (n == 1) return Poly{Rational(-1), Rational(1)};
  Poly num(n + 1, Rational(0));
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    Poly rem;
    num = poly_divmod(num, cyclotomic_poly(d), &rem);
    if (!rem.empty()) throw CycloError("cyclotomic division left a remainder");
  }
  return num;
}

// extended Euclid: returns g = gcd(a, b) monic-scaled and s with s*a = g (mod b)
Poly poly_inverse_mod(const Poly& a, const Poly& mod) {
  Poly r0 = mod, r1 = a;
  Poly s0{}, s1{Rational(1)};
  trim(r1);
  while (!r1.empty()) {
    Poly rem;
    Poly q = poly_divmod(r0, r1, &rem);
    Poly s2 = s0;
    {
      Poly qs = poly_mul(q, s1);
      if (s2.size() < qs.size()) s2.resize(qs.size(), Rational(0));
      for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
      trim(s2);
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw CycloError("element not invertible mod Phi_N");
  Poly inv = s0;
  for (auto& c : inv) c /= r0[0];
  trim(inv);
  return inv;
}

}  // namespace

void set_cyclo_order_cap(int cap) { g_order_cap = cap; }
int cyclo_order_cap() { return g_order_cap; }

Cyclo Cyclo::zeta(int n, long k) {
  if (n <= 0) throw CycloError("zeta order must be positive");
  if (n > g_order_cap) throw CycloError("cyclotomic order exceeds configured cap");
  k %= n;
  if (k < 0) k += n;
  const CycloTable& t = table_for(n);
  Cyclo z(n, t.pow_red[static_cast<size_t>(k)]);
  z.normalize();
  return z;
}

Cyclo Cyclo::from_coeffs(int order, std::vector<Rational> coeffs) {
  const CycloTable& t = table_for(order);
  if (static_cast<int>(coeffs.size()) != t.phi)
    throw CycloError("coefficient vector length must equal phi(N)");
  for (auto& c : coeffs) c.canonicalize();
  Cyclo z(order, std::move(coeffs));
  z.normalize();
  return z;
}

bool Cyclo::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational Cyclo::rational_value() const {
  if (!is_rational()) throw CycloError("element is not rational");
  return c_[0];
}

Cyclo Cyclo::to_order(int m) const {
  if (m == order_) return *this;
  if (m % order_ != 0) throw CycloError("invalid order coercion");
  if (m > g_order_cap) throw CycloError("cyclotomic order exceeds configured cap");
  const CycloTable& t = table_for(m);
  int stride = m / order_;
  std::vector<Rational> out(static_cast<size_t>(t.phi), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const Poly& zp = t.pow_red[i * static_cast<size_t>(stride)];
    for (int j = 0; j < t.phi; ++j) out[j] += c_[i] * zp[j];
  }
  return Cyclo(m, std::move(out));
}

void Cyclo::normalize() {
  if (order_ == 1) return;
  if (is_rational()) {
    Rational r = c_[0];
    order_ = 1;
    c_.assign(1, r);
    return;
  }
  const CycloTable& t = table_for(order_);
  // try r * zeta_N^j for j in [1, N)
  for (int j = 1; j < order_; ++j) {
    const Poly& zp = t.pow_red[static_cast<size_t>(j)];
    int k0 = -1;
    for (int k = 0; k < t.phi; ++k)
      if (zp[k] != 0) {
        k0 = k;
        break;
      }
    if (k0 < 0) continue;
    Rational r = c_[static_cast<size_t>(k0)] / zp[k0];
    if (r == 0) continue;
    bool match = true;
    for (int k = 0; k < t.phi && match; ++k)
      if (c_[static_cast<size_t>(k)] != r * zp[k]) match = false;
    if (!match) continue;
    int g = std::gcd(j, order_);
    int d = order_ / g;  // order of zeta_N^j
    if (d >= order_) return;  // already minimal
    long jd = j / g;     // zeta_N^j = zeta_d^{jd}
    if (d == 1) {
      order_ = 1;
      c_.assign(1, r);
    } else if (d == 2) {
      order_ = 1;
      c_.assign(1, -r);
    } else {
      const CycloTable& td = table_for(d);
      const Poly& zd = td.pow_red[static_cast<size_t>(jd % d)];
      std::vector<Rational> out(static_cast<size_t>(td.phi));
      for (int k = 0; k < td.phi; ++k) out[static_cast<size_t>(k)] = r * zd[k];
      order_ = d;
      c_ = std::move(out);
    }
    return;
  }
}

std::optional<Cyclo::Monomial> Cyclo::as_monomial() const {
  if (is_rational()) return Monomial{c_[0], 1, 0};
  // after normalize(), a monomial is stored at the exact order of its root
  const CycloTable& t = table_for(order_);
  for (int j = 1; j < order_; ++j) {
    if (std::gcd(j, order_) != 1) continue;  // minimal order => primitive root
    const Poly& zp = t.pow_red[static_cast<size_t>(j)];
    int k0 = -1;
    for (int k = 0; k < t.phi; ++k)
      if (zp[k] != 0) {
        k0 = k;
        break;
      }
    if (k0 < 0) continue;
    Rational r = c_[static_cast<size_t>(k0)] / zp[k0];
    if (r == 0) continue;
    bool match = true;
    for (int k = 0; k < t.phi && match; ++k)
      if (c_[static_cast<size_t>(k)] != r * zp[k]) match = false;
    if (match) return Monomial{r, order_, j};
  }
  return std::nullopt;
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
  int m = static_cast<int>(std::lcm(a.order_, b.order_));
  Cyclo x = a.to_order(m), y = b.to_order(m);
  for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
  x.normalize();
  return x;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) {
  int m = static_cast<int>(std::lcm(a.order_, b.order_));
  Cyclo x = a.to_order(m), y = b.to_order(m);
  for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
  x.normalize();
  return x;
}

Cyclo Cyclo::operator-() const {
  Cyclo x = *this;
  for (auto& c : x.c_) c = -c;
  return x;
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  int m = static_cast<int>(std::lcm(a.order_, b.order_));
  Cyclo x = a.to_order(m), y = b.to_order(m);
  const CycloTable& t = table_for(m);
  std::vector<Rational> out(static_cast<size_t>(t.phi), Rational(0));
  for (size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] == 0) continue;
    for (size_t j = 0; j < y.c_.size(); ++j) {
      if (y.c_[j] == 0) continue;
      Rational f = x.c_[i] * y.c_[j];
      const Poly& zp = t.pow_red[i + j];
      for (int k = 0; k < t.phi; ++k) out[static_cast<size_t>(k)] += f * zp[k];
    }
  }
  Cyclo r(m, std::move(out));
  r.normalize();
  return r;
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw CycloError("inversion of zero");
  if (is_rational()) return Cyclo(Rational(1) / c_[0]);
  const CycloTable& t = table_for(order_);
  Poly a(c_.begin(), c_.end());
  trim(a);
  Poly inv = poly_inverse_mod(a, t.modulus);
  inv.resize(static_cast<size_t>(t.phi), Rational(0));
  Cyclo r(order_, std::vector<Rational>(inv.begin(), inv.end()));
  r.normalize();
  return r;
}

Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

Cyclo Cyclo::pow(long e) const {
  if (e == 0) return Cyclo(1L);
  Cyclo base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1ul
                          : static_cast<unsigned long>(e);
  Cyclo acc(1L);
  while (k) {
    if (k & 1ul) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.order_ == b.order_) return a.c_ == b.c_;
  // coordinates in the power basis of Q(zeta_lcm) are unique
  int m = static_cast<int>(std::lcm(a.order_, b.order_));
  return a.to_order(m).c_ == b.to_order(m).c_;
}

std::string Cyclo::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].get_str();
    if (i > 0) os << "*z" << order_ << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

PadicVal rational_valuation(const Rational& r, long p) {
  if (r == 0) return PadicVal::inf();
  long v = 0;
  mpz_class num = r.get_num(), den = r.get_den();
  while (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) {
    num /= p;
    ++v;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) {
    den /= p;
    --v;
  }
  return PadicVal::of(v);
}

PadicVal padic_valuation(const Cyclo& a, long p) {
  if (a.is_zero()) return PadicVal::inf();
  auto mono = a.as_monomial();
  if (!mono)
    throw CycloError("p-adic valuation requested outside the monomial subring");
  if (std::gcd<long>(mono->root_order, p) != 1)
    throw CycloError("p-adic valuation undefined: root order divisible by p");
  return rational_valuation(mono->scale, p);
}

namespace {

// row echelon over Q(zeta); returns pivot column per row-reduced structure
void row_reduce(CycloMatrix& m, std::vector<int>& pivot_cols) {
  int r = 0;
  for (int j = 0; j < m.cols() && r < m.rows(); ++j) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, j).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int k = 0; k < m.cols(); ++k) std::swap(m.at(piv, k), m.at(r, k));
    Cyclo inv = m.at(r, j).inverse();
    for (int k = j; k < m.cols(); ++k) m.at(r, k) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, j).is_zero()) continue;
      Cyclo f = m.at(i, j);
      for (int k = j; k < m.cols(); ++k) m.at(i, k) -= f * m.at(r, k);
    }
    pivot_cols.push_back(j);
    ++r;
  }
}

}  // namespace

std::vector<std::vector<Cyclo>> kernel_basis(const CycloMatrix& m_in) {
  CycloMatrix m = m_in;
  std::vector<int> pivots;
  row_reduce(m, pivots);
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
  for (int j : pivots) is_pivot[static_cast<size_t>(j)] = true;
  std::vector<std::vector<Cyclo>> basis;
  for (int j = 0; j < m.cols(); ++j) {
    if (is_pivot[static_cast<size_t>(j)]) continue;
    std::vector<Cyclo> v(static_cast<size_t>(m.cols()), Cyclo(0L));
    v[static_cast<size_t>(j)] = Cyclo(1L);
    for (size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<size_t>(pivots[r])] = -m.at(static_cast<int>(r), j);
    basis.push_back(std::move(v));
  }
  return basis;
}

int exact_rank(const CycloMatrix& m_in) {
  CycloMatrix m = m_in;
  std::vector<int> pivots;
  row_reduce(m, pivots);
  return static_cast<int>(pivots.size());
}

}  // namespace psv
