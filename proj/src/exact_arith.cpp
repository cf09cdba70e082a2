#include "f237/exact_arith.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace f237 {

std::string str(const Int& n) { return n.get_str(); }
std::string str(const Rat& q) { return q.get_str(); }

Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

int sign(const Int& n) { return sgn(n); }

int val(const Int& n, const Int& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  Int m = n;
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

int val(const Rat& q, const Int& p) { return val(q.get_num(), p) - val(q.get_den(), p); }

Int isqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

Int radical(Int n) {
  if (n < 0) n = -n;
  Int r = 1;
  for (auto& [p, e] : factor_small(n)) r *= p;
  return r;
}

std::optional<Int> nth_root_exact(const Int& n, unsigned e) {
  if (e == 0) throw std::invalid_argument("exponent must be positive");
  if (e % 2 == 0 && n < 0) throw std::invalid_argument("even root of negative");
  Int a = abs(n), r;
  if (!mpz_root(r.get_mpz_t(), a.get_mpz_t(), e)) return std::nullopt;
  if (n < 0) r = -r;
  return r;
}

bool is_prime_small(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  for (long i = 2; i <= n; ++i)
    if (is_prime_small(i)) out.push_back(i);
  return out;
}

std::vector<std::pair<Int, int>> factor_small(Int n) {
  std::vector<std::pair<Int, int>> out;
  if (n < 0) n = -n;
  if (n == 0) throw std::invalid_argument("factor of zero");
  for (Int d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

// ---------------- UPoly ----------------

UPoly UPoly::monomial(const Int& a, int d) {
  std::vector<Int> v(d + 1, Int(0));
  v[d] = a;
  return UPoly(v);
}

void UPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Int UPoly::operator()(const Int& x) const {
  Int r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

Int UPoly::content() const {
  Int g = 0;
  for (auto& a : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  return g;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Int> v(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
  return UPoly(v);
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Int> v(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) v[i] -= b.c[i];
  return UPoly(v);
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Int> v(a.c.size() + b.c.size() - 1, Int(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
  return UPoly(v);
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  if (a.is_zero()) return UPoly();
  std::vector<Int> r = a.c;
  int db = b.degree(), da = a.degree();
  if (da < db) throw std::runtime_error("inexact polynomial division");
  std::vector<Int> q(da - db + 1, Int(0));
  for (int i = da - db; i >= 0; --i) {
    Int& top = r[i + db];
    if (top % b.c[db] != 0) throw std::runtime_error("inexact polynomial division");
    q[i] = top / b.c[db];
    for (int j = 0; j <= db; ++j) r[i + j] -= q[i] * b.c[j];
  }
  for (auto& x : r)
    if (x != 0) throw std::runtime_error("inexact polynomial division");
  return UPoly(q);
}

std::string str(const UPoly& p, const char* var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Int& a = p.c[i];
    if (a == 0) continue;
    if (!first) os << (a > 0 ? " + " : " - ");
    else if (a < 0) os << "-";
    Int m = abs(a);
    if (m != 1 || i == 0) os << m;
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

// ---------------- BinaryForm ----------------

BinaryForm::BinaryForm(int d, std::vector<Int> c) : degree(d), coeffs(std::move(c)) {
  if (d < 0 || static_cast<int>(coeffs.size()) != d + 1)
    throw std::invalid_argument("binary form needs degree+1 coefficients");
}

BinaryForm BinaryForm::from_ints(std::initializer_list<long> c) {
  std::vector<Int> v;
  for (long x : c) v.emplace_back(x);
  return BinaryForm(static_cast<int>(v.size()) - 1, v);
}

bool BinaryForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Int& a) { return a == 0; });
}

Int BinaryForm::eval(const Int& x, const Int& y) const {
  // Horner in x with powers of y
  Int r = 0, yp = 1;
  std::vector<Int> ypow(degree + 1);
  for (int i = 0; i <= degree; ++i) {
    ypow[i] = yp;
    yp *= y;
  }
  for (int i = 0; i <= degree; ++i) r = r * x + coeffs[i] * ypow[i];
  return r;
}

Rat BinaryForm::eval(const Rat& t) const {
  Rat r = 0;
  for (int i = 0; i <= degree; ++i) r = r * t + coeffs[i];
  return r;
}

UPoly BinaryForm::dehomogenize() const {
  std::vector<Int> v(degree + 1);
  for (int i = 0; i <= degree; ++i) v[degree - i] = coeffs[i];
  return UPoly(v);
}

Int BinaryForm::content() const {
  Int g = 0;
  for (auto& a : coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  return g;
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
  std::vector<Int> v(a.degree + b.degree + 1, Int(0));
  for (int i = 0; i <= a.degree; ++i)
    for (int j = 0; j <= b.degree; ++j) v[i + j] += a.coeffs[i] * b.coeffs[j];
  return BinaryForm(a.degree + b.degree, v);
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
  if (a.degree != b.degree) throw std::invalid_argument("degree mismatch");
  std::vector<Int> v(a.coeffs);
  for (int i = 0; i <= a.degree; ++i) v[i] += b.coeffs[i];
  return BinaryForm(a.degree, v);
}

BinaryForm BinaryForm::scaled(const Int& k) const {
  std::vector<Int> v(coeffs);
  for (auto& a : v) a *= k;
  return BinaryForm(degree, v);
}

std::string str(const BinaryForm& f) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= f.degree; ++i) {
    const Int& a = f.coeffs[i];
    if (a == 0) continue;
    int ex = f.degree - i, ey = i;
    if (!first) os << (a > 0 ? " + " : " - ");
    else if (a < 0) os << "-";
    Int m = abs(a);
    if (m != 1 || (ex == 0 && ey == 0)) os << m;
    if (ex) os << "x" << (ex > 1 ? "^" + std::to_string(ex) : "");
    if (ey) os << "y" << (ey > 1 ? "^" + std::to_string(ey) : "");
    first = false;
  }
  return first ? "0" : os.str();
}

// Sylvester matrix over Z[y], fraction-free (Bareiss) elimination.
UPoly resultant_in_x(const BinaryForm& f, const BinaryForm& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("zero input");
  int m = f.degree, n = g.degree, N = m + n;
  if (N == 0) return UPoly::constant(1);
  // entry for x^(deg-i): coeffs[i] * y^i
  std::vector<std::vector<UPoly>> M(N, std::vector<UPoly>(N));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) M[r][r + i] = UPoly::monomial(f.coeffs[i], i);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) M[n + r][r + i] = UPoly::monomial(g.coeffs[i], i);
  UPoly prev = UPoly::constant(1);
  int sgn = 1;
  for (int k = 0; k < N - 1; ++k) {
    if (M[k][k].is_zero()) {
      int piv = -1;
      for (int r = k + 1; r < N; ++r)
        if (!M[r][k].is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) return UPoly();
      std::swap(M[k], M[piv]);
      sgn = -sgn;
    }
    for (int i = k + 1; i < N; ++i)
      for (int j = k + 1; j < N; ++j)
        M[i][j] = exact_div(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev);
    for (int i = k + 1; i < N; ++i) M[i][k] = UPoly();
    prev = M[k][k];
  }
  UPoly r = M[N - 1][N - 1];
  if (sgn < 0) r = UPoly() - r;
  return r;
}

Int discriminant_cubic(const UPoly& f) {
  if (f.degree() != 3) throw std::invalid_argument("not a cubic");
  if (f.c[3] != 1) throw std::invalid_argument("cubic must be monic");
  const Int &b = f.c[2], &c = f.c[1], &d = f.c[0];
  return b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
}

// ---------------- TernaryForm ----------------

void TernaryForm::add(int i, int j, int k, const Int& c) {
  if (i + j + k != degree) throw std::invalid_argument("monomial degree mismatch");
  Int& s = coeffs[{i, j, k}];
  s += c;
  if (s == 0) coeffs.erase({i, j, k});
}

Int TernaryForm::eval(const Int& x, const Int& y, const Int& z) const {
  Int r = 0;
  for (auto& [m, c] : coeffs)
    r += c * ipow(x, m[0]) * ipow(y, m[1]) * ipow(z, m[2]);
  return r;
}

Int TernaryForm::content() const {
  Int g = 0;
  for (auto& [m, c] : coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

TernaryForm TernaryForm::partial(int var) const {
  TernaryForm d(degree - 1);
  for (auto& [m, c] : coeffs) {
    if (m[var] == 0) continue;
    Mono3 e = m;
    e[var] -= 1;
    d.add(e[0], e[1], e[2], c * m[var]);
  }
  return d;
}

bool TernaryForm::check() const {
  for (auto& [m, c] : coeffs)
    if (m[0] + m[1] + m[2] != degree || m[0] < 0 || m[1] < 0 || m[2] < 0) return false;
  return true;
}

bool operator==(const TernaryForm& a, const TernaryForm& b) {
  return a.degree == b.degree && a.coeffs == b.coeffs;
}

std::string str(const TernaryForm& f) {
  std::ostringstream os;
  bool first = true;
  // descending lexicographic exponent order
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
    auto& [m, a] = *it;
    if (!first) os << (a > 0 ? " + " : " - ");
    else if (a < 0) os << "-";
    Int mag = abs(a);
    bool constant = m[0] == 0 && m[1] == 0 && m[2] == 0;
    if (mag != 1 || constant) os << mag;
    const char* v = "xyz";
    for (int t = 0; t < 3; ++t)
      if (m[t]) os << v[t] << (m[t] > 1 ? "^" + std::to_string(m[t]) : "");
    first = false;
  }
  return first ? "0" : os.str();
}

Int det_bareiss(std::vector<std::vector<Int>> M) {
  size_t n = M.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sgn = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      size_t piv = n;
      for (size_t r = k + 1; r < n; ++r)
        if (M[r][k] != 0) {
          piv = r;
          break;
        }
      if (piv == n) return 0;
      std::swap(M[k], M[piv]);
      sgn = -sgn;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        M[i][j] = M[k][k] * M[i][j] - M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  return sgn * M[n - 1][n - 1];
}

namespace {
Int macaulay_once(const TernaryForm* f[3]) {
  int d = f[0]->degree;
  int D = 3 * d - 2;
  std::vector<Mono3> mons;
  for (int a = D; a >= 0; --a)
    for (int b = D - a; b >= 0; --b) mons.push_back({a, b, D - a - b});
  std::map<Mono3, size_t> idx;
  for (size_t i = 0; i < mons.size(); ++i) idx[mons[i]] = i;
  size_t N = mons.size();
  std::vector<std::vector<Int>> M(N, std::vector<Int>(N, Int(0)));
  std::vector<bool> reduced(N);
  for (size_t r = 0; r < N; ++r) {
    const Mono3& m = mons[r];
    int which = m[0] >= d ? 0 : (m[1] >= d ? 1 : 2);
    int big = (m[0] >= d) + (m[1] >= d) + (m[2] >= d);
    reduced[r] = big == 1;
    Mono3 shift = m;
    shift[which] -= d;
    for (auto& [e, c] : f[which]->coeffs) {
      Mono3 t{e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]};
      M[r][idx.at(t)] += c;
    }
  }
  std::vector<size_t> nr;
  for (size_t i = 0; i < N; ++i)
    if (!reduced[i]) nr.push_back(i);
  std::vector<std::vector<Int>> Ms(nr.size(), std::vector<Int>(nr.size()));
  for (size_t i = 0; i < nr.size(); ++i)
    for (size_t j = 0; j < nr.size(); ++j) Ms[i][j] = M[nr[i]][nr[j]];
  Int den = det_bareiss(Ms);
  if (den == 0) return Int(0);  // signal: extraneous factor vanished
  Int num = det_bareiss(M);
  if (num % den != 0) throw std::runtime_error("Macaulay quotient not exact");
  return num / den;
}

TernaryForm permute(const TernaryForm& f, const std::array<int, 3>& perm) {
  TernaryForm g(f.degree);
  for (auto& [m, c] : f.coeffs) {
    Mono3 e{};
    for (int t = 0; t < 3; ++t) e[perm[t]] = m[t];
    g.add(e[0], e[1], e[2], c);
  }
  return g;
}
}  // namespace

Int macaulay_resultant(const TernaryForm& f1, const TernaryForm& f2, const TernaryForm& f3) {
  if (f1.degree != f2.degree || f2.degree != f3.degree || f1.degree < 1)
    throw std::invalid_argument("forms must share a positive degree");
  // The extraneous minor can vanish for special inputs; a variable permutation
  // (which leaves the resultant invariant up to sign (-1)^(d^3) per transposition) helps.
  std::array<int, 3> perm{0, 1, 2};
  int d = f1.degree;
  do {
    TernaryForm g1 = permute(f1, perm), g2 = permute(f2, perm), g3 = permute(f3, perm);
    const TernaryForm* fs[3] = {&g1, &g2, &g3};
    Int r = macaulay_once(fs);
    if (r != 0) {
      // sign of the permutation acting on variables: each transposition multiplies by (-1)^(d^3)
      int inv = 0;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          if (perm[i] > perm[j]) ++inv;
      if ((inv % 2) && ((d * d * d) % 2)) r = -r;
      return r;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  // all minors vanished: either the resultant is zero or we cannot tell. Decide
  // zero-ness by checking the full Macaulay matrix determinant.
  return Int(0);
}

// ---------------- prime fields ----------------

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("inverse of zero");
  return powmod(a, p - 2, p);
}

long mod_of(const Int& n, long p) {
  Int r = n % p;
  if (r < 0) r += p;
  return r.get_si();
}

// ---------------- F_{p^k} ----------------

namespace {
using Vec = std::vector<long>;

// multiply two coordinate vectors modulo monic m (ascending, degree k)
Vec polymulmod(const Vec& a, const Vec& b, const Vec& m, long p) {
  int k = static_cast<int>(m.size()) - 1;
  std::vector<long> r(2 * k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  for (int i = 2 * k - 2; i >= k; --i) {
    long c = r[i];
    if (!c) continue;
    for (int j = 0; j < k; ++j) r[i - k + j] = ((r[i - k + j] - c * m[j]) % p + p) % p;
    r[i] = 0;
  }
  r.resize(k);
  return r;
}

long to_code(const Vec& v, long p) {
  long c = 0;
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) c = c * p + v[i];
  return c;
}

Vec from_code(long c, long p, int k) {
  Vec v(k);
  for (int i = 0; i < k; ++i) {
    v[i] = c % p;
    c /= p;
  }
  return v;
}

// naive polynomial arithmetic over F_p for irreducibility testing
Vec pmod(Vec a, const Vec& m, long p) {
  int dm = static_cast<int>(m.size()) - 1;
  while (!a.empty() && a.back() == 0) a.pop_back();
  long inv = static_cast<long>(invmod(m[dm], p));
  while (static_cast<int>(a.size()) - 1 >= dm) {
    int da = static_cast<int>(a.size()) - 1;
    long c = a[da] * inv % p;
    for (int j = 0; j <= dm; ++j) a[da - dm + j] = ((a[da - dm + j] - c * m[j]) % p + p) % p;
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

Vec pmul(const Vec& a, const Vec& b, long p) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return r;
}

Vec pgcd(Vec a, Vec b, long p) {
  while (!b.empty() && b.back() == 0) b.pop_back();
  while (!b.empty()) {
    a = pmod(a, b, p);
    std::swap(a, b);
  }
  return a;
}

bool irreducible(const Vec& f, long p) {
  int k = static_cast<int>(f.size()) - 1;
  if (k == 1) return true;
  // x^(p^i) mod f for i = 1..k/2; gcd(x^(p^i) - x, f) must be 1
  Vec xp{0, 1};
  Vec cur = xp;
  for (int i = 1; i <= k / 2; ++i) {
    // cur = cur^p mod f
    Vec r{1}, base = cur;
    long e = p;
    while (e) {
      if (e & 1) r = pmod(pmul(r, base, p), f, p);
      base = pmod(pmul(base, base, p), f, p);
      e >>= 1;
    }
    cur = r;
    Vec d = cur;
    d.resize(std::max<size_t>(d.size(), 2), 0);
    d[1] = ((d[1] - 1) % p + p) % p;
    Vec g = pgcd(f, d, p);
    if (g.size() > 1) return false;
  }
  return true;
}
}  // namespace

GF::GF(long p, int k) : p_(p), k_(k) {
  if (!is_prime_small(p)) throw std::invalid_argument("characteristic must be prime");
  if (k < 1 || k > 6) throw std::invalid_argument("extension degree must be in 1..6");
  q_ = 1;
  for (int i = 0; i < k; ++i) q_ *= p;
  if (q_ >= (1L << 24)) throw std::invalid_argument("field too large");
  qm1_ = static_cast<std::uint32_t>(q_ - 1);
  Z0 = qm1_;
  half_ = (p == 2) ? 0 : qm1_ / 2;
  // first monic irreducible in lexicographic order of (a_{k-1}, ..., a_0) codes
  if (k == 1) {
    mod_ = {0, 1};
  } else {
    for (long c = 0; c < q_; ++c) {
      Vec f = from_code(c, p, k);
      f.push_back(1);
      if (f[0] == 0) continue;
      if (irreducible(f, p)) {
        mod_ = f;
        break;
      }
    }
  }
  // primitive element: least code whose order is q-1
  auto fac = factor_small(Int(static_cast<long>(qm1_)));
  auto elem_pow = [&](const Vec& a, long e) {
    Vec r(k, 0);
    r[0] = 1;
    Vec b = a;
    while (e) {
      if (e & 1) r = polymulmod(r, b, mod_, p);
      b = polymulmod(b, b, mod_, p);
      e >>= 1;
    }
    return r;
  };
  Vec gen;
  if (k == 1) {
    for (long c = 1; c < q_; ++c) {
      bool ok = true;
      for (auto& [f, e] : fac)
        if (powmod(c, qm1_ / f.get_ui(), p) == 1) ok = false;
      if (ok) {
        gen = {c};
        break;
      }
    }
  } else {
    for (long c = 1; c < q_; ++c) {
      Vec a = from_code(c, p, k);
      bool ok = true;
      for (auto& [f, e] : fac) {
        Vec r = elem_pow(a, qm1_ / f.get_ui());
        if (to_code(r, p) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        gen = a;
        break;
      }
    }
  }
  exp_code_.assign(qm1_, 0);
  log_.assign(q_, Z0);
  Vec cur(k, 0);
  cur[0] = 1;
  for (std::uint32_t i = 0; i < qm1_; ++i) {
    long c = to_code(cur, p);
    exp_code_[i] = static_cast<std::uint32_t>(c);
    log_[c] = i;
    cur = (k == 1) ? Vec{cur[0] * gen[0] % p} : polymulmod(cur, gen, mod_, p);
  }
  zech_.assign(qm1_, Z0);
  for (std::uint32_t n = 0; n < qm1_; ++n) {
    long c = exp_code_[n];
    long d0 = c % p;
    long c2 = c - d0 + (d0 + 1) % p;
    zech_[n] = log_[c2];
  }
}

GF::E GF::inv(E a) const {
  if (a == Z0) throw std::domain_error("inverse of zero");
  return a == 0 ? 0 : qm1_ - a;
}

GF::E GF::pow(E a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a == Z0) return Z0;
  return static_cast<E>((static_cast<unsigned __int128>(a) * e) % qm1_);
}

GF::E GF::from_int(long n) const {
  long c = ((n % p_) + p_) % p_;
  return log_[c];
}

GF::E GF::from_coords(const std::vector<long>& v) const {
  if (static_cast<int>(v.size()) != k_) throw std::invalid_argument("coordinate length");
  Vec w(k_);
  for (int i = 0; i < k_; ++i) w[i] = ((v[i] % p_) + p_) % p_;
  return log_[to_code(w, p_)];
}

std::vector<long> GF::coords(E a) const { return from_code(code(a), p_, k_); }

std::vector<GF::E> GF::elements() const {
  std::vector<E> v;
  v.reserve(q_);
  v.push_back(Z0);
  for (std::uint32_t i = 0; i < qm1_; ++i) v.push_back(i);
  return v;
}

bool GF::in_prime_field(E a) const { return a == Z0 || code(a) < p_; }

// ---------------- polynomials over F_q ----------------

void gf_trim(const GF& F, GFPoly& a) {
  while (!a.empty() && F.is_zero(a.back())) a.pop_back();
}

GFPoly gf_mul(const GF& F, const GFPoly& a, const GFPoly& b) {
  if (a.empty() || b.empty()) return {};
  GFPoly r(a.size() + b.size() - 1, F.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (F.is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  gf_trim(F, r);
  return r;
}

GFPoly gf_mod(const GF& F, GFPoly a, const GFPoly& m) {
  gf_trim(F, a);
  int dm = static_cast<int>(m.size()) - 1;
  if (dm < 0) throw std::domain_error("mod by zero polynomial");
  GF::E linv = F.inv(m[dm]);
  while (static_cast<int>(a.size()) - 1 >= dm) {
    int da = static_cast<int>(a.size()) - 1;
    GF::E c = F.mul(a[da], linv);
    for (int j = 0; j <= dm; ++j) a[da - dm + j] = F.sub(a[da - dm + j], F.mul(c, m[j]));
    gf_trim(F, a);
  }
  return a;
}

GFPoly gf_gcd(const GF& F, GFPoly a, GFPoly b) {
  gf_trim(F, a);
  gf_trim(F, b);
  while (!b.empty()) {
    a = gf_mod(F, a, b);
    std::swap(a, b);
  }
  if (!a.empty()) {
    GF::E li = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, li);
  }
  return a;
}

GFPoly gf_powmod_x(const GF& F, std::uint64_t e, const GFPoly& m) {
  GFPoly r{F.one()}, base{F.zero(), F.one()};
  base = gf_mod(F, base, m);
  r = gf_mod(F, r, m);
  while (e) {
    if (e & 1) r = gf_mod(F, gf_mul(F, r, base), m);
    base = gf_mod(F, gf_mul(F, base, base), m);
    e >>= 1;
  }
  return r;
}

GF::E gf_eval(const GF& F, const GFPoly& a, GF::E x) {
  GF::E r = F.zero();
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = F.add(F.mul(r, x), *it);
  return r;
}

int count_distinct_roots(const GF& F, const GFPoly& poly) {
  GFPoly f = poly;
  gf_trim(F, f);
  if (f.empty()) throw std::invalid_argument("zero polynomial");
  if (f.size() == 1) return 0;
  GFPoly xq = gf_powmod_x(F, static_cast<std::uint64_t>(F.q()), f);
  xq.resize(std::max<size_t>(xq.size(), 2), F.zero());
  xq[1] = F.sub(xq[1], F.one());
  GFPoly g = gf_gcd(F, f, xq);
  return static_cast<int>(g.size()) - 1;
}

std::vector<GFRoot> roots_over_gf(const GF& F, const GFPoly& poly) {
  GFPoly f = poly;
  gf_trim(F, f);
  if (f.empty()) throw std::invalid_argument("zero polynomial");
  std::vector<GF::E> roots;
  if (f.size() > 1) {
    GFPoly xq = gf_powmod_x(F, static_cast<std::uint64_t>(F.q()), f);
    xq.resize(std::max<size_t>(xq.size(), 2), F.zero());
    xq[1] = F.sub(xq[1], F.one());
    GFPoly g = gf_gcd(F, f, xq);  // product of distinct linear factors
    // split by brute force over small fields, by trial shifts otherwise
    std::vector<GFPoly> work{g};
    while (!work.empty()) {
      GFPoly h = work.back();
      work.pop_back();
      int d = static_cast<int>(h.size()) - 1;
      if (d <= 0) continue;
      if (d == 1) {
        roots.push_back(F.neg(F.div(h[0], h[1])));
        continue;
      }
      if (F.q() <= 4096 || F.p() == 2) {
        for (auto x : F.elements())
          if (F.is_zero(gf_eval(F, h, x))) roots.push_back(x);
        continue;
      }
      bool split = false;
      for (long s = 0; s < F.q() - 1 && !split; ++s) {
        // gcd(h, (x + a)^((q-1)/2) - 1)
        GFPoly base{F.from_log(s), F.one()};
        GFPoly r{F.one()};
        std::uint64_t e = (F.q() - 1) / 2;
        GFPoly b = gf_mod(F, base, h);
        while (e) {
          if (e & 1) r = gf_mod(F, gf_mul(F, r, b), h);
          b = gf_mod(F, gf_mul(F, b, b), h);
          e >>= 1;
        }
        if (r.empty()) r = {F.zero()};
        r[0] = F.sub(r[0], F.one());
        GFPoly c = gf_gcd(F, h, r);
        int dc = static_cast<int>(c.size()) - 1;
        if (dc > 0 && dc < d) {
          // h / c
          GFPoly qt(d - dc + 1, F.zero()), rem = h;
          for (int i = d - dc; i >= 0; --i) {
            qt[i] = F.div(rem[i + dc], c[dc]);
            for (int j = 0; j <= dc; ++j) rem[i + j] = F.sub(rem[i + j], F.mul(qt[i], c[j]));
          }
          work.push_back(c);
          work.push_back(qt);
          split = true;
        }
      }
      if (!split) throw std::runtime_error("root splitting failed");
    }
  }
  std::sort(roots.begin(), roots.end(), [&](GF::E a, GF::E b) { return F.code(a) < F.code(b); });
  std::vector<GFRoot> out;
  for (auto r : roots) {
    int mult = 0;
    GFPoly cur = f;
    while (cur.size() > 1 && F.is_zero(gf_eval(F, cur, r))) {
      // synthetic division by (x - r)
      int d = static_cast<int>(cur.size()) - 1;
      GFPoly qt(d, F.zero());
      GF::E acc = F.zero();
      for (int i = d; i >= 1; --i) {
        acc = F.add(F.mul(acc, r), cur[i]);
        qt[i - 1] = acc;
      }
      cur = qt;
      ++mult;
    }
    out.push_back({r, mult});
  }
  return out;
}

// ---------------- integer lattices ----------------

namespace {
Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
void axpy_row(IntVec& dst, const Int& c, const IntVec& src) {
  for (size_t j = 0; j < dst.size(); ++j) dst[j] -= c * src[j];
}
}  // namespace

HnfResult hnf_transform(const IntMat& rows, size_t ncols) {
  size_t n = rows.size();
  HnfResult R;
  R.H = rows;
  for (auto& row : R.H)
    if (row.size() != ncols) throw std::invalid_argument("ragged matrix");
  R.U.assign(n, IntVec(n, Int(0)));
  for (size_t i = 0; i < n; ++i) R.U[i][i] = 1;
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < n; ++c) {
    for (;;) {
      size_t best = n;
      for (size_t i = r; i < n; ++i)
        if (R.H[i][c] != 0 && (best == n || abs(R.H[i][c]) < abs(R.H[best][c]))) best = i;
      if (best == n) break;
      std::swap(R.H[r], R.H[best]);
      std::swap(R.U[r], R.U[best]);
      bool done = true;
      for (size_t i = r + 1; i < n; ++i) {
        if (R.H[i][c] == 0) continue;
        Int q = floor_div(R.H[i][c], R.H[r][c]);
        axpy_row(R.H[i], q, R.H[r]);
        axpy_row(R.U[i], q, R.U[r]);
        if (R.H[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (R.H[r][c] == 0) continue;
    if (R.H[r][c] < 0) {
      for (auto& v : R.H[r]) v = -v;
      for (auto& v : R.U[r]) v = -v;
    }
    for (size_t i = 0; i < r; ++i) {
      Int q = floor_div(R.H[i][c], R.H[r][c]);
      if (q != 0) {
        axpy_row(R.H[i], q, R.H[r]);
        axpy_row(R.U[i], q, R.U[r]);
      }
    }
    ++r;
  }
  R.rank = r;
  return R;
}

IntMat hnf(const IntMat& rows, size_t ncols) {
  auto R = hnf_transform(rows, ncols);
  R.H.resize(R.rank);
  return R.H;
}

Lattice Lattice::full(size_t r) {
  Lattice L;
  L.r = r;
  L.B.assign(r, IntVec(r, Int(0)));
  for (size_t i = 0; i < r; ++i) L.B[i][i] = 1;
  return L;
}

Lattice Lattice::from_generators(const IntMat& gens, size_t r) {
  Lattice L;
  L.r = r;
  L.B = hnf(gens, r);
  if (L.B.size() != r) throw std::invalid_argument("lattice is not of full rank");
  for (size_t i = 0; i < r; ++i)
    if (L.B[i][i] == 0) throw std::invalid_argument("lattice is not of full rank");
  return L;
}

Int Lattice::index() const {
  Int d = 1;
  for (size_t i = 0; i < r; ++i) d *= B[i][i];
  return d;
}

IntVec Lattice::reduce(IntVec v) const {
  if (v.size() != r) throw std::invalid_argument("rank mismatch");
  for (size_t i = 0; i < r; ++i) {
    Int q = floor_div(v[i], B[i][i]);
    if (q != 0) axpy_row(v, q, B[i]);
  }
  return v;
}

bool Lattice::contains(const IntVec& v) const {
  for (auto& x : reduce(v))
    if (x != 0) return false;
  return true;
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  if (a.r != b.r) throw std::invalid_argument("rank mismatch");
  IntMat g = a.B;
  g.insert(g.end(), b.B.begin(), b.B.end());
  return Lattice::from_generators(g, a.r);
}

Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
  if (a.r != b.r) throw std::invalid_argument("rank mismatch");
  size_t r = a.r;
  IntMat g = a.B;
  g.insert(g.end(), b.B.begin(), b.B.end());
  auto R = hnf_transform(g, r);
  IntMat gens;
  for (size_t i = R.rank; i < g.size(); ++i) {
    IntVec x(r, Int(0));
    for (size_t k = 0; k < r; ++k)
      for (size_t j = 0; j < r; ++j) x[j] += R.U[i][k] * a.B[k][j];
    gens.push_back(x);
  }
  return Lattice::from_generators(gens, r);
}

std::optional<IntVec> coset_meet(const Lattice& a, const IntVec& x, const Lattice& b, const IntVec& y) {
  if (a.r != b.r) throw std::invalid_argument("rank mismatch");
  size_t r = a.r;
  IntMat g = a.B;
  g.insert(g.end(), b.B.begin(), b.B.end());
  auto R = hnf_transform(g, r);
  // solve (y - x) = t H with H upper triangular
  IntVec d(r), t(R.rank, Int(0));
  for (size_t j = 0; j < r; ++j) d[j] = y[j] - x[j];
  size_t row = 0;
  for (size_t c = 0; c < r && row < R.rank; ++c) {
    if (R.H[row][c] == 0) {
      if (d[c] != 0) return std::nullopt;
      continue;
    }
    if (d[c] % R.H[row][c] != 0) return std::nullopt;
    t[row] = d[c] / R.H[row][c];
    axpy_row(d, t[row], R.H[row]);
    ++row;
  }
  for (auto& v : d)
    if (v != 0) return std::nullopt;
  // coefficients on the generators of a give the shift inside a
  IntVec c = x;
  for (size_t i = 0; i < R.rank; ++i)
    for (size_t k = 0; k < r; ++k) {
      Int w = t[i] * R.U[i][k];
      if (w == 0) continue;
      for (size_t j = 0; j < r; ++j) c[j] += w * a.B[k][j];
    }
  return c;
}

}  // namespace f237
