#include "f237/quartic_jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <stdexcept>

namespace f237 {

namespace {

constexpr int kMaxDeg = 16;

struct MonoTables {
  std::vector<std::vector<Mono3>> mons;  // by degree
  int idx[kMaxDeg + 1][kMaxDeg + 1][kMaxDeg + 1];
  MonoTables() {
    mons.resize(kMaxDeg + 1);
    for (int d = 0; d <= kMaxDeg; ++d)
      for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) {
          idx[d][i][j] = static_cast<int>(mons[d].size());
          mons[d].push_back({i, j, d - i - j});
        }
  }
};
const MonoTables& T() {
  static const MonoTables t;
  return t;
}
int dimS(int d) { return d < 0 ? 0 : (d + 1) * (d + 2) / 2; }
int mono_index(const Mono3& m) { return T().idx[m[0] + m[1] + m[2]][m[0]][m[1]]; }

// expected dimension of V_d(D), deg D = a, when 4d - a exceeds 2g - 2
long expect_dim(int d, int a) { return 4 * d - a > 4 ? (4 * d - a - 2) + dimS(d - 4) : -1; }

struct Fp {
  std::uint32_t p;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint32_t neg(std::uint32_t a) const { return a ? p - a : 0; }
  std::uint32_t inv(std::uint32_t a) const { return static_cast<std::uint32_t>(invmod(a, p)); }
};

// v -= c * w
void axpy(const Fp& F, FpVec& v, std::uint32_t c, const FpVec& w) {
  if (!c) return;
  for (size_t i = 0; i < v.size(); ++i)
    if (w[i]) v[i] = F.sub(v[i], F.mul(c, w[i]));
}

void reduce_by(const Fp& F, const FormSpace& S, FpVec& v) {
  for (size_t r = 0; r < S.rows.size(); ++r) {
    std::uint32_t c = v[S.piv[r]];
    if (c) axpy(F, v, c, S.rows[r]);
  }
}

bool is_zero(const FpVec& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

// insert into an RREF space; returns true if the dimension grew
bool insert(const Fp& F, FormSpace& S, FpVec v) {
  reduce_by(F, S, v);
  int pc = -1;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i]) {
      pc = static_cast<int>(i);
      break;
    }
  if (pc < 0) return false;
  std::uint32_t li = F.inv(v[pc]);
  for (auto& x : v) x = F.mul(x, li);
  for (auto& row : S.rows) {
    std::uint32_t c = row[pc];
    if (c) axpy(F, row, c, v);
  }
  auto it = std::lower_bound(S.piv.begin(), S.piv.end(), pc);
  size_t at = static_cast<size_t>(it - S.piv.begin());
  S.piv.insert(it, pc);
  S.rows.insert(S.rows.begin() + static_cast<long>(at), std::move(v));
  return true;
}

// solutions of the homogeneous system eqs (each of length n)
std::vector<FpVec> nullspace(const Fp& F, const FormSpace& E, int n) {
  std::vector<bool> is_piv(n, false);
  for (int c : E.piv) is_piv[c] = true;
  std::vector<FpVec> out;
  for (int f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    FpVec x(n, 0);
    x[f] = 1;
    for (size_t r = 0; r < E.rows.size(); ++r) x[E.piv[r]] = F.neg(E.rows[r][f]);
    out.push_back(std::move(x));
  }
  return out;
}

FpVec mul_forms(const Fp& F, const FpVec& a, int da, const FpVec& b, int db) {
  const auto& ma = T().mons[da];
  const auto& mb = T().mons[db];
  FpVec r(dimS(da + db), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (!b[j]) continue;
      int k = T().idx[da + db][ma[i][0] + mb[j][0]][ma[i][1] + mb[j][1]];
      r[k] = (r[k] + F.mul(a[i], b[j])) % F.p;
    }
  }
  return r;
}

FpVec mul_mono(const FpVec& a, int da, const Mono3& m) {
  const auto& ma = T().mons[da];
  int d = da + m[0] + m[1] + m[2];
  FpVec r(dimS(d), 0);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i]) r[T().idx[d][ma[i][0] + m[0]][ma[i][1] + m[1]]] = a[i];
  return r;
}

void check_dim(const FormSpace& S, long expect, const char* what) {
  if (expect >= 0 && static_cast<long>(S.dim()) != expect)
    throw std::logic_error(std::string("unexpected dimension in ") + what + ": got " + std::to_string(S.dim()) +
                           ", expected " + std::to_string(expect));
}

}  // namespace

// ---------------- L-polynomial ----------------

Int LPolynomial::at_one() const {
  Int s = 0;
  for (auto& v : c) s += v;
  return s;
}

bool LPolynomial::functional_equation() const {
  if (c[0] != 1) return false;
  for (int i = 0; i <= 3; ++i)
    if (c[6 - i] != ipow(Int(p), 3 - i) * c[i]) return false;
  return true;
}

bool LPolynomial::weil_bound_numeric() const {
  // T^6 L(1/T) = T^3 h(T + p/T); Weil's bound means h has three real roots in [-2 sqrt p, 2 sqrt p]
  long double a1 = c[1].get_d(), a2 = c[2].get_d(), a3 = c[3].get_d(), pp = static_cast<long double>(p);
  long double b = a2 - 3 * pp, cc = a3 - 2 * pp * a1;
  // depressed cubic u = w - a1/3
  long double sh = a1 / 3;
  long double P = b - a1 * a1 / 3, Qc = 2 * a1 * a1 * a1 / 27 - a1 * b / 3 + cc;
  long double bound = 2 * std::sqrt(pp) + 1e-6L;
  std::vector<long double> roots;
  if (std::fabs(P) < 1e-12L) {
    long double r = std::cbrt(-Qc);
    roots = {r - sh, r - sh, r - sh};
  } else {
    if (P > 0) return false;
    long double m = 2 * std::sqrt(-P / 3);
    long double arg = 3 * Qc / (P * m);
    if (arg > 1 + 1e-9L || arg < -1 - 1e-9L) return false;
    arg = std::max<long double>(-1, std::min<long double>(1, arg));
    long double th = std::acos(arg) / 3;
    for (int k = 0; k < 3; ++k) roots.push_back(m * std::cos(th - 2 * M_PI * k / 3) - sh);
  }
  for (auto r : roots)
    if (std::fabs(r) > bound) return false;
  return true;
}

// ---------------- curve ----------------

SmoothQuarticFp::SmoothQuarticFp(const PlaneQuarticQ& Q, long p, const Pt3& base) : Q_(Q), p_(p) {
  if (p >= 65536) throw std::invalid_argument("prime too large");
  if (!good_reduction_at(Q, p)) throw std::invalid_argument("bad prime");
  F_ = form_mod_p(Q.F);
  P0_ = reduce_point(base);
  if (mod_of(Q.F.eval(P0_[0], P0_[1], P0_[2]), p) != 0) throw std::invalid_argument("base point not on the curve");
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      if (mod_of(Q.F.eval(x, y, 1), p) == 0) pts1_.push_back({x, y, 1});
  for (long x = 0; x < p; ++x)
    if (mod_of(Q.F.eval(x, 1, 0), p) == 0) pts1_.push_back({x, 1, 0});
  if (mod_of(Q.F.eval(1, 0, 0), p) == 0) pts1_.push_back({1, 0, 0});
  fpart_.resize(kMaxDeg + 1);
}

std::array<long, 3> SmoothQuarticFp::reduce_point(const Pt3& P) const {
  std::array<long, 3> r{mod_of(P[0], p_), mod_of(P[1], p_), mod_of(P[2], p_)};
  int last = r[2] ? 2 : (r[1] ? 1 : 0);
  if (!r[last]) throw std::invalid_argument("point reduces to zero");
  long li = static_cast<long>(invmod(r[last], p_));
  for (auto& v : r) v = v * li % p_;
  return r;
}

FpVec SmoothQuarticFp::form_mod_p(const TernaryForm& h) const {
  FpVec v(dimS(h.degree), 0);
  for (auto& [m, c] : h.coeffs) v[mono_index(m)] = static_cast<std::uint32_t>(mod_of(c, p_));
  return v;
}

const GF& SmoothQuarticFp::field(int k) const {
  auto it = fields_.find(k);
  if (it == fields_.end()) it = fields_.emplace(k, std::make_shared<GF>(p_, k)).first;
  return *it->second;
}

FormSpace SmoothQuarticFp::all_forms(int d) const {
  FormSpace S;
  S.d = d;
  int n = dimS(d);
  for (int i = 0; i < n; ++i) {
    FpVec v(n, 0);
    v[i] = 1;
    S.rows.push_back(v);
    S.piv.push_back(i);
  }
  return S;
}

const FormSpace& SmoothQuarticFp::fpart(int d) const {
  if (d < 0 || d > kMaxDeg) throw std::invalid_argument("degree out of range");
  if (!fpart_[d]) {
    Fp F{static_cast<std::uint32_t>(p_)};
    FormSpace S;
    S.d = d;
    if (d >= 4)
      for (auto& m : T().mons[d - 4]) insert(F, S, mul_mono(F_, 4, m));
    fpart_[d] = S;
  }
  return *fpart_[d];
}

FpVec SmoothQuarticFp::first_outside_fpart(const FormSpace& V) const {
  Fp F{static_cast<std::uint32_t>(p_)};
  const FormSpace& Fp4 = fpart(V.d);
  for (auto& row : V.rows) {
    FpVec w = row;
    reduce_by(F, Fp4, w);
    if (!is_zero(w)) return row;
  }
  throw std::logic_error("space contains only multiples of the curve equation");
}

std::vector<ClosedPoint> SmoothQuarticFp::closed_points(int k) const {
  if (k < 1 || k > 4) throw std::invalid_argument("closed point degree must be 1..4");
  auto it = closed_.find(k);
  if (it != closed_.end()) return it->second;
  const GF& G = field(k);
  GF::E c[5][5];
  for (auto& row : c)
    for (auto& v : row) v = G.zero();
  for (auto& [m, v] : Q_.F.coeffs) c[m[0]][m[1]] = G.from_int(mod_of(v, p_));
  std::vector<std::array<GF::E, 3>> pts;
  auto add_roots = [&](const GFPoly& poly, auto make) {
    GFPoly f = poly;
    gf_trim(G, f);
    if (f.empty()) throw std::logic_error("line contained in the curve");
    for (auto& r : roots_over_gf(G, f)) pts.push_back(make(r.value));
  };
  for (auto x : G.elements()) {
    GFPoly f(5, G.zero());
    for (int j = 0; j <= 4; ++j) {
      GF::E s = G.zero();
      for (int i = 0; i + j <= 4; ++i) s = G.add(s, G.mul(c[i][j], G.pow(x, i)));
      f[j] = s;
    }
    add_roots(f, [&](GF::E y) { return std::array<GF::E, 3>{x, y, G.one()}; });
  }
  {
    GFPoly f(5, G.zero());
    for (int i = 0; i <= 4; ++i) f[i] = c[i][4 - i];
    add_roots(f, [&](GF::E x) { return std::array<GF::E, 3>{x, G.one(), G.zero()}; });
  }
  if (G.is_zero(c[4][0])) pts.push_back({G.one(), G.zero(), G.zero()});
  auto code = [&](const std::array<GF::E, 3>& P) {
    return std::array<long, 3>{G.code(P[0]), G.code(P[1]), G.code(P[2])};
  };
  std::vector<ClosedPoint> out;
  for (auto& P : pts) {
    // orbit under Frobenius; keep the point with the least code
    std::array<GF::E, 3> Q = P;
    int size = 0;
    bool least = true;
    do {
      for (auto& v : Q) v = G.frob(v);
      ++size;
      if (code(Q) < code(P)) least = false;
    } while (Q != P);
    if (size != k || !least) continue;
    ClosedPoint cp;
    cp.k = k;
    for (int t = 0; t < 3; ++t) cp.coords[t] = G.coords(P[t]);
    out.push_back(cp);
  }
  std::sort(out.begin(), out.end(), [](const ClosedPoint& a, const ClosedPoint& b) { return a.coords < b.coords; });
  closed_[k] = out;
  return out;
}

FormSpace SmoothQuarticFp::point_space(int d, const ClosedPoint& P) const {
  Fp F{static_cast<std::uint32_t>(p_)};
  const GF& G = field(P.k);
  GF::E X = G.from_coords(P.coords[0]), Y = G.from_coords(P.coords[1]), Z = G.from_coords(P.coords[2]);
  int n = dimS(d);
  std::vector<std::vector<long>> vals(n);
  for (int t = 0; t < n; ++t) {
    auto& m = T().mons[d][t];
    GF::E v = G.mul(G.mul(G.pow(X, m[0]), G.pow(Y, m[1])), G.pow(Z, m[2]));
    vals[t] = G.coords(v);
  }
  FormSpace E;
  E.d = 0;
  for (int c = 0; c < P.k; ++c) {
    FpVec eq(n);
    for (int t = 0; t < n; ++t) eq[t] = static_cast<std::uint32_t>(vals[t][c]);
    insert(F, E, eq);
  }
  FormSpace S;
  S.d = d;
  for (auto& v : nullspace(F, E, n)) insert(F, S, v);
  check_dim(S, n - P.k, "point space");
  return S;
}

FormSpace SmoothQuarticFp::ideal_space(int d, const std::vector<std::pair<int, FpVec>>& gens) const {
  Fp F{static_cast<std::uint32_t>(p_)};
  FormSpace S = fpart(d);
  for (auto& [dg, g] : gens) {
    if (dg > d) continue;
    for (auto& m : T().mons[d - dg]) insert(F, S, mul_mono(g, dg, m));
  }
  return S;
}

FormSpace SmoothQuarticFp::multiply(const FormSpace& A, const FormSpace& B, long expect) const {
  Fp F{static_cast<std::uint32_t>(p_)};
  int d = A.d + B.d;
  FormSpace S = fpart(d);
  for (size_t i = 0; i < A.rows.size(); ++i)
    for (size_t j = 0; j < B.rows.size(); ++j) {
      if (expect >= 0 && static_cast<long>(S.dim()) == expect) break;
      insert(F, S, mul_forms(F, A.rows[i], A.d, B.rows[j], B.d));
    }
  check_dim(S, expect, "multiply");
  return S;
}

FormSpace SmoothQuarticFp::lower(const FormSpace& V, int t, long expect) const {
  Fp F{static_cast<std::uint32_t>(p_)};
  int j = V.d - t;
  if (j < 0) throw std::invalid_argument("cannot lower to a larger degree");
  int n = dimS(t), N = dimS(V.d);
  std::vector<int> row_of(N, -1);
  for (size_t r = 0; r < V.rows.size(); ++r) row_of[V.piv[r]] = static_cast<int>(r);
  std::vector<int> nonpiv;
  for (int c = 0; c < N; ++c)
    if (row_of[c] < 0) nonpiv.push_back(c);
  FormSpace E;
  long target_rank = expect >= 0 ? n - expect : -1;
  const Mono3 mus[3] = {{j, 0, 0}, {0, j, 0}, {0, 0, j}};
  for (const auto& mu : mus) {
    std::vector<int> s(n);
    for (int u = 0; u < n; ++u) {
      auto& m = T().mons[t][u];
      s[u] = T().idx[V.d][m[0] + mu[0]][m[1] + mu[1]];
    }
    for (int c : nonpiv) {
      if (target_rank >= 0 && static_cast<long>(E.dim()) == target_rank) break;
      FpVec eq(n, 0);
      for (int u = 0; u < n; ++u) {
        int r = row_of[s[u]];
        eq[u] = r >= 0 ? F.neg(V.rows[r][c]) : (s[u] == c ? 1u : 0u);
      }
      insert(F, E, eq);
    }
    if (j == 0) break;
  }
  FormSpace S;
  S.d = t;
  for (auto& v : nullspace(F, E, n)) insert(F, S, v);
  check_dim(S, expect, "lower");
  return S;
}

FormSpace SmoothQuarticFp::flip(const FormSpace& VJ, const FpVec& f, int m, int t, long expect) const {
  Fp F{static_cast<std::uint32_t>(p_)};
  int D = t + VJ.d;
  if (D - m < 0 || D > kMaxDeg) throw std::invalid_argument("degrees out of range");
  FormSpace Tsp = fpart(D);
  for (auto& mono : T().mons[D - m]) insert(F, Tsp, mul_mono(f, m, mono));
  int n = dimS(t), N = dimS(D);
  std::vector<bool> is_piv(N, false);
  for (int c : Tsp.piv) is_piv[c] = true;
  std::vector<int> nonpiv;
  for (int c = 0; c < N; ++c)
    if (!is_piv[c]) nonpiv.push_back(c);
  FormSpace E;
  long target_rank = expect >= 0 ? n - expect : -1;
  std::vector<FpVec> w(n);
  for (auto& u : VJ.rows) {
    if (target_rank >= 0 && static_cast<long>(E.dim()) == target_rank) break;
    for (int s = 0; s < n; ++s) {
      w[s] = mul_mono(u, VJ.d, T().mons[t][s]);
      reduce_by(F, Tsp, w[s]);
    }
    for (int c : nonpiv) {
      FpVec eq(n);
      for (int s = 0; s < n; ++s) eq[s] = w[s][c];
      if (!is_zero(eq)) insert(F, E, eq);
    }
  }
  FormSpace S;
  S.d = t;
  for (auto& v : nullspace(F, E, n)) insert(F, S, v);
  check_dim(S, expect, "flip");
  return S;
}

const FormSpace& SmoothQuarticFp::p0_multiple(int k) const {
  if (k < 0 || k > 18) throw std::invalid_argument("multiplicity out of range");
  if (p0_tower_.empty()) {
    p0_tower_.push_back(all_forms(6));
    ClosedPoint P;
    for (int t = 0; t < 3; ++t) P.coords[t] = {P0_[t]};
    p0_tower_.push_back(point_space(6, P));
  }
  while (static_cast<int>(p0_tower_.size()) <= k) {
    int j = static_cast<int>(p0_tower_.size());
    FormSpace V12 = multiply(p0_tower_[j - 1], p0_tower_[1], expect_dim(12, j));
    p0_tower_.push_back(lower(V12, 6, expect_dim(6, j)));
  }
  return p0_tower_[k];
}

FormSpace SmoothQuarticFp::p0_space(int d, int k) const {
  if (d > 6) throw std::invalid_argument("degree out of range");
  return lower(p0_multiple(k), d, expect_dim(d, k));
}

// ---------------- classes ----------------

DivisorClass SmoothQuarticFp::finalize(FormSpace V3E) const {
  DivisorClass x;
  x.C = this;
  FormSpace V1 = lower(V3E, 1);
  if (V1.dim() == 0) {
    FormSpace V2 = lower(V3E, 2, 3);
    x.key.push_back(0);
    for (auto& r : V2.rows) x.key.insert(x.key.end(), r.begin(), r.end());
  } else {
    // collinear: the class is H - Q - 3 P0 with Q the fourth point on the line
    FormSpace VQ = flip(V3E, V1.rows[0], 1, 1, 2);
    const FpVec &a = VQ.rows[0], &b = VQ.rows[1];
    // lines a0 x + a1 y + a2 z (monomial order x, y, z)
    long P = p_;
    auto m = [P](long u, long v) { return (u * v) % P; };
    std::array<long, 3> q{(m(a[1], b[2]) - m(a[2], b[1]) + P) % P, (m(a[2], b[0]) - m(a[0], b[2]) + P) % P,
                          (m(a[0], b[1]) - m(a[1], b[0]) + P) % P};
    int last = q[2] ? 2 : (q[1] ? 1 : 0);
    long li = static_cast<long>(invmod(q[last], P));
    x.key.push_back(1);
    for (auto v : q) x.key.push_back(static_cast<std::uint32_t>(v * li % P));
  }
  x.V3 = std::move(V3E);
  return x;
}

DivisorClass SmoothQuarticFp::from_effective3(const FormSpace& V3E) const {
  check_dim(V3E, 7, "effective degree 3 divisor");
  return finalize(V3E);
}

// V8 = V_8(G) with deg G = 13: returns the class of E - 3P0 where div(g) = G + E
DivisorClass SmoothQuarticFp::step_two(const FormSpace& V8, int) const {
  FormSpace V4g = lower(V8, 4);
  FpVec g = first_outside_fpart(V4g);
  FormSpace V5 = lower(V8, 5, expect_dim(5, 13));
  return finalize(flip(V5, g, 4, 3, 7));
}

DivisorClass SmoothQuarticFp::reduce4(const FormSpace& V4A, int a) const {
  if (a < 6 || a > 9) throw std::invalid_argument("degree out of range for reduction");
  FpVec f = first_outside_fpart(V4A);
  int b = 16 - a, k = a - 3;
  FormSpace V4B = flip(V4A, f, 4, 4, expect_dim(4, b));
  FormSpace V8 = multiply(V4B, p0_space(4, k), expect_dim(8, b + k));
  return step_two(V8, b + k);
}

const DivisorClass& SmoothQuarticFp::kappa() const {
  if (!kappa_) {
    FormSpace V8 = multiply(p0_multiple(13), all_forms(2), expect_dim(8, 13));
    kappa_ = step_two(V8, 13);
  }
  return *kappa_;
}

DivisorClass SmoothQuarticFp::zero() const { return finalize(p0_space(3, 3)); }

DivisorClass SmoothQuarticFp::add(const DivisorClass& x, const DivisorClass& y) const {
  FormSpace V6 = multiply(x.V3, y.V3, expect_dim(6, 6));
  return reduce4(lower(V6, 4, expect_dim(4, 6)), 6);
}

DivisorClass SmoothQuarticFp::neg(const DivisorClass& x) const {
  const DivisorClass& K = kappa();
  FormSpace V4B = lower(multiply(x.V3, K.V3, expect_dim(6, 6)), 4, expect_dim(4, 6));
  FormSpace V8 = multiply(V4B, p0_space(4, 7), expect_dim(8, 13));
  return step_two(V8, 13);
}

DivisorClass SmoothQuarticFp::mul(const Int& n, const DivisorClass& x) const {
  if (n < 0) return mul(-n, neg(x));
  DivisorClass r = zero(), b = x;
  Int e = n;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = add(r, b);
    e >>= 1;
    if (e > 0) b = add(b, b);
  }
  return r;
}

DivisorClass SmoothQuarticFp::from_effective(const FormSpace& V4A, int a) const {
  if (V4A.d != 4) throw std::invalid_argument("expected a space of quartic forms");
  if (a < 0 || a > 9) throw std::invalid_argument("degree out of range");
  check_dim(V4A, expect_dim(4, a), "effective divisor");
  if (a >= 6) return reduce4(V4A, a);
  FormSpace V8 = multiply(V4A, p0_space(4, 6 - a), expect_dim(8, 6));
  return reduce4(lower(V8, 4, expect_dim(4, 6)), 6);
}

DivisorClass SmoothQuarticFp::abel_jacobi(const std::array<long, 3>& P) const {
  if (mod_of(Q_.F.eval(P[0], P[1], P[2]), p_) != 0) throw std::invalid_argument("point not on the curve");
  ClosedPoint cp;
  for (int t = 0; t < 3; ++t) cp.coords[t] = {P[t]};
  return class_of_closed_point(cp);
}

DivisorClass SmoothQuarticFp::class_of_closed_point(const ClosedPoint& P) const {
  if (P.k == 3) return from_effective3(point_space(3, P));
  if (P.k < 3) {
    FormSpace V6 = multiply(point_space(3, P), p0_space(3, 3 - P.k), expect_dim(6, 3));
    return from_effective3(lower(V6, 3, 7));
  }
  return from_effective(point_space(4, P), P.k);
}

DivisorClass SmoothQuarticFp::class_from_section(const TernaryForm& h) const {
  if (h.degree < 1 || h.degree > 2) throw std::invalid_argument("section degree must be 1 or 2");
  FpVec v = form_mod_p(h);
  if (is_zero(v)) throw std::invalid_argument("section vanishes on the curve");
  return from_effective(ideal_space(4, {{h.degree, v}}), 4 * h.degree);
}

DivisorClass SmoothQuarticFp::class_from_ideal(const std::vector<TernaryForm>& gens, int a) const {
  std::vector<std::pair<int, FpVec>> g;
  for (auto& h : gens) g.push_back({h.degree, form_mod_p(h)});
  FormSpace V4 = ideal_space(4, g);
  if (static_cast<long>(V4.dim()) != expect_dim(4, a)) throw std::invalid_argument("ideal does not cut a divisor of that degree");
  return from_effective(V4, a);
}

std::vector<SmoothQuarticFp::Effective3> SmoothQuarticFp::effective_degree3() const {
  std::vector<ClosedPoint> c1 = closed_points(1), c2 = closed_points(2), c3 = closed_points(3);
  std::vector<Effective3> out;
  auto combine = [&](const FormSpace& A, int a, const FormSpace& B, int b) {
    FormSpace V6 = multiply(A, B, expect_dim(6, a + b));
    return lower(V6, 3, expect_dim(3, a + b));
  };
  std::vector<FormSpace> s1;
  for (auto& P : c1) s1.push_back(point_space(3, P));
  for (size_t i = 0; i < c1.size(); ++i)
    for (size_t j = i; j < c1.size(); ++j) {
      FormSpace Vij = combine(s1[i], 1, s1[j], 1);
      for (size_t l = j; l < c1.size(); ++l)
        out.push_back({combine(Vij, 2, s1[l], 1), {{1, int(i)}, {1, int(j)}, {1, int(l)}}});
    }
  for (size_t i = 0; i < c1.size(); ++i)
    for (size_t j = 0; j < c2.size(); ++j)
      out.push_back({combine(s1[i], 1, point_space(3, c2[j]), 2), {{1, int(i)}, {2, int(j)}}});
  for (size_t l = 0; l < c3.size(); ++l) out.push_back({point_space(3, c3[l]), {{3, int(l)}}});
  return out;
}

LPolynomial SmoothQuarticFp::zeta() const {
  if (!zeta_) {
    if (p_ * p_ * p_ > 1000000) throw std::invalid_argument("p^3 exceeds the enumeration guard");
    Int s[4];
    for (int k = 1; k <= 3; ++k) s[k] = ipow(Int(p_), k) + 1 - count_points_gf(Q_, p_, k);
    Int e1 = s[1];
    Int e2 = e1 * s[1] - s[2];
    Int e3;
    if (e2 % 2 != 0) throw std::logic_error("inconsistent point counts");
    e2 /= 2;
    e3 = e2 * s[1] - e1 * s[2] + s[3];
    if (e3 % 3 != 0) throw std::logic_error("inconsistent point counts");
    e3 /= 3;
    LPolynomial L;
    L.p = p_;
    Int P = p_;
    L.c = {Int(1), -e1, e2, -e3, P * e2, -P * P * e1, P * P * P};
    zeta_ = L;
  }
  return *zeta_;
}

Int SmoothQuarticFp::group_order() const {
  if (!order_) order_ = zeta().at_one();
  return *order_;
}

Int SmoothQuarticFp::order(const DivisorClass& x) const {
  Int n = group_order();
  DivisorClass z = zero();
  for (auto& [q, e] : factor_small(n))
    for (int i = 0; i < e; ++i) {
      if (mul(n / q, x) == z)
        n /= q;
      else
        break;
    }
  return n;
}

// ---------------- free functions ----------------

LPolynomial zeta_l_polynomial(const SmoothQuarticFp& C) { return C.zeta(); }
DivisorClass class_add(const DivisorClass& x, const DivisorClass& y) {
  if (x.C != y.C) throw std::invalid_argument("classes on different curves");
  return x.C->add(x, y);
}
DivisorClass class_neg(const DivisorClass& x) { return x.C->neg(x); }
DivisorClass class_zero(const SmoothQuarticFp& C) { return C.zero(); }
DivisorClass abel_jacobi(const SmoothQuarticFp& C, const Pt3& P) { return C.abel_jacobi(P); }
DivisorClass class_from_section(const SmoothQuarticFp& C, const TernaryForm& h) { return C.class_from_section(h); }

SubgroupTable subgroup_enumerate(const SmoothQuarticFp& C, const std::vector<DivisorClass>& gens, size_t guard) {
  SubgroupTable T;
  size_t r = gens.size();
  T.r = r;
  DivisorClass z = C.zero();
  T.coeffs[z.key] = IntVec(r, Int(0));
  T.elements.push_back(z);
  std::vector<IntVec> rel;
  for (size_t head = 0; head < T.elements.size(); ++head) {
    DivisorClass x = T.elements[head];
    IntVec cx = T.coeffs[x.key];
    for (size_t i = 0; i < r; ++i) {
      DivisorClass y = C.add(x, gens[i]);
      IntVec cy = cx;
      cy[i] += 1;
      auto it = T.coeffs.find(y.key);
      if (it == T.coeffs.end()) {
        if (T.elements.size() >= guard) throw std::runtime_error("subgroup exceeds size guard");
        T.coeffs.emplace(y.key, cy);
        T.elements.push_back(y);
      } else {
        IntVec d(r);
        for (size_t j = 0; j < r; ++j) d[j] = cy[j] - it->second[j];
        rel.push_back(d);
      }
    }
  }
  if (r == 0) {
    T.kernel = Lattice::full(0);
    return T;
  }
  // keep the relation set small: only add vectors outside the current lattice
  IntMat basis;
  Lattice cur;
  bool full = false;
  for (auto& d : rel) {
    if (full && cur.contains(d)) continue;
    basis.push_back(d);
    basis = hnf(basis, r);
    if (basis.size() == r) {
      cur = Lattice::from_generators(basis, r);
      full = true;
    }
  }
  if (!full) throw std::logic_error("relation lattice is not of full rank");
  T.kernel = cur;
  if (T.kernel.index() != static_cast<long>(T.elements.size())) throw std::logic_error("subgroup order and lattice index differ");
  return T;
}

std::string str(Divisibility d) {
  switch (d) {
    case Divisibility::NotDivisible:
      return "NotDivisible";
    case Divisibility::Divisible:
      return "Divisible";
    default:
      return "Inconclusive";
  }
}

std::vector<DivisorClass> enumerate_jacobian(const SmoothQuarticFp& C, size_t guard) {
  if (C.group_order() > static_cast<long>(guard)) throw std::runtime_error("group exceeds size guard");
  std::unordered_map<std::vector<std::uint32_t>, size_t, KeyHash> seen;
  std::vector<DivisorClass> out;
  for (auto& E : C.effective_degree3()) {
    DivisorClass x = C.from_effective3(E.V3);
    if (seen.emplace(x.key, out.size()).second) out.push_back(x);
  }
  if (static_cast<long>(out.size()) != C.group_order()) throw std::logic_error("class count differs from L(1)");
  return out;
}

Divisibility ell_divisibility(const SmoothQuarticFp& C, const DivisorClass& y, long ell, std::optional<Int> M) {
  Int n = M ? *M : C.group_order();
  if (y == C.zero()) return Divisibility::Divisible;
  int v = n % ell == 0 ? val(n, Int(ell)) : 0;
  if (v == 0) return Divisibility::Divisible;
  if (v == 1) return C.mul(n / ell, y) == C.zero() ? Divisibility::Divisible : Divisibility::NotDivisible;
  if (n > 5000) return Divisibility::Inconclusive;
  auto all = enumerate_jacobian(C);
  for (auto& x : all)
    if (C.mul(Int(ell), x) == y) return Divisibility::Divisible;
  return Divisibility::NotDivisible;
}

std::vector<DivisorClass> xe3_generators(const SmoothQuarticFp& C) {
  auto pts = known_points(3);
  return {C.abel_jacobi(pts[1]), C.abel_jacobi(pts[2]), C.abel_jacobi(pts[3])};
}

DivisorClass xe3_d4(const SmoothQuarticFp& C) {
  TernaryForm z(1), q(2);
  z.add(0, 0, 1, 1);
  q.add(2, 0, 0, 1);
  q.add(1, 1, 0, -1);
  q.add(0, 2, 0, 2);
  return C.class_from_ideal({z, q}, 2);
}

namespace {
std::string key_str(const DivisorClass& x) {
  std::string s;
  for (auto v : x.key) s += std::to_string(v) + ",";
  if (!s.empty()) s.pop_back();
  return s;
}
}  // namespace

RelationReport check_d4_relation(long p) {
  SmoothQuarticFp C(reference_quartic(3), p, known_points(3)[0]);
  auto D = xe3_generators(C);
  DivisorClass lhs = C.mul(2, xe3_d4(C));
  DivisorClass rhs = C.add(C.mul(-3, D[0]), C.mul(3, D[2]));
  return {p, lhs == rhs, lhs == C.neg(rhs), key_str(lhs), key_str(rhs)};
}

}  // namespace f237
