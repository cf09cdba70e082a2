#include "f237/klein_twists.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace f237 {

Pt3 normalize_point(Int x, Int y, Int z) {
  Int g = gcd(gcd(x, y), z);
  if (g == 0) throw std::invalid_argument("zero vector is not a projective point");
  x /= g;
  y /= g;
  z /= g;
  const Int& last = z != 0 ? z : (y != 0 ? y : x);
  if (last < 0) {
    x = -x;
    y = -y;
    z = -z;
  }
  return {x, y, z};
}

std::string str(const Pt3& P) { return "[" + str(P[0]) + ":" + str(P[1]) + ":" + str(P[2]) + "]"; }

PlaneQuarticQ make_quartic(std::string name, TernaryForm F) {
  if (F.degree != 4 || !F.check()) throw std::invalid_argument("not a quartic form");
  Int c = F.content();
  if (c == 0) throw std::invalid_argument("zero form");
  TernaryForm G(4);
  for (auto& [m, v] : F.coeffs) G.add(m[0], m[1], m[2], v / c);
  return {std::move(name), G};
}

namespace {
void check_nonsingular(const Int& A, const Int& B) {
  if (4 * A * A * A + 27 * B * B == 0) throw std::invalid_argument("singular cubic");
}
}  // namespace

PlaneQuarticQ build_XE7(const Int& a, const Int& b) {
  check_nonsingular(a, b);
  TernaryForm F(4);
  F.add(4, 0, 0, a);
  F.add(3, 0, 1, 7 * b);
  F.add(2, 2, 0, 3);
  F.add(2, 0, 2, -3 * a * a);
  F.add(1, 1, 2, -6 * b);
  F.add(1, 0, 3, -5 * a * b);
  F.add(0, 3, 1, 2);
  F.add(0, 2, 2, 3 * a);
  F.add(0, 1, 3, 2 * a * a);
  F.add(0, 0, 4, -4 * b * b);
  return make_quartic("X_E(7) for A=" + str(a) + ", B=" + str(b), F);
}

PlaneQuarticQ build_XE7_minus(const Int& a, const Int& b) {
  check_nonsingular(a, b);
  Int a2 = a * a, a3 = a2 * a, b2 = b * b;
  TernaryForm F(4);
  F.add(4, 0, 0, -a2);
  F.add(0, 4, 0, a * (3 * a3 + 19 * b2));
  F.add(0, 0, 4, 3);
  F.add(0, 2, 2, 6 * a2);
  F.add(2, 0, 2, 6 * a);
  F.add(2, 2, 0, -6 * (a3 + 6 * b2));
  F.add(1, 2, 1, -12 * a * b);
  F.add(1, 1, 2, 18 * b);
  F.add(3, 1, 0, 2 * a * b);
  F.add(3, 0, 1, -12 * b);
  F.add(0, 3, 1, -2 * (4 * a3 + 21 * b2));
  F.add(1, 3, 0, 2 * a2 * b);
  F.add(0, 1, 3, -8 * a);
  return make_quartic("X_E^-(7) for A=" + str(a) + ", B=" + str(b), F);
}

PlaneQuarticQ build_XE7(const EllCurveQ& E) {
  EllCurveQ S = short_minimal_model(E);
  return build_XE7(S.a4.get_num(), S.a6.get_num());
}

PlaneQuarticQ build_XE7_minus(const EllCurveQ& E) {
  EllCurveQ S = short_minimal_model(E);
  return build_XE7_minus(S.a4.get_num(), S.a6.get_num());
}

namespace {
struct Term {
  int i, j, k;
  long c;
};
PlaneQuarticQ from_terms(const std::string& name, std::initializer_list<Term> ts) {
  TernaryForm F(4);
  for (auto& t : ts) F.add(t.i, t.j, t.k, t.c);
  return make_quartic(name, F);
}
}  // namespace

PlaneQuarticQ reference_quartic(int i) {
  switch (i) {
    case 1:
      return from_terms("X_E1", {{4, 0, 0, -1}, {3, 1, 0, -4}, {3, 0, 1, 1}, {2, 2, 0, 3}, {2, 1, 1, -12},
                                 {2, 0, 2, -12}, {1, 2, 1, 6}, {1, 1, 2, -6}, {1, 0, 3, -8}, {0, 3, 1, -2},
                                 {0, 1, 3, -4}, {0, 0, 4, 4}});
    case 2:
      return from_terms("X_E2", {{4, 0, 0, 4}, {3, 1, 0, -2}, {3, 0, 1, -12}, {2, 0, 2, 3}, {1, 3, 0, -2},
                                 {1, 1, 2, -6}, {1, 0, 3, 7}, {0, 3, 1, 2}, {0, 2, 2, 3}, {0, 1, 3, 2},
                                 {0, 0, 4, -6}});
    case 3:
      return from_terms("X_E3", {{4, 0, 0, 1}, {3, 1, 0, 3}, {2, 1, 1, -3}, {2, 0, 2, -3}, {1, 3, 0, 6},
                                 {1, 2, 1, -6}, {1, 1, 2, 3}, {1, 0, 3, -2}, {0, 4, 0, 4}, {0, 3, 1, 2},
                                 {0, 1, 3, -5}});
    case 4:
      return from_terms("X_E4", {{4, 0, 0, -12}, {3, 1, 0, -6}, {3, 0, 1, -7}, {2, 2, 0, 3}, {2, 1, 1, 6},
                                 {2, 0, 2, -6}, {1, 3, 0, 4}, {1, 2, 1, -6}, {1, 0, 3, 3}, {0, 3, 1, 2},
                                 {0, 2, 2, -3}, {0, 1, 3, 2}});
  }
  throw std::invalid_argument("model index must be 1..4");
}

std::vector<Pt3> known_points(int i) {
  auto P = [](long x, long y, long z) { return normalize_point(x, y, z); };
  switch (i) {
    case 1:
      return {P(0, 1, 0)};
    case 2:
      return {P(0, 1, 0), P(1, 1, 0)};
    case 3:
      return {P(0, 0, 1), P(1, 1, 1), P(2, 0, 1), P(-1, 0, 1)};
    case 4:
      return {P(0, 1, 0), P(0, 0, 1)};
  }
  throw std::invalid_argument("model index must be 1..4");
}

bool on_curve(const PlaneQuarticQ& Q, const Pt3& P) { return Q.F.eval(P[0], P[1], P[2]) == 0; }

Int partials_resultant(const PlaneQuarticQ& Q) {
  static std::mutex mu;
  static std::map<std::string, Int> cache;
  std::string key = str(Q.F);
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Int r = macaulay_resultant(Q.F.partial(0), Q.F.partial(1), Q.F.partial(2));
  std::lock_guard<std::mutex> lk(mu);
  cache[key] = r;
  return r;
}

bool is_smooth(const PlaneQuarticQ& Q) { return partials_resultant(Q) != 0; }

bool bad_reduction_within(const PlaneQuarticQ& Q, const std::vector<long>& allowed) {
  Int r = partials_resultant(Q);
  if (r == 0) return false;
  for (long p : allowed)
    while (r % p == 0) r /= p;
  return abs(r) == 1;
}

bool good_reduction_at(const PlaneQuarticQ& Q, long p) {
  if (p == 2) return false;  // the partials resultant does not see characteristic 2
  return mod_of(partials_resultant(Q), p) != 0;
}

namespace {
using E = GF::E;

// distinct roots in F_q of a polynomial of degree <= 4 (ascending, not identically zero)
struct SmallRootCounter {
  const GF& F;
  std::uint64_t q;
  explicit SmallRootCounter(const GF& f) : F(f), q(static_cast<std::uint64_t>(f.q())) {}

  int operator()(std::array<E, 5> c) const {
    int d = 4;
    while (d >= 0 && F.is_zero(c[d])) --d;
    if (d < 0) throw std::logic_error("line contained in the curve");
    if (d == 0) return 0;
    if (d == 1) return 1;
    E li = F.inv(c[d]);
    for (int i = 0; i <= d; ++i) c[i] = F.mul(c[i], li);
    // residues mod the monic c, degree < d
    auto mulmod = [&](const std::array<E, 4>& a, const std::array<E, 4>& b) {
      std::array<E, 8> r;
      r.fill(F.zero());
      for (int i = 0; i < d; ++i) {
        if (F.is_zero(a[i])) continue;
        for (int j = 0; j < d; ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
      }
      for (int t = 2 * d - 2; t >= d; --t) {
        E m = r[t];
        if (F.is_zero(m)) continue;
        for (int i = 0; i < d; ++i) r[t - d + i] = F.sub(r[t - d + i], F.mul(m, c[i]));
      }
      std::array<E, 4> o;
      o.fill(F.zero());
      for (int i = 0; i < d; ++i) o[i] = r[i];
      return o;
    };
    std::array<E, 4> base, res;
    base.fill(F.zero());
    res.fill(F.zero());
    res[0] = F.one();
    base[1] = F.one();
    for (std::uint64_t e = q; e; e >>= 1) {
      if (e & 1) res = mulmod(res, base);
      if (e > 1) base = mulmod(base, base);
    }
    // gcd(c, y^q - y)
    GFPoly a(c.begin(), c.begin() + d + 1), b(res.begin(), res.begin() + d);
    if (b.size() < 2) b.resize(2, F.zero());
    b[1] = F.sub(b[1], F.one());
    return static_cast<int>(gf_gcd(F, a, b).size()) - 1;
  }
};
}  // namespace

long count_points_gf(const PlaneQuarticQ& Q, long p, int k) {
  if (k < 1 || k > 6) throw std::invalid_argument("extension degree must be in 1..6");
  if (!good_reduction_at(Q, p)) throw std::invalid_argument("bad prime");
  GF F(p, k);
  SmallRootCounter roots(F);
  // c[i][j]: coefficient of x^i y^j z^(4-i-j)
  E c[5][5];
  for (auto& row : c)
    for (auto& v : row) v = F.zero();
  for (auto& [m, v] : Q.F.coeffs) c[m[0]][m[1]] = F.from_int(mod_of(v, p));
  long total = 0;
  // z = 0
  {
    std::array<E, 5> poly;  // F(x, 1, 0) in x
    for (int i = 0; i <= 4; ++i) poly[i] = c[i][4 - i];
    bool all_zero = true;
    for (auto e : poly) all_zero = all_zero && F.is_zero(e);
    if (all_zero) throw std::logic_error("line contained in the curve");
    total += roots(poly);
    if (F.is_zero(c[4][0])) ++total;  // [1:0:0]
  }
  // z = 1, x running over Frobenius orbit representatives
  auto count_at = [&](E x) {
    E xp[5];
    xp[0] = F.one();
    for (int i = 1; i <= 4; ++i) xp[i] = F.mul(xp[i - 1], x);
    std::array<E, 5> poly;
    for (int j = 0; j <= 4; ++j) {
      E s = F.zero();
      for (int i = 0; i + j <= 4; ++i)
        if (!F.is_zero(c[i][j])) s = F.add(s, F.mul(c[i][j], xp[i]));
      poly[j] = s;
    }
    return roots(poly);
  };
  total += count_at(F.zero());
  std::uint64_t qm1 = F.qm1();
  for (std::uint64_t i = 0; i < qm1; ++i) {
    std::uint64_t j = i, orbit = 1;
    bool rep = true;
    for (;;) {
      j = (j * static_cast<std::uint64_t>(p)) % qm1;
      if (j == i) break;
      if (j < i) {
        rep = false;
        break;
      }
      ++orbit;
    }
    if (!rep) continue;
    total += static_cast<long>(orbit) * count_at(F.from_log(static_cast<long>(i)));
  }
  return total;
}

long count_points_bruteforce(const PlaneQuarticQ& Q, long p) {
  long n = 0;
  auto zero = [&](long x, long y, long z) { return mod_of(Q.F.eval(x, y, z), p) == 0; };
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y) n += zero(x, y, 1);
  for (long x = 0; x < p; ++x) n += zero(x, 1, 0);
  n += zero(1, 0, 0);
  return n;
}

std::string str(LocalResult r) {
  switch (r) {
    case LocalResult::HasPoint:
      return "HasPoint";
    case LocalResult::NoPoint:
      return "NoPoint";
    default:
      return "Unknown";
  }
}

namespace {
// F with one coordinate fixed to 1; the two free coordinates carry a minimum valuation
struct Chart {
  int fixed;         // index set to 1
  int free[2];       // indices of free coordinates
  int min_val[2];    // required valuation (0 or 1)
};

int vp(const Int& n, long p) { return n == 0 ? 1 << 20 : val(n, Int(p)); }
}  // namespace

LocalReport qp_solvability(const PlaneQuarticQ& Q, long p, int max_level) {
  if (max_level < 2) throw std::invalid_argument("level budget must be at least 2");
  const Chart charts[3] = {{2, {0, 1}, {0, 0}}, {1, {0, 2}, {0, 1}}, {0, {1, 2}, {1, 1}}};
  TernaryForm dF[3] = {Q.F.partial(0), Q.F.partial(1), Q.F.partial(2)};
  LocalReport rep;
  bool undecided = false;
  int deepest = 0;
  for (auto& ch : charts) {
    auto point = [&](const Int& u, const Int& v) {
      std::array<Int, 3> P;
      P[ch.fixed] = 1;
      P[ch.free[0]] = u;
      P[ch.free[1]] = v;
      return P;
    };
    std::vector<std::pair<Int, Int>> cand;
    Int pn = p;
    for (long u = 0; u < p; ++u)
      for (long v = 0; v < p; ++v) {
        if ((ch.min_val[0] && u) || (ch.min_val[1] && v)) continue;
        auto P = point(u, v);
        if (mod_of(Q.F.eval(P[0], P[1], P[2]), p) == 0) cand.push_back({u, v});
      }
    int level = 1;
    while (!cand.empty()) {
      // Hensel: v(F) > 2 v(dF/dt) along a free coordinate t
      for (auto& [u, v] : cand) {
        auto P = point(u, v);
        Int f = Q.F.eval(P[0], P[1], P[2]);
        int vf = vp(f, p);
        int vd = std::min(vp(dF[ch.free[0]].eval(P[0], P[1], P[2]), p), vp(dF[ch.free[1]].eval(P[0], P[1], P[2]), p));
        if (f == 0 || vf > 2 * vd) {
          rep.result = LocalResult::HasPoint;
          rep.witness = Pt3{P[0], P[1], P[2]};
          rep.level = level;
          return rep;
        }
      }
      if (level >= max_level) break;
      Int pn1 = pn * p;
      std::vector<std::pair<Int, Int>> next;
      for (auto& [u, v] : cand)
        for (long i = 0; i < p; ++i)
          for (long j = 0; j < p; ++j) {
            Int u2 = u + pn * i, v2 = v + pn * j;
            auto P = point(u2, v2);
            Int f = Q.F.eval(P[0], P[1], P[2]);
            if (f % pn1 == 0) next.push_back({u2, v2});
          }
      cand.swap(next);
      pn = pn1;
      ++level;
    }
    deepest = std::max(deepest, level);
    if (!cand.empty()) undecided = true;
  }
  rep.result = undecided ? LocalResult::Unknown : LocalResult::NoPoint;
  rep.level = deepest;
  return rep;
}

std::vector<Pt3> box_search(const PlaneQuarticQ& Q, long H) {
  if (H < 0) throw std::invalid_argument("height must be non-negative");
  std::vector<std::pair<Mono3, long>> terms;
  for (auto& [m, v] : Q.F.coeffs) {
    if (!v.fits_slong_p()) throw std::overflow_error("coefficient too large for box search");
    terms.push_back({m, v.get_si()});
  }
  std::vector<Pt3> out;
  for (long z = 0; z <= H; ++z)
    for (long y = (z == 0 ? 0 : -H); y <= H; ++y)
      for (long x = (z == 0 && y == 0 ? 1 : -H); x <= H; ++x) {
        if (std::gcd(std::gcd(x, y), z) != 1) continue;
        __int128 pw[3][5];
        long c3[3] = {x, y, z};
        for (int t = 0; t < 3; ++t) {
          pw[t][0] = 1;
          for (int e = 1; e <= 4; ++e) pw[t][e] = pw[t][e - 1] * c3[t];
        }
        __int128 s = 0;
        for (auto& [m, v] : terms) s += static_cast<__int128>(v) * pw[0][m[0]] * pw[1][m[1]] * pw[2][m[2]];
        if (s == 0) out.push_back(normalize_point(x, y, z));
      }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace f237
