#include "f237/descent_to_fermat.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "f237/modular_maps.hpp"

namespace f237 {

using Elem = GaloisCubicField::Elem;

GaloisCubicField::GaloisCubicField(const UPoly& f) : f_(f) {
  if (f.degree() != 3 || f.c[3] != 1) throw std::invalid_argument("need a monic cubic");
  Int D = discriminant_cubic(f);
  if (D <= 0 || !is_square(D)) throw std::invalid_argument("not a Galois cubic");
  d_ = isqrt(D);
  // an integer root would make f reducible; candidates divide the constant term
  Int c0 = abs(f.c[0]);
  for (Int r = 0; r * r * r <= 8 * c0 * c0 + 8 && r <= c0; ++r) {
    if (r != 0 && c0 % r != 0) continue;
    if (f(r) == 0 || f(-r) == 0) throw std::invalid_argument("cubic is reducible");
  }
  Rat s = -Rat(f.c[2]);
  Elem fprime = {Rat(f.c[1]), Rat(2 * f.c[2]), Rat(3)};
  Elem t = sub(rational(s), alpha());
  t = add(t, scale(inv(fprime), Rat(d_)));
  conj_ = scale(t, Rat(1, 2));
  // f(conj) = 0 and conj != alpha
  std::vector<Rat> asc;
  for (auto& c : f.c) asc.emplace_back(c);
  Elem fc = eval_poly(asc, conj_);
  if (fc != rational(0) || conj_ == alpha()) throw std::logic_error("conjugation formula failed");
  if (sigma(sigma(sigma(alpha()))) != alpha()) throw std::logic_error("conjugation is not of order 3");
}

Elem GaloisCubicField::add(const Elem& a, const Elem& b) const { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Elem GaloisCubicField::sub(const Elem& a, const Elem& b) const { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Elem GaloisCubicField::scale(const Elem& a, const Rat& q) const { return {a[0] * q, a[1] * q, a[2] * q}; }

Elem GaloisCubicField::mul(const Elem& a, const Elem& b) const {
  Rat r[5];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i + j] += a[i] * b[j];
  // t^3 = -c2 t^2 - c1 t - c0
  for (int e = 4; e >= 3; --e) {
    Rat h = r[e];
    r[e] = 0;
    r[e - 1] -= h * f_.c[2];
    r[e - 2] -= h * f_.c[1];
    r[e - 3] -= h * f_.c[0];
  }
  return {r[0], r[1], r[2]};
}

Elem GaloisCubicField::inv(const Elem& a) const {
  // columns of the multiplication-by-a matrix are a, a*alpha, a*alpha^2
  std::array<std::array<Rat, 4>, 3> m;
  Elem col = a;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) m[i][j] = col[i];
    col = mul(col, alpha());
  }
  m[0][3] = 1;
  for (int c = 0; c < 3; ++c) {
    int piv = -1;
    for (int r = c; r < 3; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("zero divisor");
    std::swap(m[c], m[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rat fct = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= fct * m[c][k];
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

Elem GaloisCubicField::eval_poly(const std::vector<Rat>& asc, const Elem& x) const {
  Elem r = rational(0);
  for (auto it = asc.rbegin(); it != asc.rend(); ++it) r = add(mul(r, x), rational(*it));
  return r;
}

Elem GaloisCubicField::sigma(const Elem& a) const {
  return add(add(rational(a[0]), scale(conj_, a[1])), scale(mul(conj_, conj_), a[2]));
}

UPoly cubic_f1() { return UPoly({Int(7), Int(7), Int(-7), Int(1)}); }
UPoly cubic_f2() { return UPoly({Int(1), Int(-1), Int(-2), Int(1)}); }
UPoly cubic_f3() { return UPoly({Int(1), Int(3), Int(-4), Int(1)}); }

BinaryForm cubic_form(int index) {
  switch (index) {
    case 1: return BinaryForm::from_ints({1, -7, 7, 7});
    case 2: return BinaryForm::from_ints({1, -2, -1, 1});
    case 3: return BinaryForm::from_ints({1, -4, 3, 1});
  }
  throw std::invalid_argument("cubic index must be 1, 2 or 3");
}

namespace {
BinaryForm homogenise(const UPoly& f) {
  std::vector<Int> c(f.c.rbegin(), f.c.rend());
  return BinaryForm(f.degree(), c);
}

Int as_integer(const Elem& e, const char* what) {
  if (!GaloisCubicField::is_rational(e) || e[0].get_den() != 1)
    throw std::logic_error(std::string(what) + " is not a rational integer");
  return e[0].get_num();
}

Int exact_quotient(const Int& a, const Int& b) {
  if (a % b != 0) throw std::logic_error("expected divisibility failed");
  return a / b;
}

const GaloisCubicField& field(int index) {
  static const GaloisCubicField K1(cubic_f1()), K2(cubic_f2()), K3(cubic_f3());
  return index == 1 ? K1 : index == 2 ? K2 : K3;
}
}  // namespace

FermatTriple norm_to_fermat(const GaloisCubicField& K, const Int& x, const Int& y, const Int& z,
                            const Int& k, unsigned n) {
  BinaryForm F = homogenise(K.f());
  if (F.eval(x, y) != k * ipow(z, n)) throw std::invalid_argument("not a norm-form solution");
  if (x == 0 && y == 0 && z == 0) return {0, 0, 0};
  Elem al[3] = {K.alpha(), K.conj_alpha(), K.sigma(K.conj_alpha())};
  Elem be[3];
  for (int i = 0; i < 3; ++i) {
    Elem diff = K.sub(al[(i + 2) % 3], al[(i + 1) % 3]);
    Elem lin = K.sub(K.rational(Rat(x)), K.scale(al[i], Rat(y)));
    be[i] = K.mul(diff, lin);
  }
  Elem A = K.mul(K.mul(K.sub(be[0], be[1]), K.sub(be[1], be[2])), K.sub(be[2], be[0]));
  Elem B = K.add(K.add(K.mul(be[0], be[1]), K.mul(be[1], be[2])), K.mul(be[2], be[0]));
  FermatTriple t{as_integer(A, "a"), as_integer(B, "b"), z * z};
  if (t.a * t.a + 4 * t.b * t.b * t.b != -27 * K.disc() * k * k * ipow(t.c, n))
    throw std::logic_error("Fermat identity failed");
  return t;
}

bool StarTriple::operator<(const StarTriple& o) const {
  Int ac = abs(c), oc = abs(o.c);
  if (ac != oc) return ac < oc;
  if (c != o.c) return c < o.c;
  if (b != o.b) return b < o.b;
  return a < o.a;
}

bool star_condition(const Int& a, const Int& b, const Int& c) {
  if (a == 0) return false;
  Int g, t = 42 * a * b;
  mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), t.get_mpz_t());
  if (g != 1) return false;
  int v3 = val(a, 3);
  return v3 == 0 || v3 >= 3;
}

StarTriple make_triple(const Int& a, const Int& b, const Int& c, int tag, unsigned n) {
  if (a * a + tag * b * b * b != 27 * ipow(c, n)) throw std::logic_error("not a solution");
  StarTriple s{a, b, c, tag, n, star_condition(a, b, c), false};
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  s.primitive = g == 1;
  return s;
}

namespace {
ReductionTrace reduce_core(Int x, Int y, const Int& z, int index, Int k, unsigned n, bool sharp) {
  if (n % 2 == 0) throw std::invalid_argument("n must be odd");
  int m = sharp ? 7 : 1;
  if (cubic_form(index).eval(x, y) != m * k * ipow(z, n)) throw std::invalid_argument("not a norm-form solution");
  if (k == 8) {
    if (index != 1) throw std::invalid_argument("k = 8 needs the first cubic");
    if (x % 2 == 0 && y % 2 == 0) {
      x /= 2;
      y /= 2;
    } else if (x % 2 != 0 && y % 2 != 0) {
      // f1(2w + y, y) = 8 f2(w, y)
      x = (x - y) / 2;
      index = 2;
    } else {
      throw std::invalid_argument("parity contradiction");
    }
    k = 1;
  }
  if (k != 1) throw std::invalid_argument("k must be 1 or 8");
  ReductionTrace tr;
  tr.cubic_used = index;
  tr.raw = norm_to_fermat(field(index), x, y, z, m, n);
  Int a1 = exact_quotient(tr.raw.a, index == 1 ? 56 : 7);
  Int b1 = exact_quotient(tr.raw.b, index == 1 ? 28 : 7);
  Int a = a1, b = b1;
  if (sharp) {
    tr.a1 = a1;
    tr.b1 = b1;
    a = exact_quotient(a1, 7);
    b = exact_quotient(b1, 7);
  }
  tr.out = make_triple(a, b, -tr.raw.c, sharp ? 196 : 28, n);
  return tr;
}
}  // namespace

ReductionTrace reduce_to_28(const Int& x, const Int& y, const Int& z, int index, const Int& k, unsigned n) {
  return reduce_core(x, y, z, index, k, n, false);
}

ReductionTrace reduce_to_196(const Int& x, const Int& y, const Int& z, int index, const Int& k, unsigned n) {
  return reduce_core(x, y, z, index, k, n, true);
}

namespace {
using i128 = __int128;

struct SquareFilter {
  bool m64[64]{}, m63[63]{}, m65[65]{}, m11[11]{};
  SquareFilter() {
    for (int i = 0; i < 64; ++i) m64[i * i % 64] = true;
    for (int i = 0; i < 63; ++i) m63[i * i % 63] = true;
    for (int i = 0; i < 65; ++i) m65[i * i % 65] = true;
    for (int i = 0; i < 11; ++i) m11[i * i % 11] = true;
  }
};

// A >= 0
bool square_root_128(i128 A, i128& root) {
  static const SquareFilter F;
  if (!F.m64[static_cast<int>(A & 63)]) return false;
  if (!F.m63[static_cast<int>(A % 63)] || !F.m65[static_cast<int>(A % 65)] || !F.m11[static_cast<int>(A % 11)])
    return false;
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(A)));
  while (r * r > A) --r;
  while ((r + 1) * (r + 1) <= A) ++r;
  if (r * r != A) return false;
  root = r;
  return true;
}

Int to_int(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Int hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & ~0UL));
  Int r = (hi << 64) + lo;
  return neg ? Int(-r) : r;
}
}  // namespace

std::vector<StarTriple> search_primitive_solutions(int tag, long c_max, const SearchOptions& opt) {
  if (c_max < 1) throw std::invalid_argument("c_max must be positive");
  if (c_max > 2000) throw std::invalid_argument("c_max too large for 128-bit search");
  std::vector<StarTriple> out;
  for (long c = -c_max; c <= c_max; ++c) {
    if (c == 0) continue;
    i128 c7 = 1;
    for (int i = 0; i < 7; ++i) c7 *= c;
    i128 R = 27 * c7;
    double scale = std::cbrt(std::fabs(static_cast<double>(R)) / tag);
    long bmax = static_cast<long>(std::floor(std::cbrt(static_cast<double>(R) / tag))) + 2;
    while (R - static_cast<i128>(tag) * bmax * bmax * bmax < 0) --bmax;
    long bmin = -static_cast<long>(opt.neg_factor * scale) - opt.neg_slack;
    for (long b = bmin; b <= bmax; ++b) {
      i128 A = R - static_cast<i128>(tag) * b * b * b;
      i128 r;
      if (!square_root_128(A, r)) continue;
      Int a = to_int(r), B(b), C(c);
      Int g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), B.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), C.get_mpz_t());
      if (g != 1) continue;
      out.push_back(make_triple(a, B, C, tag));
      if (a != 0) out.push_back(make_triple(-a, B, C, tag));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<StarTriple> search_star_solutions(int tag, long c_max, const SearchOptions& opt) {
  auto all = search_primitive_solutions(tag, c_max, opt);
  std::vector<StarTriple> out;
  for (auto& s : all)
    if (s.star) out.push_back(s);
  return out;
}

std::vector<std::pair<Int, Int>> thue_box_search(const BinaryForm& form, const Int& target, long box) {
  if (box < 1) throw std::invalid_argument("box must be positive");
  std::vector<long> c;
  for (auto& v : form.coeffs) {
    if (!v.fits_slong_p()) throw std::invalid_argument("coefficients too large");
    c.push_back(v.get_si());
  }
  std::vector<std::pair<Int, Int>> out;
  if (!target.fits_slong_p()) return out;
  i128 T = target.get_si();
  int d = form.degree;
  for (long y = -box; y <= box; ++y)
    for (long x = -box; x <= box; ++x) {
      if (std::gcd(x, y) != 1) continue;
      i128 v = 0;
      for (int i = 0; i <= d; ++i) {
        i128 term = c[i];
        for (int e = 0; e < d - i; ++e) term *= x;
        for (int e = 0; e < i; ++e) term *= y;
        v += term;
      }
      if (v != T) continue;
      // even degree: (x, y) and (-x, -y) both solve; keep y > 0 or y = 0, x > 0
      if (d % 2 == 0 && (y < 0 || (y == 0 && x < 0))) continue;
      out.emplace_back(Int(x), Int(y));
    }
  return out;
}

namespace {
Classification classify(const JMap& jm, const BinaryForm& form, const std::vector<long>& ks, long box,
                        bool y_seventh_power) {
  Classification cl;
  std::map<Rat, JCandidate> seen;
  for (long k : ks)
    for (auto& [x, y] : thue_box_search(form, Int(k), box)) {
      if (y_seventh_power && !nth_root_exact(y, 7)) continue;
      auto j = eval_j(jm, ProjPointQ(x, y));
      if (j.infinite) continue;
      if (seen.count(j.value)) continue;
      seen[j.value] = JCandidate{j.value, x, y, Int(k), is_rational_cm_j(j.value)};
    }
  for (auto& [j, c] : seen) {
    cl.candidates.push_back(c);
    if (c.cm)
      cl.cm_js.push_back(j.get_num());
    else
      cl.non_cm_js.push_back(j);
  }
  std::sort(cl.cm_js.begin(), cl.cm_js.end());
  return cl;
}
}  // namespace

Classification classify_cns49(long box) { return classify(JMap::nonsplit(), f_ns(), {1, -1, 8, -8}, box, false); }
Classification classify_ns_sharp(long box) {
  return classify(JMap::nonsplit(), f_ns(), {7, -7, 56, -56}, box, false);
}
Classification classify_sp_sharp(long box) { return classify(JMap::split(), f_sp(), {1, -1, 7, -7}, box, true); }

double abc_quality(const Int& u, const Int& v, const Int& w) {
  if (!(u + v == w || u + w == v || v + w == u)) throw std::invalid_argument("not an additive triple");
  if (u == 0 || v == 0 || w == 0) throw std::invalid_argument("zero entry");
  Int g;
  mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
  Int U = abs(u) / g, V = abs(v) / g, W = abs(w) / g;
  Int mx = std::max({U, V, W});
  Int rad = radical(U * V * W);
  auto lg = [](const Int& n) {
    long e;
    double m = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log(m) + e * std::log(2.0);
  };
  if (rad == 1) throw std::invalid_argument("radical is 1");
  return lg(mx) / lg(rad);
}

}  // namespace f237
