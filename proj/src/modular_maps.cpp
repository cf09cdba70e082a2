#include "f237/modular_maps.hpp"

#include <stdexcept>

namespace f237 {

std::string str(const ExtRat& v) { return v.infinite ? "inf" : str(v.value); }

ProjPointQ::ProjPointQ(Int a, Int b) : x(std::move(a)), y(std::move(b)) {
  if (x == 0 && y == 0) throw std::invalid_argument("(0, 0) is not a projective point");
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  x /= g;
  y /= g;
  if (y < 0 || (y == 0 && x < 0)) {
    x = -x;
    y = -y;
  }
}

namespace {
BinaryForm bf(std::initializer_list<long> c) { return BinaryForm::from_ints(c); }
BinaryForm pw(const BinaryForm& f, int e) {
  BinaryForm r = bf({1});
  for (int i = 0; i < e; ++i) r = r * f;
  return r;
}
}  // namespace

BinaryForm f_ns() { return bf({1, -7, 7, 7}); }
BinaryForm g_ns() { return bf({4, 0}) * bf({1, 0, 7}) * bf({1, -7, 14}) * bf({5, -14, -7}); }
BinaryForm f_sp() { return bf({1, -4, 3, 1}); }
BinaryForm g_sp() { return bf({1, 1}) * bf({1, -5, 1}) * bf({1, -5, 8}) * bf({1, -5, 8, -7, 7}); }

JMap JMap::borel() {
  JMap m;
  m.label = JLabel::Borel;
  m.G = bf({1, 245, 2401});
  m.F = bf({1, 0});
  m.num = pw(m.G, 3) * bf({1, 13, 49});
  m.den = pw(m.F, 7) * bf({0, 1});
  return m;
}

JMap JMap::split() {
  JMap m;
  m.label = JLabel::Split;
  m.G = g_sp();
  m.F = f_sp();
  m.num = bf({1, 0}) * pw(m.G, 3);
  m.den = pw(bf({0, 1}) * m.F, 7);
  return m;
}

JMap JMap::nonsplit() {
  JMap m;
  m.label = JLabel::NonSplit;
  m.G = g_ns();
  m.F = f_ns();
  m.num = pw(m.G, 3);
  m.den = pw(m.F, 7);
  return m;
}

ExtRat eval_j(const JMap& m, const ProjPointQ& t) {
  Int d = m.den.eval(t.x, t.y);
  if (d == 0) return ExtRat::inf();
  Rat q(m.num.eval(t.x, t.y), d);
  q.canonicalize();
  return ExtRat::of(q);
}

std::optional<PowerDatum> extract_power_datum(const Int& x, const Int& y, PowerVariant v) {
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  if (g != 1) throw std::invalid_argument("inputs share a factor");
  BinaryForm f = v == PowerVariant::SpSharp ? f_sp() : f_ns();
  std::vector<long> ks = v == PowerVariant::Ns ? std::vector<long>{1, 8}
                         : v == PowerVariant::NsSharp ? std::vector<long>{7, 56}
                                                      : std::vector<long>{1, 7};
  PowerDatum d;
  d.value = f.eval(x, y);
  int hits = 0;
  for (long k : ks) {
    if (d.value % k != 0) continue;
    auto r = nth_root_exact(d.value / k, 7);
    if (!r) continue;
    ++hits;
    d.k = k;
    d.z = *r;
  }
  if (hits > 1) throw std::logic_error("ambiguous power datum");
  if (hits == 0) return std::nullopt;
  if (v == PowerVariant::SpSharp) {
    auto w = nth_root_exact(y, 7);
    d.y_is_seventh_power = w.has_value();
    if (w) d.w = *w;
  }
  return d;
}

bool denominator_is_power(const Rat& j, unsigned e) {
  Rat q = j;
  q.canonicalize();
  return nth_root_exact(q.get_den(), e).has_value();
}

Hasse hasse_class(int j_residue, long p) {
  if (p <= 3 || !is_prime_small(p)) throw std::invalid_argument("p must be a prime > 3");
  if (j_residue == 0) return p % 3 == 2 ? Hasse::Supersingular : Hasse::Ordinary;
  if (j_residue == 1728) return p % 4 == 3 ? Hasse::Supersingular : Hasse::Ordinary;
  throw std::invalid_argument("j residue must be 0 or 1728");
}

Hasse hasse_class_by_count(int j_residue, long p) {
  if (j_residue != 0 && j_residue != 1728) throw std::invalid_argument("j residue must be 0 or 1728");
  long n = 1;  // point at infinity
  for (long x = 0; x < p; ++x) {
    long r = j_residue == 0 ? (x * x % p * x + 1) % p : (x * x % p * x + x) % p;
    if (r == 0)
      n += 1;
    else if (powmod(r, (p - 1) / 2, p) == 1)
      n += 2;
  }
  return n == p + 1 ? Hasse::Supersingular : Hasse::Ordinary;
}

const std::vector<Int>& rational_cm_j_invariants() {
  static const std::vector<Int> js = {
      Int(0),
      Int(1728),
      Int(-3375),
      Int(8000),
      Int(-32768),
      Int(54000),
      Int(287496),
      Int(-884736),
      Int(-12288000),
      Int(16581375),
      Int(-884736000),
      Int("-147197952000"),
      Int("-262537412640768000"),
  };
  return js;
}

bool is_rational_cm_j(const Rat& j) {
  if (j.get_den() != 1) return false;
  for (auto& c : rational_cm_j_invariants())
    if (c == j.get_num()) return true;
  return false;
}

}  // namespace f237
