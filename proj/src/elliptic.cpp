#include "f237/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "f237/descent_to_fermat.hpp"

namespace f237 {

EllCurveQ::EllCurveQ(Rat a1_, Rat a2_, Rat a3_, Rat a4_, Rat a6_)
    : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), a4(std::move(a4_)), a6(std::move(a6_)) {
  for (Rat* r : {&a1, &a2, &a3, &a4, &a6}) r->canonicalize();
}

bool EllCurveQ::integral() const {
  for (const Rat* r : {&a1, &a2, &a3, &a4, &a6})
    if (r->get_den() != 1) return false;
  return true;
}

std::string str(const EllCurveQ& E) {
  std::ostringstream o;
  o << "[" << str(E.a1) << "," << str(E.a2) << "," << str(E.a3) << "," << str(E.a4) << "," << str(E.a6) << "]";
  return o.str();
}

Invariants invariants(const EllCurveQ& E) {
  Invariants I;
  I.b2 = E.a1 * E.a1 + 4 * E.a2;
  I.b4 = 2 * E.a4 + E.a1 * E.a3;
  I.b6 = E.a3 * E.a3 + 4 * E.a6;
  I.b8 = E.a1 * E.a1 * E.a6 + 4 * E.a2 * E.a6 - E.a1 * E.a3 * E.a4 + E.a2 * E.a3 * E.a3 - E.a4 * E.a4;
  I.c4 = I.b2 * I.b2 - 24 * I.b4;
  I.c6 = -I.b2 * I.b2 * I.b2 + 36 * I.b2 * I.b4 - 216 * I.b6;
  I.disc = -I.b2 * I.b2 * I.b8 - 8 * I.b4 * I.b4 * I.b4 - 27 * I.b6 * I.b6 + 9 * I.b2 * I.b4 * I.b6;
  if (I.disc == 0) throw std::invalid_argument("singular model");
  if (I.c4 * I.c4 * I.c4 - I.c6 * I.c6 != 1728 * I.disc) throw std::logic_error("invariant identity failed");
  I.j = I.c4 * I.c4 * I.c4 / I.disc;
  return I;
}

EllCurveQ curve_E1() { return EllCurveQ(0, -1, 0, -2, 1); }
EllCurveQ curve_E2() { return EllCurveQ(0, 0, 0, -7, 7); }
EllCurveQ curve_E3() { return EllCurveQ(0, -1, 0, -16, 29); }

EllCurveQ short_minimal_model(const EllCurveQ& E) {
  Invariants I = invariants(E);
  // y^2 = x^3 - 27 c4 x - 54 c6, then remove u^4, u^6 factors
  Rat A = -27 * I.c4, B = -54 * I.c6;
  // clear denominators
  Int den = 1;
  for (const Rat* r : {&A, &B}) {
    Int d = r->get_den();
    Int g;
    mpz_lcm(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    den = g;
  }
  A *= Rat(ipow(den, 4));
  B *= Rat(ipow(den, 6));
  Int An = A.get_num(), Bn = B.get_num();
  // candidate primes divide both (or the single nonzero one)
  Int probe = An == 0 ? Bn : Bn == 0 ? An : Int(0);
  std::vector<std::pair<Int, int>> fac;
  if (probe != 0) {
    fac = factor_small(abs(probe));
  } else {
    Int h;
    mpz_gcd(h.get_mpz_t(), An.get_mpz_t(), Bn.get_mpz_t());
    fac = factor_small(h);
  }
  for (auto& pe : fac) {
    const Int& p = pe.first;
    Int p4 = ipow(p, 4), p6 = ipow(p, 6);
    while (An % p4 == 0 && Bn % p6 == 0) {
      An /= p4;
      Bn /= p6;
    }
  }
  return EllCurveQ::short_form(Rat(An), Rat(Bn));
}

EllCurveQ velu_3_isogeny(const EllCurveQ& S, const Rat& x0) {
  if (S.a1 != 0 || S.a2 != 0 || S.a3 != 0) throw std::invalid_argument("short model expected");
  const Rat &A = S.a4, &B = S.a6;
  // x0 must be a root of the 3-division polynomial 3x^4 + 6Ax^2 + 12Bx - A^2
  if (3 * x0 * x0 * x0 * x0 + 6 * A * x0 * x0 + 12 * B * x0 - A * A != 0)
    throw std::invalid_argument("not the x-coordinate of a 3-torsion point");
  Rat gx = 3 * x0 * x0 + A;
  Rat v = 2 * gx;
  Rat u = 4 * (x0 * x0 * x0 + A * x0 + B);
  Rat w = u + x0 * v;
  return EllCurveQ::short_form(A - 5 * v, B - 7 * w);
}

EllCurveQ curve_E4() {
  EllCurveQ S = short_minimal_model(curve_E1());
  // rational roots of 3x^4 + 6Ax^2 + 12Bx - A^2 among divisors of A^2 / 3
  const Int A = S.a4.get_num(), B = S.a6.get_num();
  Int c0 = A * A;
  std::vector<Int> divs{1};
  for (auto& [p, e] : factor_small(c0)) {
    size_t n = divs.size();
    Int pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t k = 0; k < n; ++k) divs.push_back(divs[k] * pk);
    }
  }
  for (auto& d : divs)
    for (int s : {1, -1})
      for (int q : {1, 3}) {
        Rat x0(s * d, q);
        x0.canonicalize();
        if (3 * x0 * x0 * x0 * x0 + 6 * Rat(A) * x0 * x0 + 12 * Rat(B) * x0 - Rat(A * A) == 0)
          return minimal_at(minimal_at(short_minimal_model(velu_3_isogeny(S, x0)), 2), 3);
      }
  throw std::logic_error("no rational 3-torsion x-coordinate");
}

EllCurveQ build_frey_unchecked(const Int& a, const Int& b, int tag) {
  if (tag == 28) return EllCurveQ::short_form(Rat(189 * b), Rat(189 * a));
  if (tag == 196) return EllCurveQ::short_form(Rat(1323 * b), Rat(1323 * a));
  throw std::invalid_argument("tag must be 28 or 196");
}

EllCurveQ build_frey(const StarTriple& t) {
  if (!t.star) throw std::invalid_argument("triple does not satisfy the star condition");
  return build_frey_unchecked(t.a, t.b, t.tag);
}

Rat frey_j(const Int& b, const Int& c, int tag) {
  Rat j(256 * (tag == 28 ? 7 : 49) * b * b * b, ipow(c, 7));
  j.canonicalize();
  return j;
}

EllCurveQ twist_minus3_minimal(const Int& a, const Int& b, int tag) {
  if (tag != 28 && tag != 196) throw std::invalid_argument("tag must be 28 or 196");
  Int m = tag == 28 ? 7 : 49;
  if (a % 27 == 0) {
    if ((m * b) % 3 != 0 || (m * a) % 27 != 0) throw std::logic_error("3-adic congruences failed");
    return EllCurveQ(0, 0, 0, Rat(m * b / 3), Rat(m * a / 27));
  }
  if (a % 3 == 0) throw std::invalid_argument("v3(a) must be 0 or at least 3");
  // x -> 9w - 3 a0
  for (int a0 : {1, -1}) {
    Int mid = 1 + m * b, cst = -a0 - 3 * m * a0 * b + m * a;
    if (mid % 3 != 0 || cst % 27 != 0) continue;
    EllCurveQ E(0, Rat(-a0), 0, Rat(mid / 3), Rat(cst / 27));
    if (val(invariants(E).disc, 3) != 0) throw std::logic_error("model not good at 3");
    return E;
  }
  throw std::logic_error("no integral shift; the 3-adic congruences failed");
}

EllCurveQ quadratic_twist(const EllCurveQ& E, const Int& d) {
  Invariants I = invariants(E);
  return short_minimal_model(EllCurveQ::short_form(-27 * I.c4 * d * d, -54 * I.c6 * d * d * d));
}

std::string str(Reduction r) {
  switch (r) {
    case Reduction::Good: return "good";
    case Reduction::Multiplicative: return "multiplicative";
    case Reduction::Additive: return "additive";
  }
  return "?";
}

namespace {
// p-minimal (c4, c6, disc) for p >= 5
void p_minimal(const EllCurveQ& E, long p, Int& c4, Int& c6, Int& disc) {
  if (!E.integral()) throw std::invalid_argument("integral model expected");
  Invariants I = invariants(E);
  c4 = I.c4.get_num();
  c6 = I.c6.get_num();
  disc = I.disc.get_num();
  Int P(p);
  Int p4 = ipow(P, 4), p6 = ipow(P, 6), p12 = ipow(P, 12);
  while (c4 % p4 == 0 && c6 % p6 == 0 && disc % p12 == 0) {
    c4 /= p4;
    c6 /= p6;
    disc /= p12;
  }
}
}  // namespace

ReductionReport reduction_type(const EllCurveQ& E, long p) {
  if (p < 5 || !is_prime_small(p)) throw std::invalid_argument("p must be a prime >= 5");
  Int c4, c6, disc;
  p_minimal(E, p, c4, c6, disc);
  ReductionReport r;
  r.p = p;
  r.v_disc_min = val(disc, p);
  if (r.v_disc_min == 0)
    r.type = Reduction::Good;
  else if (c4 % p != 0)
    r.type = Reduction::Multiplicative;
  else
    r.type = Reduction::Additive;
  return r;
}

EllCurveQ change_coordinates(const EllCurveQ& E, const Rat& u, const Rat& r, const Rat& s, const Rat& t) {
  Rat a1 = (E.a1 + 2 * s) / u;
  Rat a2 = (E.a2 - s * E.a1 + 3 * r - s * s) / (u * u);
  Rat a3 = (E.a3 + r * E.a1 + 2 * t) / (u * u * u);
  Rat a4 = (E.a4 - s * E.a3 + 2 * r * E.a2 - (t + r * s) * E.a1 + 3 * r * r - 2 * s * t) / (u * u * u * u);
  Rat a6 = (E.a6 + r * E.a4 + r * r * E.a2 + r * r * r - t * E.a3 - t * t - r * t * E.a1) / (u * u * u * u * u * u);
  return EllCurveQ(a1, a2, a3, a4, a6);
}

EllCurveQ minimal_at(const EllCurveQ& E, long p) {
  if (!E.integral()) throw std::invalid_argument("integral model expected");
  EllCurveQ cur = E;
  while (val(invariants(cur).disc, p) >= 12) {
    bool found = false;
    // an integral model with discriminant divided by p^12 exists iff some (r, s, t) below works
    for (long r = 0; r < p * p && !found; ++r)
      for (long s = 0; s < p && !found; ++s)
        for (long t = 0; t < p * p * p && !found; ++t) {
          EllCurveQ n = change_coordinates(cur, Rat(p), Rat(r), Rat(s), Rat(t));
          if (n.integral()) {
            cur = n;
            found = true;
          }
        }
    if (!found) break;
  }
  return cur;
}

long count_points(const EllCurveQ& E, long p) {
  if (!E.integral()) throw std::invalid_argument("integral model expected");
  if (p > 100000) throw std::invalid_argument("prime too large for naive counting");
  long a1 = mod_of(E.a1.get_num(), p), a2 = mod_of(E.a2.get_num(), p), a3 = mod_of(E.a3.get_num(), p),
       a4 = mod_of(E.a4.get_num(), p), a6 = mod_of(E.a6.get_num(), p);
  long n = 1;
  if (p == 2) {
    for (long x = 0; x < 2; ++x)
      for (long y = 0; y < 2; ++y)
        if ((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % 2 == 0) ++n;
    return n;
  }
  for (long x = 0; x < p; ++x) {
    long rhs = ((x * x % p * x + a2 * x % p * x + a4 * x + a6) % p + p) % p;
    long h = (a1 * x + a3) % p;
    long D = (h * h + 4 * rhs) % p;
    if (D == 0)
      n += 1;
    else if (powmod(D, (p - 1) / 2, p) == 1)
      n += 2;
  }
  return n;
}

long ap_trace(const EllCurveQ& E, long p) {
  if (!is_prime_small(p)) throw std::invalid_argument("p must be prime");
  Invariants I = invariants(E);
  long a;
  if (E.integral() && mod_of(I.disc.get_num(), p) != 0 && I.disc.get_den() == 1) {
    a = p + 1 - count_points(E, p);
  } else if (p < 5) {
    if (!E.integral()) throw std::invalid_argument("integral model expected at 2 and 3");
    EllCurveQ M = minimal_at(E, p);
    if (mod_of(invariants(M).disc.get_num(), p) == 0) throw std::invalid_argument("bad reduction at p");
    a = p + 1 - count_points(M, p);
  } else {
    Int c4, c6, disc;
    EllCurveQ S = short_minimal_model(E);
    p_minimal(S, p, c4, c6, disc);
    if (disc % p == 0) throw std::invalid_argument("bad reduction at p");
    // y^2 = x^3 - 27 c4 x - 54 c6 is good at p >= 5
    a = p + 1 - count_points(EllCurveQ::short_form(Rat(-27 * c4), Rat(-54 * c6)), p);
  }
  if (static_cast<double>(a) * a > 4.0 * p) throw std::logic_error("Hasse bound violated");
  return a;
}

InertiaPair kraus_inertia_from_valuation(int v) {
  if (v != 2 && v != 4 && v != 8 && v != 10) throw std::invalid_argument("case not covered");
  int alpha = v / 2;  // (7 - 1) v / 12
  return {alpha, 1 - alpha};
}

InertiaPair kraus_inertia(const EllCurveQ& E) { return kraus_inertia_from_valuation(reduction_type(E, 7).v_disc_min); }

std::vector<int> exponent_set_mod6(const InertiaPair& p) {
  std::vector<int> s{p.alpha_mod6(), p.beta_mod6()};
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool exponent_sets_disjoint(const InertiaPair& a, const InertiaPair& b) {
  for (int x : exponent_set_mod6(a))
    for (int y : exponent_set_mod6(b))
      if (x == y) return false;
  return true;
}

int kronecker(long a, long n) {
  if (n <= 0) throw std::invalid_argument("positive modulus expected");
  return mpz_kronecker_si(Int(a).get_mpz_t(), n);
}

CongruenceResult mod7_congruent(const EllCurveQ& E, const EllCurveQ& Ep, long bound, std::optional<long> twist_disc) {
  CongruenceResult r;
  for (long l : primes_up_to(bound)) {
    if (l == 2 || l == 7) continue;
    if (twist_disc && *twist_disc % l == 0) {
      r.skipped.push_back(l);
      continue;
    }
    long a, b;
    try {
      a = ap_trace(E, l);
      b = ap_trace(Ep, l);
    } catch (const std::invalid_argument&) {
      r.skipped.push_back(l);
      continue;
    }
    int chi = twist_disc ? mpz_kronecker_si(Int(*twist_disc).get_mpz_t(), l) : 1;
    r.tested.push_back(l);
    if (((a - chi * b) % 7 + 7) % 7 != 0 && r.congruent) {
      r.congruent = false;
      r.first_failure = l;
    }
  }
  return r;
}

}  // namespace f237
