#include <random>

#include "doctest.h"
#include "f237/quartic_jacobian.hpp"

using namespace f237;

namespace {
SmoothQuarticFp curve(int i, long p) { return SmoothQuarticFp(reference_quartic(i), p, known_points(i)[0]); }

DivisorClass random_class(const SmoothQuarticFp& C, const std::vector<SmoothQuarticFp::Effective3>& E,
                          std::mt19937_64& rng) {
  std::uniform_int_distribution<size_t> pick(0, E.size() - 1);
  return C.from_effective3(E[pick(rng)].V3);
}
}  // namespace

TEST_CASE("zeta: known L(1) values and Weil checks") {
  const long L1[4][3] = {{40, 156, 743}, {28, 126, 928}, {40, 126, 3277}, {40, 156, 3277}};
  const long ps[3] = {3, 5, 11};
  for (int i = 1; i <= 4; ++i)
    for (int j = 0; j < 3; ++j) {
      auto C = curve(i, ps[j]);
      auto L = C.zeta();
      CHECK(L.functional_equation());
      CHECK(L.weil_bound_numeric());
      CHECK(L.at_one() == L1[i - 1][j]);
      CHECK(L.c[1] == Int(static_cast<long>(C.rational_points().size())) - ps[j] - 1);
    }
  CHECK_THROWS_WITH(curve(1, 7), "bad prime");
  CHECK_THROWS_WITH(curve(1, 2), "bad prime");
}

TEST_CASE("Pic0 at p = 3 by exhaustion matches L(1)") {
  auto C = curve(2, 3);
  auto all = enumerate_jacobian(C);
  CHECK(all.size() == 28);
  // Riemann-Roch fibre count: special classes carry a pencil
  long n1 = static_cast<long>(C.rational_points().size());
  CHECK(static_cast<long>(C.effective_degree3().size()) == 28 + 3 * n1);
  long special = 0;
  for (auto& x : all) special += x.special();
  CHECK(special == n1);
}

TEST_CASE("group axioms on random classes") {
  std::mt19937_64 rng(20260);
  for (int i = 1; i <= 4; ++i)
    for (long p : {3L, 5L}) {
      auto C = curve(i, p);
      auto E = C.effective_degree3();
      auto O = C.zero();
      for (int t = 0; t < 60; ++t) {
        auto a = random_class(C, E, rng), b = random_class(C, E, rng), c = random_class(C, E, rng);
        CHECK(C.add(a, b) == C.add(b, a));
        CHECK(C.add(C.add(a, b), c) == C.add(a, C.add(b, c)));
        CHECK(C.add(a, O) == a);
        CHECK(C.add(a, C.neg(a)) == O);
        CHECK(C.mul(C.group_order(), a) == O);
      }
    }
}

TEST_CASE("Abel-Jacobi and sections") {
  for (long p : {3L, 5L, 11L}) {
    auto C = curve(3, p);
    CHECK(C.abel_jacobi(known_points(3)[0]) == C.zero());
    CHECK(C.neg(C.zero()) == C.zero());
    // the two quadratic factors of F(x, y, 0) add up to the section z = 0
    TernaryForm z(1), q1(2), q2(2);
    z.add(0, 0, 1, 1);
    q1.add(2, 0, 0, 1);
    q1.add(1, 1, 0, -1);
    q1.add(0, 2, 0, 2);
    q2.add(2, 0, 0, 1);
    q2.add(1, 1, 0, 4);
    q2.add(0, 2, 0, 2);
    auto a = C.class_from_ideal({z, q1}, 2), b = C.class_from_ideal({z, q2}, 2);
    CHECK(C.add(a, b) == C.class_from_section(z));
    // every line through two rational points cuts a divisor whose class is the hyperplane class
    auto H = C.class_from_section(z);
    auto& pts = C.rational_points();
    for (size_t u = 0; u + 1 < pts.size() && u < 4; ++u) {
      auto P = pts[u], R = pts[u + 1];
      TernaryForm l(1);
      l.add(1, 0, 0, (P[1] * R[2] - P[2] * R[1]) % p);
      l.add(0, 1, 0, (P[2] * R[0] - P[0] * R[2]) % p);
      l.add(0, 0, 1, (P[0] * R[1] - P[1] * R[0]) % p);
      CHECK(C.class_from_section(l) == H);
    }
  }
}

TEST_CASE("D4 by ideal agrees with D4 by points") {
  for (long p : {3L, 5L}) {
    auto C = curve(3, p);
    GF G(p, 2);
    int hits = 0;
    for (auto& T : C.closed_points(2)) {
      auto x = G.from_coords(T.coords[0]), y = G.from_coords(T.coords[1]), zz = G.from_coords(T.coords[2]);
      if (!G.is_zero(zz)) continue;
      auto q = G.add(G.sub(G.mul(x, x), G.mul(x, y)), G.mul(G.from_int(2), G.mul(y, y)));
      if (!G.is_zero(q)) continue;
      CHECK(C.class_of_closed_point(T) == xe3_d4(C));
      ++hits;
    }
    CHECK(hits == 1);
  }
}

TEST_CASE("relation among D1, D3, D4") {
  for (long p : {3L, 5L, 11L}) {
    auto r = check_d4_relation(p);
    // the stated sign does not hold; its negation does
    CHECK_FALSE(r.holds);
    CHECK(r.negated_holds);
  }
}

TEST_CASE("subgroup enumeration") {
  auto C = curve(3, 3);
  auto T0 = subgroup_enumerate(C, {});
  CHECK(T0.order() == 1);
  auto gens = xe3_generators(C);
  auto T = subgroup_enumerate(C, gens);
  CHECK(C.group_order() % static_cast<long>(T.order()) == 0);
  CHECK(T.kernel.index() == static_cast<long>(T.order()));
  for (auto& x : T.elements) {
    auto& c = T.coeffs.at(x.key);
    DivisorClass s = C.zero();
    for (size_t i = 0; i < gens.size(); ++i) s = C.add(s, C.mul(c[i], gens[i]));
    CHECK(s == x);
  }
  CHECK_THROWS(subgroup_enumerate(C, gens, 3));
}

TEST_CASE("ell-divisibility against brute force") {
  for (int i : {1, 2}) {
    auto C = curve(i, 3);
    auto all = enumerate_jacobian(C);
    for (long ell : {2L, 5L, 7L}) {
      std::unordered_map<std::vector<std::uint32_t>, bool, KeyHash> img;
      for (auto& x : all) img[C.mul(Int(ell), x).key] = true;
      for (auto& y : all) {
        bool brute = img.count(y.key) > 0;
        CHECK(ell_divisibility(C, y, ell) == (brute ? Divisibility::Divisible : Divisibility::NotDivisible));
      }
    }
  }
}

TEST_CASE("7 divides #J(F_p) on the third model for small p = +-1 mod 7") {
  for (long p : {13L, 29L, 41L, 43L}) CHECK(curve(3, p).group_order() % 7 == 0);
}
