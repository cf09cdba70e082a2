#include <random>

#include "doctest.h"
#include "f237/exact_arith.hpp"

using namespace f237;

namespace {
BinaryForm bf(std::initializer_list<long> c) { return BinaryForm::from_ints(c); }

BinaryForm g_ns() {
  return bf({4, 0}) * bf({1, 0, 7}) * bf({1, -7, 14}) * bf({5, -14, -7});
}
BinaryForm f_ns() { return bf({1, -7, 7, 7}); }
}  // namespace

TEST_CASE("resultant of the non-split forms") {
  UPoly r = resultant_in_x(f_ns(), g_ns());
  // homogeneous of degree 3*7 in y
  REQUIRE(r.degree() == 21);
  for (int i = 0; i < 21; ++i) CHECK(r.c[i] == 0);
  // Sylvester determinant with f first equals prod g(alpha) > 0; swapping the
  // arguments flips the sign since 3*7 is odd
  CHECK(r.c[21] == ipow(2, 21) * ipow(7, 7));
  UPoly rs = resultant_in_x(g_ns(), f_ns());
  CHECK(rs.c[21] == -ipow(2, 21) * ipow(7, 7));
}

TEST_CASE("resultant of x and y is y") {
  UPoly r = resultant_in_x(bf({1, 0}), bf({0, 1}));
  CHECK(r == UPoly::monomial(1, 1));
}

TEST_CASE("resultant of the split forms is 7^7 y^27 up to sign") {
  BinaryForm g = bf({1, 1}) * bf({1, -5, 1}) * bf({1, -5, 8}) * bf({1, -5, 8, -7, 7});
  UPoly r = resultant_in_x(bf({1, -4, 3, 1}), g);
  REQUIRE(r.degree() == 27);
  CHECK(abs(r.c[27]) == ipow(7, 7));
}

TEST_CASE("resultant rejects zero forms") {
  CHECK_THROWS_WITH(resultant_in_x(bf({0, 0}), bf({1, 0})), "zero input");
}

TEST_CASE("resultant is multiplicative") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int trial = 0; trial < 25; ++trial) {
    auto rnd = [&](int deg) {
      std::vector<Int> c(deg + 1);
      for (auto& x : c) x = d(rng);
      if (c[0] == 0) c[0] = 1;
      return BinaryForm(deg, c);
    };
    BinaryForm f = rnd(2), h = rnd(1), g = rnd(3);
    CHECK(resultant_in_x(f * h, g) == resultant_in_x(f, g) * resultant_in_x(h, g));
  }
}

TEST_CASE("form homogeneity") {
  BinaryForm f = g_ns();
  for (long lam = -3; lam <= 3; ++lam)
    for (long x = -4; x <= 4; ++x)
      for (long y = -4; y <= 4; ++y)
        CHECK(f.eval(lam * x, lam * y) == ipow(lam, 7) * f.eval(x, y));
}

TEST_CASE("cubic discriminants") {
  CHECK(discriminant_cubic(f_ns().dehomogenize()) == 3136);
  CHECK(discriminant_cubic(UPoly({0, -1, 0, 1})) == 4);
  CHECK(discriminant_cubic(bf({1, -2, -1, 1}).dehomogenize()) == 49);
  CHECK(discriminant_cubic(bf({1, -4, 3, 1}).dehomogenize()) == 49);
  CHECK_THROWS(discriminant_cubic(UPoly({1, 1})));
}

TEST_CASE("nth_root_exact") {
  CHECK(nth_root_exact(128, 7) == Int(2));
  CHECK(nth_root_exact(-1, 7) == Int(-1));
  CHECK(!nth_root_exact(10, 3).has_value());
  CHECK(nth_root_exact(49, 2) == Int(7));
  for (long n = -300; n <= 300; ++n)
    for (unsigned e = 1; e <= 5; ++e) {
      if (e % 2 == 0 && n < 0) continue;
      auto r = nth_root_exact(n, e);
      if (r) CHECK(ipow(*r, e) == n);
    }
}

TEST_CASE("roots over finite fields") {
  GF F7(7, 1);
  auto r = roots_over_gf(F7, {F7.from_int(-1), F7.zero(), F7.one()});
  REQUIRE(r.size() == 2);
  CHECK(F7.coords(r[0].value)[0] == 1);
  CHECK(F7.coords(r[1].value)[0] == 6);
  CHECK(roots_over_gf(F7, {F7.from_int(-3), F7.zero(), F7.one()}).empty());

  GF F9(3, 2);
  auto r9 = roots_over_gf(F9, {F9.zero(), F9.from_int(-1), F9.zero(), F9.one()});
  REQUIRE(r9.size() == 3);
  for (auto& x : r9) {
    CHECK(F9.in_prime_field(x.value));
    CHECK(x.multiplicity == 1);
  }
  // brute force agreement
  int bf_count = 0;
  for (auto x : F9.elements())
    if (F9.is_zero(F9.sub(F9.pow(x, 3), x))) ++bf_count;
  CHECK(bf_count == 3);

  auto rm = roots_over_gf(F7, gf_mul(F7, {F7.from_int(-2), F7.one()}, {F7.from_int(-2), F7.one()}));
  REQUIRE(rm.size() == 1);
  CHECK(rm[0].multiplicity == 2);
  CHECK_THROWS(roots_over_gf(F7, {F7.zero()}));
}

TEST_CASE("finite field axioms and Frobenius") {
  for (auto [p, k] : std::vector<std::pair<long, int>>{{2, 3}, {3, 4}, {5, 2}, {7, 3}, {3, 6}}) {
    GF F(p, k);
    std::mt19937 rng(p * 10 + k);
    auto els = F.elements();
    std::uniform_int_distribution<size_t> pick(0, els.size() - 1);
    for (int t = 0; t < 300; ++t) {
      auto a = els[pick(rng)], b = els[pick(rng)], c = els[pick(rng)];
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)) == F.zero());
      if (!F.is_zero(a)) CHECK(F.mul(a, F.inv(a)) == F.one());
      CHECK(F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b)));
    }
    long fixed = 0;
    for (auto a : els)
      if (F.frob(a) == a) ++fixed;
    CHECK(fixed == p);
  }
}

TEST_CASE("distinct root counting matches brute force") {
  GF F(5, 3);
  std::mt19937 rng(3);
  auto els = F.elements();
  std::uniform_int_distribution<size_t> pick(0, els.size() - 1);
  for (int t = 0; t < 40; ++t) {
    GFPoly f(5);
    for (auto& c : f) c = els[pick(rng)];
    f[4] = F.one();
    int bf = 0;
    for (auto x : els)
      if (F.is_zero(gf_eval(F, f, x))) ++bf;
    CHECK(count_distinct_roots(F, f) == bf);
  }
}

TEST_CASE("Macaulay resultant basics") {
  TernaryForm x(1), y(1), z(1);
  x.add(1, 0, 0, 1);
  y.add(0, 1, 0, 1);
  z.add(0, 0, 1, 1);
  CHECK(macaulay_resultant(x, y, z) == 1);
  // cubes of coordinates
  TernaryForm a(3), b(3), c(3);
  a.add(3, 0, 0, 1);
  b.add(0, 3, 0, 1);
  c.add(0, 0, 3, 1);
  CHECK(macaulay_resultant(a, b, c) == 1);
  // common zero [1:1:1]
  TernaryForm u(3), v(3), w(3);
  u.add(3, 0, 0, 1);
  u.add(0, 3, 0, -1);
  v.add(0, 3, 0, 1);
  v.add(0, 0, 3, -1);
  w.add(1, 1, 1, 1);
  w.add(3, 0, 0, -1);
  CHECK(macaulay_resultant(u, v, w) == 0);
}
