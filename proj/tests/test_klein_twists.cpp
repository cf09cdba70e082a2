#include "doctest.h"
#include "f237/klein_twists.hpp"

using namespace f237;

TEST_CASE("quartic model from (-7, 7)") {
  auto Q = build_XE7(-7, 7);
  TernaryForm G(4);
  G.add(4, 0, 0, -7);
  G.add(3, 0, 1, 49);
  G.add(2, 2, 0, 3);
  G.add(2, 0, 2, -147);
  G.add(1, 1, 2, -42);
  G.add(1, 0, 3, 245);
  G.add(0, 3, 1, 2);
  G.add(0, 2, 2, -21);
  G.add(0, 1, 3, 98);
  G.add(0, 0, 4, -196);
  CHECK(Q.F == G);
  CHECK_THROWS_WITH(build_XE7(-3, 2), "singular cubic");
  CHECK_THROWS(build_XE7_minus(0, 0));
}

TEST_CASE("[0:1:0] lies on every X_E(7)") {
  for (long A = -6; A <= 6; ++A)
    for (long B = -6; B <= 6; ++B) {
      if (4 * A * A * A + 27 * B * B == 0) continue;
      CHECK(on_curve(build_XE7(A, B), normalize_point(0, 1, 0)));
    }
}

TEST_CASE("on_curve examples") {
  CHECK(on_curve(reference_quartic(2), normalize_point(1, 1, 0)));
  CHECK(on_curve(reference_quartic(3), normalize_point(2, 0, 1)));
  CHECK(!on_curve(reference_quartic(1), normalize_point(1, 0, 0)));
  for (int i = 1; i <= 4; ++i)
    for (auto& P : known_points(i)) CHECK(on_curve(reference_quartic(i), P));
}

TEST_CASE("smoothness and reduction support") {
  for (int i = 1; i <= 4; ++i) {
    auto Q = reference_quartic(i);
    CHECK(is_smooth(Q));
    CHECK(bad_reduction_within(Q, {2, 7}));
    CHECK(!good_reduction_at(Q, 7));
  }
  CHECK(is_smooth(build_XE7_minus(-7, 7)));
  TernaryForm cone(4);  // x^4 - y^2 z^2 ... singular at [0:0:1]
  cone.add(4, 0, 0, 1);
  cone.add(0, 2, 2, 1);
  cone.add(2, 0, 2, -1);
  CHECK(!is_smooth(make_quartic("singular", cone)));
}

TEST_CASE("point counts agree with brute force and the Weil bound") {
  for (int i = 1; i <= 4; ++i) {
    auto Q = reference_quartic(i);
    for (long p : {3L, 5L, 11L, 13L, 17L}) {
      long n = count_points_gf(Q, p, 1);
      CHECK(n == count_points_bruteforce(Q, p));
      CHECK(n <= p * p + p + 1);
      CHECK((n - p - 1) * (n - p - 1) <= 36 * p);
    }
  }
  CHECK_THROWS_WITH(count_points_gf(reference_quartic(1), 7, 1), "bad prime");
}

TEST_CASE("extension counts against enumeration over F_9") {
  // independent count over F_9 using explicit field elements
  auto Q = reference_quartic(2);
  GF F(3, 2);
  std::vector<GF::E> els = F.elements();
  auto ev = [&](GF::E x, GF::E y, GF::E z) {
    GF::E s = F.zero();
    for (auto& [m, c] : Q.F.coeffs) {
      GF::E t = F.from_int(mod_of(c, 3));
      t = F.mul(t, F.pow(x, m[0]));
      t = F.mul(t, F.pow(y, m[1]));
      t = F.mul(t, F.pow(z, m[2]));
      s = F.add(s, t);
    }
    return F.is_zero(s);
  };
  long n = 0;
  for (auto x : els)
    for (auto y : els) n += ev(x, y, F.one());
  for (auto x : els) n += ev(x, F.one(), F.zero());
  n += ev(F.one(), F.zero(), F.zero());
  CHECK(count_points_gf(Q, 3, 2) == n);
}

TEST_CASE("X_E(7) from (-7,7) and the reference X_E2 have equal counts") {
  auto X = build_XE7(-7, 7), P = reference_quartic(2);
  for (long p : {3L, 5L, 11L, 13L})
    for (int k = 1; k <= 2; ++k) CHECK(count_points_gf(X, p, k) == count_points_gf(P, p, k));
}

TEST_CASE("twist models of the other reference curves") {
  // models from short Weierstrass equations, compared where the short model is good
  auto X1 = build_XE7(curve_E1()), X3 = build_XE7(curve_E3()), X1m = build_XE7_minus(curve_E1());
  for (long p : {5L, 11L, 13L, 17L}) {
    CHECK(count_points_gf(X1, p, 1) == count_points_gf(reference_quartic(1), p, 1));
    CHECK(count_points_gf(X3, p, 1) == count_points_gf(reference_quartic(3), p, 1));
    CHECK(count_points_gf(X1m, p, 1) == count_points_gf(reference_quartic(4), p, 1));
  }
}

TEST_CASE("2-adic solvability") {
  CHECK(qp_solvability(build_XE7_minus(-7, 7), 2).result == LocalResult::NoPoint);
  CHECK(qp_solvability(build_XE7_minus(curve_E3()), 2).result == LocalResult::NoPoint);
  for (int i = 1; i <= 4; ++i) {
    auto r = qp_solvability(reference_quartic(i), 2);
    CHECK(r.result == LocalResult::HasPoint);
    REQUIRE(r.witness);
  }
  CHECK_THROWS(qp_solvability(reference_quartic(1), 2, 1));
  // x^4 + y^4 - 3 z^4 has no 2-adic point: sums of fourth powers mod 16
  TernaryForm G(4);
  G.add(4, 0, 0, 1);
  G.add(0, 4, 0, 1);
  G.add(0, 0, 4, -3);
  CHECK(qp_solvability(make_quartic("fermat", G), 2).result == LocalResult::NoPoint);
}

TEST_CASE("box search") {
  auto pts3 = box_search(reference_quartic(3), 10);
  std::vector<Pt3> want3 = known_points(3);
  std::sort(want3.begin(), want3.end());
  CHECK(pts3 == want3);
  CHECK(box_search(reference_quartic(1), 100) == known_points(1));
  auto pts4 = box_search(reference_quartic(4), 10);
  auto want4 = known_points(4);
  std::sort(want4.begin(), want4.end());
  CHECK(pts4 == want4);
  auto pts2 = box_search(reference_quartic(2), 10);
  auto want2 = known_points(2);
  std::sort(want2.begin(), want2.end());
  CHECK(pts2 == want2);
}

TEST_CASE("normalization") {
  CHECK(normalize_point(2, 0, -2) == normalize_point(-1, 0, 1));
  CHECK(str(normalize_point(0, -3, 0)) == "[0:1:0]");
  CHECK_THROWS(normalize_point(0, 0, 0));
}
