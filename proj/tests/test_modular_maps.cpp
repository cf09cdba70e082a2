#include <random>

#include "doctest.h"
#include "f237/modular_maps.hpp"

using namespace f237;

TEST_CASE("j-map special values") {
  auto ns = JMap::nonsplit();
  CHECK(eval_j(ns, ProjPointQ(0, 1)) == ExtRat::of(0));
  CHECK(eval_j(ns, ProjPointQ::infinity()) == ExtRat::of(8000));
  auto sp = JMap::split();
  CHECK(eval_j(sp, ProjPointQ(0, 1)) == ExtRat::of(0));
  CHECK(eval_j(sp, ProjPointQ::infinity()).infinite);
  auto b = JMap::borel();
  CHECK(eval_j(b, ProjPointQ(1, 1)) == ExtRat::of(Rat(ipow(2647, 3) * 63)));
  CHECK(eval_j(b, ProjPointQ(0, 1)).infinite);
}

TEST_CASE("j-maps agree with the dehomogenised rational functions") {
  auto ns = JMap::nonsplit();
  for (long a = -6; a <= 6; ++a)
    for (long c = 1; c <= 5; ++c) {
      Rat t(a, c);
      t.canonicalize();
      Rat f = f_ns().eval(t);
      if (f == 0) continue;
      Rat g = g_ns().eval(t);
      Rat expect = g * g * g / (f * f * f * f * f * f * f);
      CHECK(eval_j(ns, ProjPointQ::from_rat(t)) == ExtRat::of(expect));
    }
}

TEST_CASE("homogenisation balance") {
  auto ns = JMap::nonsplit(), sp = JMap::split(), b = JMap::borel();
  CHECK(3 * ns.G.degree == 7 * ns.F.degree);
  CHECK(ns.num.degree == ns.den.degree);
  CHECK(sp.num.degree == sp.den.degree);
  CHECK(b.num.degree == b.den.degree);
  CHECK(ns.F.content() == 1);
  CHECK(sp.F.content() == 1);
}

TEST_CASE("projective point normalisation") {
  ProjPointQ a(-6, -4);
  CHECK(a.x == 3);
  CHECK(a.y == 2);
  ProjPointQ b(-5, 0);
  CHECK(b.x == 1);
  CHECK(b.y == 0);
  CHECK_THROWS(ProjPointQ(0, 0));
}

TEST_CASE("power datum examples") {
  auto d1 = extract_power_datum(1, 0, PowerVariant::Ns);
  REQUIRE(d1);
  CHECK(d1->k == 1);
  CHECK(d1->z == 1);
  auto d2 = extract_power_datum(3, 1, PowerVariant::Ns);
  REQUIRE(d2);
  CHECK(d2->value == -8);
  CHECK(d2->k == 8);
  CHECK(d2->z == -1);
  auto d3 = extract_power_datum(1, 1, PowerVariant::Ns);
  REQUIRE(d3);
  CHECK(d3->k == 8);
  CHECK(d3->z == 1);
  CHECK(!extract_power_datum(4, 1, PowerVariant::Ns));
  CHECK_THROWS_WITH(extract_power_datum(2, 4, PowerVariant::Ns), "inputs share a factor");
  // f_sp(1, 1) = 1 and y = 1
  auto d4 = extract_power_datum(1, 1, PowerVariant::SpSharp);
  REQUIRE(d4);
  CHECK(d4->k == 1);
  CHECK(d4->y_is_seventh_power);
}

TEST_CASE("power datum invariants over a box") {
  for (long x = -60; x <= 60; ++x)
    for (long y = -60; y <= 60; ++y) {
      Int g;
      Int X(x), Y(y);
      mpz_gcd(g.get_mpz_t(), X.get_mpz_t(), Y.get_mpz_t());
      if (g != 1) continue;
      auto d = extract_power_datum(X, Y, PowerVariant::Ns);
      if (!d) continue;
      CHECK(d->value == d->k * ipow(d->z, 7));
      CHECK(d->z % 2 != 0);
      CHECK(d->z % 7 != 0);
    }
}

TEST_CASE("f has no deep 2- or 7-adic zeros on coprime residues") {
  for (long m : {49L, 16L}) {
    long p = m == 49 ? 7 : 2;
    for (auto f : {f_ns(), f_sp()}) {
      if (m == 16 && !(f == f_ns())) continue;
      bool ok = true;
      for (long x = 0; x < m; ++x)
        for (long y = 0; y < m; ++y) {
          if (x % p == 0 && y % p == 0) continue;
          if (mod_of(f.eval(x, y), m) == 0) ok = false;
        }
      CHECK(ok);
    }
  }
}

TEST_CASE("2-adic valuation of the Borel map") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> d(-100000, 100000);
  auto b = JMap::borel();
  int n = 0;
  while (n < 2000) {
    Int x(d(rng)), y(d(rng));
    Int g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    if (g != 1 || x == 0 || y == 0) continue;
    auto j = eval_j(b, ProjPointQ(x, y));
    REQUIRE(!j.infinite);
    if (j.value != 0) CHECK(val(j.value, 2) <= 0);
    ++n;
  }
}

TEST_CASE("denominators") {
  CHECK(denominator_is_power(Rat(1, ipow(2, 49)), 49));
  CHECK(denominator_is_power(Rat(8000), 49));
  CHECK(!denominator_is_power(Rat(1, 2), 49));
}

TEST_CASE("Hasse classes") {
  CHECK(hasse_class(0, 7) == Hasse::Ordinary);
  CHECK(hasse_class(0, 5) == Hasse::Supersingular);
  CHECK(hasse_class(1728, 7) == Hasse::Supersingular);
  CHECK_THROWS(hasse_class(5, 7));
  for (long p : primes_up_to(50)) {
    if (p <= 3) continue;
    CHECK(hasse_class(0, p) == hasse_class_by_count(0, p));
    CHECK(hasse_class(1728, p) == hasse_class_by_count(1728, p));
  }
}

TEST_CASE("CM list") {
  CHECK(rational_cm_j_invariants().size() == 13);
  CHECK(is_rational_cm_j(Rat(-884736000)));
  CHECK(!is_rational_cm_j(Rat(1, 2)));
}
