#include "doctest.h"
#include "f237/cartan_groups.hpp"

using namespace f237;

TEST_CASE("Cartan orders mod 7") {
  CHECK(build_cartan(7, CartanKind::NonSplit, false).order() == 48);
  CHECK(build_cartan(7, CartanKind::NonSplit, true).order() == 96);
  CHECK(build_cartan(7, CartanKind::Split, false).order() == 36);
  CHECK(build_cartan(7, CartanKind::Split, true).order() == 72);
}

TEST_CASE("Cartan orders for other primes") {
  for (long p : {3L, 5L, 11L, 13L}) {
    CHECK(build_cartan(p, CartanKind::NonSplit, true).order() == static_cast<size_t>(2 * (p * p - 1)));
    CHECK(build_cartan(p, CartanKind::Split, true).order() == static_cast<size_t>(2 * (p - 1) * (p - 1)));
  }
}

TEST_CASE("Cartan subgroups are groups") {
  for (auto k : {CartanKind::NonSplit, CartanKind::Split}) {
    auto G = build_cartan(7, k, true);
    CHECK(G.closed());
    CHECK(G.has_identity());
    CHECK(G.has_inverses());
  }
}

TEST_CASE("exotic subgroups mod 49") {
  auto Gns = build_exotic(7, CartanKind::NonSplit);
  CHECK(Gns.order() == 32928);
  CHECK(Gns.reduce(7).order() == 96);
  auto Gsp = build_exotic(7, CartanKind::Split);
  CHECK(Gsp.order() == 24696);
  CHECK(Gsp.reduce(7).order() == 72);
  // kernel of reduction is exactly I + 7V
  for (auto [G, k] : {std::pair{&Gns, CartanKind::NonSplit}, std::pair{&Gsp, CartanKind::Split}}) {
    auto K = unipotent_kernel(7, k);
    size_t in_kernel = 0;
    for (auto& g : G->elements)
      if (g.reduce(7) == MatModN::identity(7)) {
        ++in_kernel;
        CHECK(K.contains(g));
      }
    CHECK(in_kernel == 343);
  }
}

TEST_CASE("small exotic group mod 9 is closed") {
  auto G = build_exotic(3, CartanKind::NonSplit);
  CHECK(G.order() == static_cast<size_t>(2 * 27 * 8));
  CHECK(G.reduce(3).order() == 16);
  CHECK(G.closed());
}

TEST_CASE("rank subspace lemma") {
  for (auto k : {CartanKind::NonSplit, CartanKind::Split}) {
    auto r = verify_rank_subspace_lemma(7, k);
    CHECK(r.subspaces_checked == 57);
    CHECK(r.holds);
  }
  CHECK(verify_rank_subspace_lemma(5, CartanKind::NonSplit).subspaces_checked == 31);
}

TEST_CASE("guards") {
  CHECK_THROWS(build_cartan(4, CartanKind::Split, false));
  CHECK_THROWS(build_exotic(11, CartanKind::Split));
}
