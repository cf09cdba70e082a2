#pragma once
#include <optional>
#include <string>
#include <vector>

#include "f237/exact_arith.hpp"

namespace f237 {

struct StarTriple;

struct EllCurveQ {
  Rat a1, a2, a3, a4, a6;
  EllCurveQ() = default;
  EllCurveQ(Rat a1_, Rat a2_, Rat a3_, Rat a4_, Rat a6_);
  static EllCurveQ short_form(const Rat& A, const Rat& B) { return EllCurveQ(0, 0, 0, A, B); }
  bool integral() const;
  bool operator==(const EllCurveQ& o) const {
    return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6;
  }
};
std::string str(const EllCurveQ& E);

struct Invariants {
  Rat b2, b4, b6, b8, c4, c6, disc, j;
};
Invariants invariants(const EllCurveQ& E);  // throws on singular models

// reference curves
EllCurveQ curve_E1();  // y^2 = x^3 - x^2 - 2x + 1
EllCurveQ curve_E2();  // y^2 = x^3 - 7x + 7
EllCurveQ curve_E3();  // y^2 = x^3 - x^2 - 16x + 29
// 3-isogenous to E1, obtained by Velu's formulas and scaled to a minimal short model
EllCurveQ curve_E4();

// y^2 = x^3 + 189 b x + 189 a (tag 28) or y^2 = x^3 + 1323 b x + 1323 a (tag 196)
EllCurveQ build_frey(const StarTriple& t);
EllCurveQ build_frey_unchecked(const Int& a, const Int& b, int tag);
Rat frey_j(const Int& b, const Int& c, int tag);  // 2^8 7 b^3 / c^7 or 2^8 7^2 b^3 / c^7
// integral model of the -3 twist, good at 3
EllCurveQ twist_minus3_minimal(const Int& a, const Int& b, int tag);

// short model y^2 = x^3 - 27 c4 d^2 x - 54 c6 d^3
EllCurveQ quadratic_twist(const EllCurveQ& E, const Int& d);
// short model y^2 = x^3 + A x + B, scaled to be integral and minimal at primes >= 5
EllCurveQ short_minimal_model(const EllCurveQ& E);
// isogenous curve for the subgroup generated by a point of order 3 with this x-coordinate
EllCurveQ velu_3_isogeny(const EllCurveQ& short_model, const Rat& x0);

// x = u^2 x' + r, y = u^3 y' + u^2 s x' + t
EllCurveQ change_coordinates(const EllCurveQ& E, const Rat& u, const Rat& r, const Rat& s, const Rat& t);
// integral model minimal at p
EllCurveQ minimal_at(const EllCurveQ& E, long p);

enum class Reduction { Good, Multiplicative, Additive };
struct ReductionReport {
  long p = 0;
  Reduction type = Reduction::Good;
  int v_disc_min = 0;
};
// p >= 5, integral model
ReductionReport reduction_type(const EllCurveQ& E, long p);
std::string str(Reduction r);

// number of projective points over F_p; the model must be integral with good reduction at p
long count_points(const EllCurveQ& E, long p);
long ap_trace(const EllCurveQ& E, long p);

struct InertiaPair {
  int alpha, beta;  // beta = 1 - alpha, not reduced
  int alpha_mod6() const { return ((alpha % 6) + 6) % 6; }
  int beta_mod6() const { return ((beta % 6) + 6) % 6; }
};
InertiaPair kraus_inertia_from_valuation(int v7_disc_min);
InertiaPair kraus_inertia(const EllCurveQ& E);
// exponent sets {alpha, 1 - alpha} mod 6
std::vector<int> exponent_set_mod6(const InertiaPair& p);
bool exponent_sets_disjoint(const InertiaPair& a, const InertiaPair& b);

struct CongruenceResult {
  bool congruent = true;
  std::optional<long> first_failure;
  std::vector<long> tested, skipped;
};
// a_l(E) = chi(l) a_l(E') mod 7 for primes l <= bound, l not 2 or 7
CongruenceResult mod7_congruent(const EllCurveQ& E, const EllCurveQ& Ep, long bound,
                                std::optional<long> twist_disc = std::nullopt);

int kronecker(long a, long n);

}  // namespace f237
