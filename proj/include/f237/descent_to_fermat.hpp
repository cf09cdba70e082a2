#pragma once
#include <array>
#include <optional>
#include <vector>

#include "f237/exact_arith.hpp"

namespace f237 {

// K = Q[t]/(f) for a monic cubic f with square discriminant.
class GaloisCubicField {
 public:
  using Elem = std::array<Rat, 3>;  // power basis 1, alpha, alpha^2

  explicit GaloisCubicField(const UPoly& monic_cubic);
  const UPoly& f() const { return f_; }
  const Int& d() const { return d_; }  // positive square root of disc
  Int disc() const { return d_ * d_; }

  Elem rational(const Rat& q) const { return {q, Rat(0), Rat(0)}; }
  Elem alpha() const { return {Rat(0), Rat(1), Rat(0)}; }
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, const Rat& q) const;
  Elem inv(const Elem& a) const;
  // image under the generator of Gal(K/Q); alpha -> conj_alpha()
  Elem sigma(const Elem& a) const;
  const Elem& conj_alpha() const { return conj_; }
  Elem eval_poly(const std::vector<Rat>& asc, const Elem& x) const;
  static bool is_rational(const Elem& a) { return a[1] == 0 && a[2] == 0; }

 private:
  UPoly f_;
  Int d_;
  Elem conj_;
};

UPoly cubic_f1();  // x^3 - 7x^2 + 7x + 7
UPoly cubic_f2();  // x^3 - 2x^2 - x + 1
UPoly cubic_f3();  // x^3 - 4x^2 + 3x + 1
BinaryForm cubic_form(int index);

struct FermatTriple {
  Int a, b, c;
};
// F(x, y) = k z^n  ->  a^2 + 4 b^3 = -27 D k^2 c^n with c = z^2
FermatTriple norm_to_fermat(const GaloisCubicField& K, const Int& x, const Int& y, const Int& z,
                            const Int& k, unsigned n);

struct StarTriple {
  Int a, b, c;  // a^2 + tag b^3 = 27 c^n
  int tag = 28;
  unsigned n = 7;
  bool star = false;
  bool primitive = false;
  bool operator<(const StarTriple& o) const;
  bool operator==(const StarTriple& o) const { return a == o.a && b == o.b && c == o.c && tag == o.tag; }
};
bool star_condition(const Int& a, const Int& b, const Int& c);
StarTriple make_triple(const Int& a, const Int& b, const Int& c, int tag, unsigned n = 7);

struct ReductionTrace {
  StarTriple out;
  FermatTriple raw;           // output of norm_to_fermat
  int cubic_used = 0;         // after the k = 8 substitution
  std::optional<Int> a1, b1;  // 196 only: values before the final division by 7
};
// f_index(x, y) = k z^n, k in {1, 8} (k = 8 only for index 1); n odd
ReductionTrace reduce_to_28(const Int& x, const Int& y, const Int& z, int index, const Int& k, unsigned n);
// f_index(x, y) = 7 k z^n
ReductionTrace reduce_to_196(const Int& x, const Int& y, const Int& z, int index, const Int& k, unsigned n);

struct SearchOptions {
  // b below zero is not bounded by the equation; the scan stops at
  // b >= -neg_factor * (27|c|^7 / tag)^(1/3) - neg_slack
  double neg_factor = 8.0;
  long neg_slack = 1000;
};
std::vector<StarTriple> search_primitive_solutions(int tag, long c_max, const SearchOptions& opt = {});
std::vector<StarTriple> search_star_solutions(int tag, long c_max, const SearchOptions& opt = {});

// coprime (x, y) with |x|, |y| <= box and form(x, y) = target; not a proof of completeness
std::vector<std::pair<Int, Int>> thue_box_search(const BinaryForm& form, const Int& target, long box);

struct JCandidate {
  Rat j;
  Int x, y, k;
  bool cm = false;
};
struct Classification {
  std::vector<JCandidate> candidates;  // one per distinct j
  std::vector<Int> cm_js;              // sorted
  std::vector<Rat> non_cm_js;
};
// C_ns+(49): solutions of f_ns = k with k in {+-1, +-8}
Classification classify_cns49(long box);
// G_ns#(49): f_ns = 7k with k in {+-1, +-8}
Classification classify_ns_sharp(long box);
// G_sp#(49): f_sp = k with k in {+-1, +-7} and y a seventh power
Classification classify_sp_sharp(long box);

double abc_quality(const Int& u, const Int& v, const Int& w);

}  // namespace f237
