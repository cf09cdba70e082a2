#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "f237/exact_arith.hpp"
#include "f237/klein_twists.hpp"

namespace f237 {

// ---------- linear algebra over F_p on spaces of ternary forms ----------

using FpVec = std::vector<std::uint32_t>;

// subspace of the degree-d forms, in reduced row echelon form
struct FormSpace {
  int d = 0;
  std::vector<FpVec> rows;
  std::vector<int> piv;
  size_t dim() const { return rows.size(); }
  bool operator==(const FormSpace& o) const { return d == o.d && rows == o.rows; }
};

// closed point of degree k: one representative with coordinates in F_{p^k}
struct ClosedPoint {
  int k = 1;
  std::array<std::vector<long>, 3> coords;  // coordinate vectors over F_p, last nonzero coordinate 1
};

class SmoothQuarticFp;

struct DivisorClass {
  const SmoothQuarticFp* C = nullptr;
  std::vector<std::uint32_t> key;  // canonical
  FormSpace V3;                    // cubics through an effective E with class [E - 3 P0]
  bool special() const { return !key.empty() && key[0] == 1; }
  bool operator==(const DivisorClass& o) const { return key == o.key; }
  bool operator!=(const DivisorClass& o) const { return key != o.key; }
};

struct KeyHash {
  size_t operator()(const std::vector<std::uint32_t>& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : k) h = (h ^ v) * 1099511628211ULL;
    return static_cast<size_t>(h);
  }
};

struct LPolynomial {
  long p = 0;
  std::array<Int, 7> c;  // c0 = 1
  Int at_one() const;
  bool functional_equation() const;
  bool weil_bound_numeric() const;  // all roots on |t| = p^(-1/2)
};

class SmoothQuarticFp {
 public:
  SmoothQuarticFp(const PlaneQuarticQ& Q, long p, const Pt3& base);
  long p() const { return p_; }
  const PlaneQuarticQ& model() const { return Q_; }
  const std::array<long, 3>& base_point() const { return P0_; }
  // points over F_p, normalized with last nonzero coordinate 1
  const std::vector<std::array<long, 3>>& rational_points() const { return pts1_; }
  std::array<long, 3> reduce_point(const Pt3& P) const;
  // closed points of exact degree k (k <= 4)
  std::vector<ClosedPoint> closed_points(int k) const;

  // spaces: degree-d forms vanishing on a divisor, including F * S_{d-4}
  FormSpace all_forms(int d) const;
  FormSpace point_space(int d, const ClosedPoint& P) const;
  FormSpace ideal_space(int d, const std::vector<std::pair<int, FpVec>>& gens) const;
  FormSpace multiply(const FormSpace& A, const FormSpace& B, long expect = -1) const;
  FormSpace lower(const FormSpace& V, int d, long expect = -1) const;
  // V_J(D) base point free, f of degree m vanishing on D: forms of degree t vanishing on div(f) - D
  FormSpace flip(const FormSpace& VJ, const FpVec& f, int m, int t, long expect = -1) const;
  const FormSpace& p0_multiple(int k) const;  // degree 6 forms vanishing to order k at P0
  FpVec form_mod_p(const TernaryForm& h) const;

  // group
  DivisorClass zero() const;
  DivisorClass add(const DivisorClass& x, const DivisorClass& y) const;
  DivisorClass neg(const DivisorClass& x) const;
  DivisorClass sub(const DivisorClass& x, const DivisorClass& y) const { return add(x, neg(y)); }
  DivisorClass mul(const Int& n, const DivisorClass& x) const;
  // class of E - 3 P0 from cubics through an effective degree-3 divisor E
  DivisorClass from_effective3(const FormSpace& V3E) const;
  // class of A - a P0 for effective A of degree a <= 9 given by V_4(A)
  DivisorClass from_effective(const FormSpace& V4A, int a) const;
  DivisorClass abel_jacobi(const std::array<long, 3>& P) const;
  DivisorClass abel_jacobi(const Pt3& P) const { return abel_jacobi(reduce_point(P)); }
  // class of (h = 0) - deg(h) 4 P0 for a form h of degree 1 or 2
  DivisorClass class_from_section(const TernaryForm& h) const;
  // class of the effective divisor cut by the homogeneous ideal (gens), of degree a, minus a P0
  DivisorClass class_from_ideal(const std::vector<TernaryForm>& gens, int a) const;
  // class of the closed point P minus k P0
  DivisorClass class_of_closed_point(const ClosedPoint& P) const;
  // all effective degree-3 divisors as spaces of cubics, with their point data
  struct Effective3 {
    FormSpace V3;
    std::vector<std::pair<int, int>> parts;  // (degree, index into closed_points(degree)) with repetition
  };
  std::vector<Effective3> effective_degree3() const;

  LPolynomial zeta() const;
  Int group_order() const;  // L(1), cached
  Int order(const DivisorClass& x) const;

 private:
  PlaneQuarticQ Q_;
  long p_;
  std::array<long, 3> P0_;
  FpVec F_;  // the quartic mod p in S_4
  std::vector<std::array<long, 3>> pts1_;
  mutable std::vector<FormSpace> p0_tower_;
  mutable std::optional<DivisorClass> kappa_;  // class of 4H - 16 P0
  mutable std::optional<Int> order_;
  mutable std::optional<LPolynomial> zeta_;
  mutable std::vector<std::optional<FormSpace>> fpart_;
  mutable std::map<int, std::vector<ClosedPoint>> closed_;
  mutable std::map<int, std::shared_ptr<GF>> fields_;
  const FormSpace& fpart(int d) const;
  const GF& field(int k) const;
  FpVec first_outside_fpart(const FormSpace& V) const;
  FormSpace p0_space(int d, int k) const;
  DivisorClass finalize(FormSpace V3E) const;
  DivisorClass step_two(const FormSpace& V8, int) const;
  DivisorClass reduce4(const FormSpace& V4A, int a) const;
  const DivisorClass& kappa() const;
};

// free-function interface
LPolynomial zeta_l_polynomial(const SmoothQuarticFp& C);
DivisorClass class_add(const DivisorClass& x, const DivisorClass& y);
DivisorClass class_neg(const DivisorClass& x);
DivisorClass class_zero(const SmoothQuarticFp& C);
DivisorClass abel_jacobi(const SmoothQuarticFp& C, const Pt3& P);
DivisorClass class_from_section(const SmoothQuarticFp& C, const TernaryForm& h);

struct SubgroupTable {
  size_t r = 0;
  std::unordered_map<std::vector<std::uint32_t>, IntVec, KeyHash> coeffs;  // class key -> a coefficient vector
  std::vector<DivisorClass> elements;                                      // in discovery order
  Lattice kernel;                                                          // relations among the generators
  size_t order() const { return elements.size(); }
};
SubgroupTable subgroup_enumerate(const SmoothQuarticFp& C, const std::vector<DivisorClass>& gens,
                                 size_t guard = 1000000);

enum class Divisibility { NotDivisible, Divisible, Inconclusive };
std::string str(Divisibility d);
Divisibility ell_divisibility(const SmoothQuarticFp& C, const DivisorClass& y, long ell,
                              std::optional<Int> M = std::nullopt);

// every class of J(F_p), from effective degree-3 divisors; small p only
std::vector<DivisorClass> enumerate_jacobian(const SmoothQuarticFp& C, size_t guard = 200000);

// the relation 2[D4] = -3[D1] + 3[D3] on the third reference model
struct RelationReport {
  long p = 0;
  bool holds = false;
  bool negated_holds = false;  // 2[D4] = 3[D1] - 3[D3]
  std::string lhs, rhs;
};
RelationReport check_d4_relation(long p);
// generators D1, D2, D3 (differences of the known points) and D4 on the third reference model
std::vector<DivisorClass> xe3_generators(const SmoothQuarticFp& C);
DivisorClass xe3_d4(const SmoothQuarticFp& C);

}  // namespace f237
