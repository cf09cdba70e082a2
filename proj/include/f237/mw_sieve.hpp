#pragma once
#include <array>
#include <string>
#include <vector>

#include "f237/exact_arith.hpp"
#include "f237/klein_twists.hpp"
#include "f237/quartic_jacobian.hpp"

namespace f237 {

struct ClassRecipe {
  enum Kind { PointDifference, SectionClass };
  std::string name;
  Kind kind = PointDifference;
  Pt3 P{};                     // PointDifference: [P - P0]
  TernaryForm h;               // SectionClass: (h = 0) - 4 deg(h) P0
  Int multiplier = Int(1);     // scales the recipe (used to inject non-saturated sets)
  DivisorClass instantiate(const SmoothQuarticFp& C) const;
};

struct GeneratorSpec {
  std::vector<ClassRecipe> recipes;
  size_t rank() const { return recipes.size(); }
  std::vector<DivisorClass> instantiate(const SmoothQuarticFp& C) const;
};

// named generators on reference model i: D1, D2, D3 on model 3, P1 (= [P1 - P0]) on models 2 and 4
GeneratorSpec named_generators(int model, const std::vector<std::string>& names);
// coefficient vectors of the known rational points with respect to named_generators(model, names)
std::vector<IntVec> known_point_coefficients(int model, const std::vector<std::string>& names);

struct CosetSystem {
  size_t r = 0;
  Lattice L;
  std::vector<IntVec> reps;  // reduced mod L, distinct
  bool contains(const IntVec& v) const;
};
CosetSystem full_system(size_t r);

struct OmegaResult {
  long q = 0;
  CosetSystem sys;
  std::vector<std::array<long, 3>> points;  // points[i] has coefficient class sys.reps[i]
  size_t subgroup_order = 0;
  Int group_order;
};
OmegaResult omega(const SmoothQuarticFp& C, const GeneratorSpec& gens, size_t guard = 1000000);

CosetSystem intersect_systems(const CosetSystem& a, const CosetSystem& b);
struct SieveResult {
  CosetSystem meet;
  std::vector<std::array<long, 3>> survivors;  // points of the target system that meet every system
};
// systems[target] supplies the points
SieveResult sieve_intersect(const std::vector<OmegaResult>& systems, size_t target = 0);

// nonzero vectors of {0..ell-1}^r whose first nonzero entry is 1
std::vector<IntVec> y_ell(long ell, size_t r);
// sound certificate that y is not in ell J(F_p): (M / ell) y != 0 with M = #J(F_p)
bool not_divisible_certificate(const SmoothQuarticFp& C, const DivisorClass& y, long ell);

struct SaturationReport {
  bool saturated = false;
  std::vector<long> used_primes;     // aux primes with v_ell(#J) = 1
  std::vector<long> skipped_primes;  // v_ell(#J) != 1
  std::vector<IntVec> uncovered;
};
SaturationReport saturation_check(const PlaneQuarticQ& Q, const Pt3& base, const GeneratorSpec& gens, long ell,
                                  const std::vector<long>& aux_primes);

struct IndexLemmaReport {
  bool holds = false;
  Int index;  // [A x B : G]
  Int bound;  // [A : pi_A G] [B : pi_B G] gcd(|pi_A G|, |pi_B G|)
};
// A and B by invariant factors; generators as coordinate vectors of A x B
IndexLemmaReport verify_index_lemma(const std::vector<long>& A, const std::vector<long>& B,
                                    const std::vector<std::vector<long>>& gens);

struct SieveRunReport {
  int model = 0;
  long p = 0;
  std::vector<long> aux;
  std::vector<std::string> gens;
  std::string status;  // FULL when the generators reach the known rank, PARTIAL otherwise
  std::vector<std::array<long, 3>> survivors;
  std::vector<std::array<long, 3>> known_reductions;
  bool known_survive = false;
  Int combined_index;
  size_t surviving_classes = 0;
  double seconds = 0;
};
SieveRunReport run_sieve(int model, long p, const std::vector<long>& aux, const std::vector<std::string>& gens);

}  // namespace f237
