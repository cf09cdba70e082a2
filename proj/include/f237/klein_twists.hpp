#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "f237/elliptic.hpp"
#include "f237/exact_arith.hpp"

namespace f237 {

struct PlaneQuarticQ {
  std::string name;
  TernaryForm F;  // degree 4, content 1
};

// primitive projective point, last nonzero coordinate positive
using Pt3 = std::array<Int, 3>;
Pt3 normalize_point(Int x, Int y, Int z);
std::string str(const Pt3& P);

PlaneQuarticQ make_quartic(std::string name, TernaryForm F);
// twisted Klein quartics attached to y^2 = x^3 + A x + B
PlaneQuarticQ build_XE7(const Int& A, const Int& B);
PlaneQuarticQ build_XE7_minus(const Int& A, const Int& B);
PlaneQuarticQ build_XE7(const EllCurveQ& E);  // via the integral short model
PlaneQuarticQ build_XE7_minus(const EllCurveQ& E);

// reduced models for the four reference curves, i in 1..4
PlaneQuarticQ reference_quartic(int i);
// known rational points; the first is the base point
std::vector<Pt3> known_points(int i);

bool on_curve(const PlaneQuarticQ& Q, const Pt3& P);
// resultant of the three partial derivatives; zero iff singular over Q-bar
Int partials_resultant(const PlaneQuarticQ& Q);
bool is_smooth(const PlaneQuarticQ& Q);
// primes of bad reduction outside the allowed set, found by stripping allowed primes
// and checking the remaining cofactor is a unit
bool bad_reduction_within(const PlaneQuarticQ& Q, const std::vector<long>& allowed);
bool good_reduction_at(const PlaneQuarticQ& Q, long p);

// number of projective points over F_{p^k}
long count_points_gf(const PlaneQuarticQ& Q, long p, int k);
long count_points_bruteforce(const PlaneQuarticQ& Q, long p);

enum class LocalResult { HasPoint, NoPoint, Unknown };
std::string str(LocalResult r);
struct LocalReport {
  LocalResult result = LocalResult::Unknown;
  std::optional<Pt3> witness;  // residues mod p^level for HasPoint
  int level = 0;               // level at which the verdict was reached
};
LocalReport qp_solvability(const PlaneQuarticQ& Q, long p, int max_level = 20);

// primitive points with max |coordinate| <= height
std::vector<Pt3> box_search(const PlaneQuarticQ& Q, long height);

}  // namespace f237
