#pragma once
#include <optional>
#include <string>
#include <vector>

#include "f237/exact_arith.hpp"

namespace f237 {

// Q together with a point at infinity
struct ExtRat {
  bool infinite = false;
  Rat value;
  static ExtRat inf() { return {true, Rat(0)}; }
  static ExtRat of(const Rat& q) { return {false, q}; }
  bool operator==(const ExtRat& o) const { return infinite == o.infinite && (infinite || value == o.value); }
};
std::string str(const ExtRat& v);

struct ProjPointQ {
  Int x, y;
  // normalises to gcd 1 with y > 0, or y = 0 and x > 0
  ProjPointQ(Int x, Int y);
  static ProjPointQ from_rat(const Rat& t) { return ProjPointQ(t.get_num(), t.get_den()); }
  static ProjPointQ infinity() { return ProjPointQ(1, 0); }
};

enum class JLabel { Borel, Split, NonSplit };

// j = num(x, y) / den(x, y) with deg num = deg den after homogenisation.
// For the Cartan maps num = x^a G^3 and den = (y^b F)^7.
struct JMap {
  JLabel label;
  BinaryForm G, F;  // cube and seventh-power parts
  BinaryForm num, den;
  static JMap borel();
  static JMap split();
  static JMap nonsplit();
};

ExtRat eval_j(const JMap& m, const ProjPointQ& t);

BinaryForm f_ns();
BinaryForm g_ns();
BinaryForm f_sp();
BinaryForm g_sp();

enum class PowerVariant { Ns, NsSharp, SpSharp };

struct PowerDatum {
  Int value;  // f(x, y)
  Int k, z;   // value == k z^7
  // sp_sharp only: whether y is a seventh power, with its root
  bool y_is_seventh_power = false;
  Int w;
};
// nullopt when f(x, y) is not k z^7 for an admissible k
std::optional<PowerDatum> extract_power_datum(const Int& x, const Int& y, PowerVariant v);

// reduced denominator of j is an e-th power
bool denominator_is_power(const Rat& j, unsigned e);

enum class Hasse { Supersingular, Ordinary };
Hasse hasse_class(int j_residue, long p);
// same question decided by counting points on y^2 = x^3 + 1 or y^2 = x^3 + x
Hasse hasse_class_by_count(int j_residue, long p);

// the thirteen j-invariants of CM elliptic curves over Q
const std::vector<Int>& rational_cm_j_invariants();
bool is_rational_cm_j(const Rat& j);

}  // namespace f237
