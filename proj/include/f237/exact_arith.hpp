#pragma once
#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace f237 {

using Int = mpz_class;
using Rat = mpq_class;

std::string str(const Int& n);
std::string str(const Rat& q);

Int ipow(const Int& b, unsigned long e);
int sign(const Int& n);
// v_p(n); n must be nonzero
int val(const Int& n, const Int& p);
int val(const Rat& q, const Int& p);
Int isqrt(const Int& n);
bool is_square(const Int& n);
Int radical(Int n);

// r with r^e == n if it exists; r >= 0 for even e
std::optional<Int> nth_root_exact(const Int& n, unsigned e);

bool is_prime_small(long n);
std::vector<long> primes_up_to(long n);
std::vector<std::pair<Int, int>> factor_small(Int n);  // trial division, for modest n

// Dense univariate polynomial over Z, ascending coefficients.
struct UPoly {
  std::vector<Int> c;
  UPoly() = default;
  explicit UPoly(std::vector<Int> v) : c(std::move(v)) { trim(); }
  static UPoly constant(const Int& a) { return UPoly(std::vector<Int>{a}); }
  static UPoly monomial(const Int& a, int d);
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  void trim();
  Int operator()(const Int& x) const;
  Int content() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }
};
// exact division, throws if b does not divide a
UPoly exact_div(const UPoly& a, const UPoly& b);
std::string str(const UPoly& p, const char* var = "y");

// Homogeneous form in (x, y); coeffs[i] multiplies x^(d-i) y^i.
struct BinaryForm {
  int degree = 0;
  std::vector<Int> coeffs;

  BinaryForm() : coeffs{Int(0)} {}
  BinaryForm(int d, std::vector<Int> c);
  static BinaryForm from_ints(std::initializer_list<long> c);
  bool is_zero() const;
  Int eval(const Int& x, const Int& y) const;
  Rat eval(const Rat& t) const;  // dehomogenised at y = 1
  UPoly dehomogenize() const;    // f(x, 1) ascending in x
  Int content() const;
  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
  BinaryForm scaled(const Int& k) const;
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.degree == b.degree && a.coeffs == b.coeffs;
  }
};
std::string str(const BinaryForm& f);

// Res_x(f, g) with coefficients in Z[y].
UPoly resultant_in_x(const BinaryForm& f, const BinaryForm& g);
// Disc of a monic cubic given as dehomogenised coefficients (ascending, length 4).
Int discriminant_cubic(const UPoly& f);

using Mono3 = std::array<int, 3>;
struct TernaryForm {
  int degree = 0;
  std::map<Mono3, Int> coeffs;

  TernaryForm() = default;
  explicit TernaryForm(int d) : degree(d) {}
  void add(int i, int j, int k, const Int& c);
  Int eval(const Int& x, const Int& y, const Int& z) const;
  Int content() const;
  TernaryForm partial(int var) const;
  bool check() const;
  friend bool operator==(const TernaryForm& a, const TernaryForm& b);
};
std::string str(const TernaryForm& f);

// Macaulay resultant of three ternary forms of equal degree d (d >= 1).
Int macaulay_resultant(const TernaryForm& f1, const TernaryForm& f2, const TernaryForm& f3);
Int det_bareiss(std::vector<std::vector<Int>> m);

// ---------------- prime fields and F_{p^k} ----------------

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);
long mod_of(const Int& n, long p);

// F_q, q = p^k, k <= 6, q < 2^24. Elements are opaque handles (discrete logs,
// with q-1 standing for zero) so that multiplication and addition are table lookups.
class GF {
 public:
  using E = std::uint32_t;
  GF(long p, int k);
  long p() const { return p_; }
  int k() const { return k_; }
  long q() const { return q_; }
  E zero() const { return Z0; }
  E one() const { return 0; }
  bool is_zero(E a) const { return a == Z0; }
  E add(E a, E b) const {
    if (a == Z0) return b;
    if (b == Z0) return a;
    std::uint32_t d = b >= a ? b - a : b + qm1_ - a;
    std::uint32_t z = zech_[d];
    if (z == Z0) return Z0;
    std::uint32_t r = a + z;
    return r >= qm1_ ? r - qm1_ : r;
  }
  E neg(E a) const {
    if (a == Z0) return Z0;
    std::uint32_t r = a + half_;
    return r >= qm1_ ? r - qm1_ : r;
  }
  E sub(E a, E b) const { return add(a, neg(b)); }
  E mul(E a, E b) const {
    if (a == Z0 || b == Z0) return Z0;
    std::uint32_t r = a + b;
    return r >= qm1_ ? r - qm1_ : r;
  }
  E inv(E a) const;
  E div(E a, E b) const { return mul(a, inv(b)); }
  E pow(E a, std::uint64_t e) const;
  E frob(E a) const { return pow(a, static_cast<std::uint64_t>(p_)); }
  E from_int(long n) const;
  E from_coords(const std::vector<long>& v) const;
  std::vector<long> coords(E a) const;
  // element with log i (i in [0, q-2]); generator^i
  E from_log(long i) const { return static_cast<E>(i); }
  // all elements, zero first
  std::vector<E> elements() const;
  // defining polynomial, ascending, monic of degree k
  const std::vector<long>& modulus() const { return mod_; }
  // index in [0, q) (base-p digits of coordinates) for deterministic ordering
  long code(E a) const { return a == Z0 ? 0 : exp_code_[a]; }
  bool in_prime_field(E a) const;
  std::uint32_t qm1() const { return qm1_; }

 private:
  long p_;
  int k_;
  long q_;
  std::uint32_t qm1_, half_, Z0;
  std::vector<long> mod_;
  std::vector<std::uint32_t> exp_code_;  // log -> code
  std::vector<std::uint32_t> log_;       // code -> log (Z0 for code 0)
  std::vector<std::uint32_t> zech_;      // n -> log(1 + g^n)
};

// polynomial over GF, ascending
using GFPoly = std::vector<GF::E>;
void gf_trim(const GF& F, GFPoly& a);
GFPoly gf_mul(const GF& F, const GFPoly& a, const GFPoly& b);
GFPoly gf_mod(const GF& F, GFPoly a, const GFPoly& m);
GFPoly gf_gcd(const GF& F, GFPoly a, GFPoly b);
GFPoly gf_powmod_x(const GF& F, std::uint64_t e, const GFPoly& m);  // x^e mod m
GF::E gf_eval(const GF& F, const GFPoly& a, GF::E x);

struct GFRoot {
  GF::E value;
  int multiplicity;
};
std::vector<GFRoot> roots_over_gf(const GF& F, const GFPoly& poly);
// number of distinct roots in F_q
int count_distinct_roots(const GF& F, const GFPoly& poly);

// ---------------- integer lattices ----------------

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;
struct HnfResult {
  IntMat H;  // row Hermite form, zero rows last
  IntMat U;  // unimodular, U * input = H
  size_t rank = 0;
};
HnfResult hnf_transform(const IntMat& rows, size_t ncols);
// nonzero rows of the Hermite form
IntMat hnf(const IntMat& rows, size_t ncols);

// full-rank sublattice of Z^r stored as an upper triangular Hermite basis
struct Lattice {
  size_t r = 0;
  IntMat B;
  static Lattice full(size_t r);
  static Lattice from_generators(const IntMat& gens, size_t r);  // throws unless full rank
  Int index() const;
  IntVec reduce(IntVec v) const;  // canonical coset representative
  bool contains(const IntVec& v) const;
  bool operator==(const Lattice& o) const { return r == o.r && B == o.B; }
};
Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersection(const Lattice& a, const Lattice& b);
// some c with c = x mod a and c = y mod b, if one exists
std::optional<IntVec> coset_meet(const Lattice& a, const IntVec& x, const Lattice& b, const IntVec& y);

}  // namespace f237
