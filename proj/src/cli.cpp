#include "f237/cli.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "f237/cartan_groups.hpp"
#include "f237/descent_to_fermat.hpp"
#include "f237/elliptic.hpp"
#include "f237/exact_arith.hpp"
#include "f237/klein_twists.hpp"
#include "f237/modular_maps.hpp"
#include "f237/mw_sieve.hpp"
#include "f237/quartic_jacobian.hpp"

namespace f237 {

// ---------------- config ----------------

namespace {
template <class T>
void take(const json& j, const char* k, T& out) {
  if (j.contains(k)) out = j.at(k).get<T>();
}
void check_primes(const std::vector<long>& v, const char* what) {
  for (long p : v)
    if (!is_prime_small(p)) throw std::invalid_argument(std::string(what) + " must contain only primes");
}
}  // namespace

RunConfig RunConfig::from_json(const json& j) {
  static const std::set<std::string> keys = {
      "c_max",      "c_max_196",   "thue_box",      "point_height", "gcd_primes", "axiom_primes",
      "axiom_triples", "seven_bound", "relation_primes", "sieve_p",  "sieve_aux",  "index_lemma_instances",
      "seed",       "jobs",        "mutate_e2",     "only"};
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (auto& [k, v] : j.items())
    if (!keys.count(k)) throw std::invalid_argument("unknown config key " + k);
  RunConfig c;
  take(j, "c_max", c.c_max);
  take(j, "c_max_196", c.c_max_196);
  take(j, "thue_box", c.thue_box);
  take(j, "point_height", c.point_height);
  take(j, "gcd_primes", c.gcd_primes);
  take(j, "axiom_primes", c.axiom_primes);
  take(j, "axiom_triples", c.axiom_triples);
  take(j, "seven_bound", c.seven_bound);
  take(j, "relation_primes", c.relation_primes);
  take(j, "sieve_p", c.sieve_p);
  take(j, "sieve_aux", c.sieve_aux);
  take(j, "index_lemma_instances", c.index_lemma_instances);
  take(j, "seed", c.seed);
  take(j, "jobs", c.jobs);
  take(j, "mutate_e2", c.mutate_e2);
  take(j, "only", c.only);
  c.validate();
  return c;
}

json RunConfig::to_json() const {
  return json{{"c_max", c_max},
              {"c_max_196", c_max_196},
              {"thue_box", thue_box},
              {"point_height", point_height},
              {"gcd_primes", gcd_primes},
              {"axiom_primes", axiom_primes},
              {"axiom_triples", axiom_triples},
              {"seven_bound", seven_bound},
              {"relation_primes", relation_primes},
              {"sieve_p", sieve_p},
              {"sieve_aux", sieve_aux},
              {"index_lemma_instances", index_lemma_instances},
              {"seed", seed},
              {"jobs", jobs},
              {"mutate_e2", mutate_e2},
              {"only", only}};
}

void RunConfig::validate() const {
  for (long b : {c_max, c_max_196, thue_box, point_height, axiom_triples, seven_bound, index_lemma_instances})
    if (b <= 0) throw std::invalid_argument("bounds must be positive");
  if (jobs < 1) throw std::invalid_argument("jobs must be positive");
  check_primes(gcd_primes, "gcd_primes");
  check_primes(axiom_primes, "axiom_primes");
  check_primes(relation_primes, "relation_primes");
  check_primes(sieve_aux, "sieve_aux");
  check_primes({sieve_p}, "sieve_p");
  for (int i : only)
    if (i < 1 || i > 13) throw std::invalid_argument("check ids are 1..13");
}

bool CheckReport::pass() const {
  return !subs.empty() && std::all_of(subs.begin(), subs.end(), [](const SubCheck& s) { return s.pass; });
}

// ---------------- helpers ----------------

namespace {
using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string triple_str(const StarTriple& t) { return "(" + str(t.a) + "," + str(t.b) + "," + str(t.c) + ")"; }

EllCurveQ e2_for(const RunConfig& cfg) {
  EllCurveQ E = curve_E2();
  if (cfg.mutate_e2) E.a6 += 1;
  return E;
}

Int pw(long b, unsigned long e) { return ipow(Int(b), e); }

SmoothQuarticFp reference_curve(int i, long p) { return SmoothQuarticFp(reference_quartic(i), p, known_points(i)[0]); }

struct Ctx {
  CheckReport r;
  Clock::time_point t0 = Clock::now();
  void add(std::string label, bool pass, std::string detail = "") {
    r.subs.push_back({std::move(label), pass, std::move(detail)});
  }
  void time_limit(double limit) {
    double s = since(t0);
    std::ostringstream o;
    o << "runtime under " << limit << " s";
    add(o.str(), s < limit);
  }
};

// ---------------- the checks ----------------

void check1(Ctx& c, const RunConfig& cfg) {
  c.r.title = "classification of the ns(49) j-invariants";
  c.r.statement = "thue box search on f_ns = k z^7, k in {+-1, +-8}, yields 7 CM j-invariants, all integral";
  auto cl = classify_cns49(cfg.thue_box);
  std::vector<Int> stated = {-pw(2, 18) * pw(3, 3) * pw(5, 3) * pw(23, 3) * pw(29, 3),
                              -pw(2, 15) * pw(3, 3) * pw(5, 3) * pw(11, 3),
                              -pw(2, 18) * pw(3, 3) * pw(5, 3) * pw(11, 3),
                              -pw(2, 15),
                              pw(2, 6) * pw(3, 3),
                              pw(2, 6) * pw(5, 3),
                              pw(2, 3) * pw(3, 3) * pw(11, 3)};
  std::vector<Int> corrected = stated;
  corrected[2] = -pw(2, 18) * pw(3, 3) * pw(5, 3);  // disc -43
  std::sort(stated.begin(), stated.end());
  std::sort(corrected.begin(), corrected.end());
  std::vector<std::string> got;
  for (auto& j : cl.cm_js) got.push_back(str(j));
  c.add("exactly 7 CM j-invariants", cl.cm_js.size() == 7, join(got));
  bool integral = true;
  for (auto& k : cl.candidates)
    if (k.cm && k.j.get_den() != 1) integral = false;
  c.add("CM j-invariants are integers", integral);
  c.add("CM list equals the 7 rational CM values for discriminants -163,-67,-43,-11,-4,-8,-16",
        cl.cm_js == corrected);
  std::string miss;
  for (auto& j : stated)
    if (!std::binary_search(cl.cm_js.begin(), cl.cm_js.end(), j)) miss += str(j) + " ";
  c.add("CM list equals the stated list literally", cl.cm_js == stated,
        miss.empty() ? "" : "absent: " + miss + "(-2^18 3^3 5^3 11^3 is not a CM j-invariant; disc -43 gives -2^18 3^3 5^3)");
  std::vector<std::string> non;
  for (auto& j : cl.non_cm_js) non.push_back(str(j));
  c.add("non-CM candidates reported separately", true, join(non));
  c.time_limit(300);
}

void check2(Ctx& c, const RunConfig& cfg) {
  c.r.title = "generalized Fermat search";
  c.r.statement = "a^2 + 28 b^3 = 27 c^7: star solutions and the extra non-star primitive solution up to |c| <= c_max";
  auto star = search_star_solutions(28, cfg.c_max);
  std::set<std::tuple<std::string, std::string, std::string>> want, got;
  for (long s : {1L, -1L}) {
    want.insert({str(Int(s)), "-1", "-1"});
    want.insert({str(Int(27 * s)), "-3", "-1"});
    want.insert({str(Int(2521 * s)), "-61", "-1"});
  }
  std::vector<std::string> ts;
  for (auto& t : star) {
    got.insert({str(t.a), str(t.b), str(t.c)});
    ts.push_back(triple_str(t));
  }
  c.add("star solutions are exactly (+-1,-1,-1), (+-27,-3,-1), (+-2521,-61,-1)", got == want, join(ts));
  auto prim = search_primitive_solutions(28, cfg.c_max);
  Int big = Int(2) * 181 * 313 * 317;
  int seen = 0;
  bool flagged = true;
  for (auto& t : prim)
    if (abs(t.a) == big && t.b == 3593 && t.c == 90) {
      ++seen;
      flagged = flagged && !t.star && t.primitive;
    }
  c.add("primitive search contains (+-2*181*313*317, 3593, 90) flagged non-star", seen == 2 && flagged,
        std::to_string(prim.size()) + " primitive solutions");
  bool superset = true;
  for (auto& t : star)
    if (std::find(prim.begin(), prim.end(), t) == prim.end()) superset = false;
  c.add("primitive list contains every star solution", superset);
  c.time_limit(900);
}

void check3(Ctx& c, const RunConfig& cfg) {
  c.r.title = "minimal twist models";
  c.r.statement = "the -3 twist minimal at 3 of the Frey curve recovers E1, E2 and y^2 = x^3 - x^2 - 142x + 701";
  auto a = twist_minus3_minimal(1, -1, 28), b = twist_minus3_minimal(27, -3, 28),
       d = twist_minus3_minimal(2521, -61, 28);
  c.add("(1,-1) gives E1", a == curve_E1(), str(a));
  c.add("(27,-3) gives E2", b == e2_for(cfg), str(b));
  c.add("(2521,-61) gives [0,-1,0,-142,701]", d == EllCurveQ(0, -1, 0, -142, 701), str(d));
  c.add("(13,-1) with tag 196 gives E3", twist_minus3_minimal(13, -1, 196) == curve_E3());
  c.time_limit(1);
}

void check4(Ctx& c, const RunConfig& cfg) {
  c.r.title = "j-invariant ledger";
  c.r.statement = "j of the Frey curve equals 2^8 7 b^3 / c^7 (tag 28) or 2^8 7^2 b^3 / c^7 (tag 196); j-sets match the known points";
  auto formula = [](const Int& b, const Int& c7, int tag) {
    Rat j(Int(256) * (tag == 28 ? 7 : 49) * b * b * b, c7);
    j.canonicalize();
    return j;
  };
  std::set<Rat> J28, J196;
  bool ok = true;
  std::vector<std::string> bad;
  for (int tag : {28, 196})
    for (auto& t : search_star_solutions(tag, tag == 28 ? cfg.c_max : cfg.c_max_196)) {
      Rat j = invariants(build_frey(t)).j;
      if (j != formula(t.b, ipow(t.c, 7), tag)) {
        ok = false;
        bad.push_back(triple_str(t));
      }
      (tag == 28 ? J28 : J196).insert(j);
    }
  c.add("j(build_frey) matches the closed formula for every star solution", ok, join(bad));
  Rat j1 = formula(-1, -1, 28);
  Rat j4a = Rat(pw(2, 8) * 7 * pw(61, 3)), j4b(-pw(2, 4) * 7 * pw(1867, 3), pw(17, 7));
  j4b.canonicalize();
  c.add("X_E1 known j-list {2^8 7} lies in the tag-28 set", J28.count(Rat(1792)) && j1 == 1792);
  c.add("2^8 7 61^3 from X_E4 lies in the tag-28 set", J28.count(j4a) > 0);
  Int a = Int(8192) * 5 * 59957, b = -Int(256) * 1867, cc = Int(16) * 17;
  bool solves = a * a + 28 * b * b * b == 27 * ipow(cc, 7);
  c.add("non-primitive (2^13 5 59957, -2^8 1867, 2^4 17) solves the equation and gives -2^4 7 1867^3 / 17^7",
        solves && formula(b, ipow(cc, 7), 28) == j4b);
  Rat j2a = Rat(pw(2, 8) * 27 * 7), j2b(Int(14) * pw(3593, 3), pw(45, 7));
  j2b.canonicalize();
  c.add("X_E2 known j-list: 2^8 3^3 7 in the tag-28 set and (35918002, 3593, 90) gives 2 7 3593^3 / 45^7",
        J28.count(j2a) && formula(3593, pw(90, 7), 28) == j2b);
  c.add("tag-196 set contains 2^8 7^2 from X_E3", J196.count(Rat(256 * 49)) > 0);
  std::vector<std::string> s28;
  for (auto& j : J28) s28.push_back(str(j));
  c.add("tag-28 j-set has 3 elements", J28.size() == 3, join(s28));
}

struct TraceRow {
  const char* name;
  int curve;  // 1..3
  long twist;
  long a3, a5, a11, a13;
};

const std::vector<TraceRow>& trace_rows() {
  static const std::vector<TraceRow> rows = {
      {"f1", 1, 1, -1, -3, -3, -2},  {"f2", 1, -7, 1, 3, -3, 2},  {"f4", 2, 1, -3, 1, -1, -2},
      {"f5", 2, -7, 3, -1, -1, 2},   {"f7", 3, 1, -1, -1, 3, -6}, {"f8", 3, -7, 1, 1, 3, 6},
      {"f15", 1, 7, -1, 3, 3, 2},    {"f16", 1, -1, 1, -3, 3, -2}, {"f18", 2, 7, -3, -1, 1, 2},
      {"f19", 2, -1, 3, 1, 1, -2},   {"f23", 3, 7, -1, 1, -3, 6}, {"f24", 3, -1, 1, -1, -3, -6},
  };
  return rows;
}

void check5(Ctx& c, const RunConfig& cfg) {
  c.r.title = "mod-7 congruences and trace table";
  c.r.statement = "Sturm-bound congruences, the -7 twist identity, and a_l for l in {3,5,11,13} of the rational newforms";
  auto E2 = e2_for(cfg);
  auto r1 = mod7_congruent(build_frey_unchecked(13, -1, 196), curve_E3(), 56);
  c.add("F(13,-1,-1) congruent to E3 mod 7 up to 56", r1.congruent);
  auto r2 = mod7_congruent(curve_E1(), E2, 56);
  c.add("E1 and E2 not congruent, first failure at 3", !r2.congruent && r2.first_failure && *r2.first_failure == 3,
        r2.first_failure ? "first failure " + std::to_string(*r2.first_failure) : "");
  auto r3 = mod7_congruent(curve_E1(), quadratic_twist(curve_E1(), -7), 56, -7);
  c.add("E1 and its -7 twist agree up to the character", r3.congruent);
  std::vector<std::string> bad;
  for (auto& row : trace_rows()) {
    EllCurveQ E = row.curve == 1 ? curve_E1() : row.curve == 2 ? E2 : curve_E3();
    if (row.twist != 1) E = quadratic_twist(E, row.twist);
    long a[4] = {ap_trace(E, 3), ap_trace(E, 5), ap_trace(E, 11), ap_trace(E, 13)};
    if (a[0] != row.a3 || a[1] != row.a5 || a[2] != row.a11 || a[3] != row.a13) bad.push_back(row.name);
  }
  c.add("traces at 3, 5, 11, 13 match the q-expansions of the 12 rational forms", bad.empty(), join(bad));
}

void check6(Ctx& c, const RunConfig&) {
  c.r.title = "inertia exponents";
  c.r.statement = "Kraus pairs for v7(disc) = 2, 4, 10 and the two disjointness checks mod 6";
  auto a = kraus_inertia_from_valuation(2), b = kraus_inertia_from_valuation(4), d = kraus_inertia_from_valuation(10);
  c.add("v7 = 2 gives (1,0)", a.alpha == 1 && a.beta == 0);
  c.add("v7 = 4 gives (2,-1)", b.alpha == 2 && b.beta == -1);
  c.add("v7 = 10 gives (5,-4)", d.alpha == 5 && d.beta == -4);
  c.add("Frey curves: (1,-1) tag 28 has alpha 1, (13,-1) tag 196 has alpha 2",
        kraus_inertia(build_frey_unchecked(1, -1, 28)).alpha == 1 &&
            kraus_inertia(build_frey_unchecked(13, -1, 196)).alpha == 2);
  InertiaPair p34{4, -3}, p01{1, 0}, pm12{2, -1};
  auto s34 = exponent_set_mod6(p34), s01 = exponent_set_mod6(p01), sm12 = exponent_set_mod6(pm12);
  c.add("{0,1} and {3,4} are disjoint", exponent_sets_disjoint(p01, p34) &&
                                            std::set<int>(s34.begin(), s34.end()) == std::set<int>{3, 4} &&
                                            std::set<int>(s01.begin(), s01.end()) == std::set<int>{0, 1});
  c.add("{-1,2} and {0,1} are disjoint",
        exponent_sets_disjoint(pm12, p01) && std::set<int>(sm12.begin(), sm12.end()) == std::set<int>{5, 2});
}

void check7(Ctx& c, const RunConfig&) {
  c.r.title = "Cartan groups";
  c.r.statement = "orders 48/96/36/72 at level 7, the exotic ns group of order 2 p^3 (p^2 - 1) at 49, and the rank-1 subspace step";
  c.add("C_ns(7) has order 48", build_cartan(7, CartanKind::NonSplit, false).order() == 48);
  c.add("C_ns+(7) has order 96", build_cartan(7, CartanKind::NonSplit, true).order() == 96);
  c.add("C_sp(7) has order 36", build_cartan(7, CartanKind::Split, false).order() == 36);
  c.add("C_sp+(7) has order 72", build_cartan(7, CartanKind::Split, true).order() == 72);
  auto G = build_exotic(7, CartanKind::NonSplit);
  c.add("exotic ns group mod 49 has order 32928", G.order() == 32928 && G.reduce(7).order() == 96);
  for (auto k : {CartanKind::NonSplit, CartanKind::Split}) {
    auto r = verify_rank_subspace_lemma(7, k);
    c.add(std::string("subspace lemma over 57 planes, ") + (k == CartanKind::NonSplit ? "ns" : "sp"),
          r.holds && r.subspaces_checked == 57, std::to_string(r.subspaces_checked) + " checked");
  }
  c.time_limit(10);
}

void check8(Ctx& c, const RunConfig&) {
  c.r.title = "form identities";
  c.r.statement = "Res_x(f_ns, g_ns), cubic discriminants, and residue enumerations mod 49 and 16";
  UPoly r = resultant_in_x(f_ns(), g_ns());
  UPoly stated = UPoly::monomial(-pw(2, 21) * pw(7, 7), 10);
  c.add("Res_x(f_ns, g_ns) = -2^21 7^7 y^10", r == stated,
        "computed " + str(r) + "; a resultant of forms of degrees 3 and 7 is homogeneous of degree 21 in y");
  UPoly rs = resultant_in_x(g_ns(), f_ns());
  c.add("Res_x(g_ns, f_ns) = -2^21 7^7 y^21", rs == UPoly::monomial(-pw(2, 21) * pw(7, 7), 21), str(rs));
  c.add("disc f_ns = 2^6 7^2", discriminant_cubic(cubic_f1()) == 3136);
  c.add("disc of the other two cubics = 7^2",
        discriminant_cubic(cubic_f2()) == 49 && discriminant_cubic(cubic_f3()) == 49);
  auto no_zero = [](const BinaryForm& f, long m, long p) {
    for (long x = 0; x < m; ++x)
      for (long y = 0; y < m; ++y)
        if ((x % p || y % p) && mod_of(f.eval(x, y), m) == 0) return false;
    return true;
  };
  c.add("f_ns != 0 mod 49 on coprime pairs", no_zero(f_ns(), 49, 7));
  c.add("f_ns != 0 mod 16 on coprime pairs", no_zero(f_ns(), 16, 2));
  c.add("f_sp != 0 mod 49 on coprime pairs", no_zero(f_sp(), 49, 7));
}

void check9(Ctx& c, const RunConfig& cfg) {
  c.r.title = "quartic geometry";
  c.r.statement = "smoothness, bad reduction in {2,7}, known points, box searches, and the (-7,7) model against X_E2";
  for (int i = 1; i <= 4; ++i) {
    auto Q = reference_quartic(i);
    c.add("X_E" + std::to_string(i) + " smooth with bad primes in {2,7}", is_smooth(Q) && bad_reduction_within(Q, {2, 7}));
    bool on = true;
    for (auto& P : known_points(i)) on = on && on_curve(Q, P);
    c.add("X_E" + std::to_string(i) + " known points lie on the curve", on);
    auto want = known_points(i);
    std::sort(want.begin(), want.end());
    for (long h : {10L, cfg.point_height}) {
      auto got = box_search(Q, h);
      std::vector<std::string> s;
      for (auto& P : got) s.push_back(str(P));
      c.add("X_E" + std::to_string(i) + " box search at height " + std::to_string(h) + " equals the known set",
            got == want, join(s, " "));
      if (h == 10 && cfg.point_height == 10) break;
    }
  }
  auto X = build_XE7(-7, 7), P = reference_quartic(2);
  bool same = true;
  for (long p : {3L, 5L, 11L, 13L})
    for (int k = 1; k <= 2; ++k) same = same && count_points_gf(X, p, k) == count_points_gf(P, p, k);
  c.add("X_E(7) from (-7,7) and the reference X_E2 have equal counts over F_p, F_p^2 at 3,5,11,13", same);
}

void check10(Ctx& c, const RunConfig&) {
  c.r.title = "2-adic solvability";
  c.r.statement = "minus twists of E2 and E3 have no Q_2 points; reference models do";
  c.add("X_E2- from (-7,7) has no Q_2-point", qp_solvability(build_XE7_minus(-7, 7), 2).result == LocalResult::NoPoint);
  c.add("X_E3- has no Q_2-point", qp_solvability(build_XE7_minus(curve_E3()), 2).result == LocalResult::NoPoint);
  for (int i = 1; i <= 4; ++i) {
    auto r = qp_solvability(reference_quartic(i), 2);
    c.add("X_E" + std::to_string(i) + " has a Q_2-point", r.result == LocalResult::HasPoint,
          r.witness ? str(*r.witness) + " mod 2^" + std::to_string(r.level) : "");
  }
  c.time_limit(60);
}

void check11(Ctx& c, const RunConfig& cfg) {
  c.r.title = "Jacobian engine";
  c.r.statement = "group axioms, L(1) x = 0, exhaustive Pic0 oracle, torsion gcds, and 7 | #J for the third model";
  std::mt19937_64 rng(cfg.seed);
  for (int i = 1; i <= 4; ++i)
    for (long p : cfg.axiom_primes) {
      auto C = reference_curve(i, p);
      auto E = C.effective_degree3();
      std::uniform_int_distribution<size_t> pick(0, E.size() - 1);
      auto rnd = [&]() { return C.from_effective3(E[pick(rng)].V3); };
      auto O = C.zero();
      long fails = 0, kill = 0;
      for (long t = 0; t < cfg.axiom_triples; ++t) {
        auto a = rnd(), b = rnd(), d = rnd();
        bool ok = C.add(a, b) == C.add(b, a) && C.add(C.add(a, b), d) == C.add(a, C.add(b, d)) && C.add(a, O) == a &&
                  C.add(a, C.neg(a)) == O;
        fails += !ok;
        if (t < 20) kill += C.mul(C.group_order(), a) != O;
      }
      std::string tag = "X_E" + std::to_string(i) + " mod " + std::to_string(p);
      c.add(tag + ": group axioms on " + std::to_string(cfg.axiom_triples) + " random triples", fails == 0,
            std::to_string(fails) + " failures");
      c.add(tag + ": L(1) x = 0 on 20 classes", kill == 0);
    }
  {
    auto C = reference_curve(2, 3);
    auto all = enumerate_jacobian(C);
    long n1 = static_cast<long>(C.rational_points().size()), special = 0;
    for (auto& x : all) special += x.special();
    long eff = static_cast<long>(C.effective_degree3().size());
    c.add("X_E2 mod 3: exhaustive Pic0 has L(1) classes, fibres as Riemann-Roch predicts",
          static_cast<long>(all.size()) == C.group_order() && special == n1 && eff == static_cast<long>(all.size()) + 3 * n1,
          std::to_string(all.size()) + " classes, " + std::to_string(eff) + " effective divisors");
  }
  for (int i : {1, 2, 4}) {
    Int g = 0;
    std::vector<std::string> vals;
    for (long p : cfg.gcd_primes) {
      Int n = reference_curve(i, p).group_order();
      vals.push_back(str(n));
      g = gcd(g, n);
    }
    std::string detail = "L(1) = " + join(vals) + "; gcd " + str(g);
    if (g != 1) {
      // extend the prime set until the gcd drops to 1
      for (long p = 3; p < 200 && g != 1; p += 2)
        if (is_prime_small(p) && p != 7 &&
            std::find(cfg.gcd_primes.begin(), cfg.gcd_primes.end(), p) == cfg.gcd_primes.end()) {
          Int n = reference_curve(i, p).group_order();
          Int h = gcd(g, n);
          if (h != g) {
            g = h;
            detail += "; adding p = " + std::to_string(p) + " (L(1) = " + str(n) + ") gives gcd " + str(g);
          }
        }
    }
    std::string list;
    for (long p : cfg.gcd_primes) list += (list.empty() ? "" : ",") + std::to_string(p);
    bool literal = detail.find("; adding") == std::string::npos && g == 1;
    c.add("X_E" + std::to_string(i) + ": gcd of L(1) over {" + list + "} is 1", literal, detail);
  }
  std::vector<std::string> bad, seen;
  for (long p = 3; p <= cfg.seven_bound; ++p)
    if (is_prime_small(p) && (p % 7 == 1 || p % 7 == 6)) {
      Int n = reference_curve(3, p).group_order();
      seen.push_back(std::to_string(p));
      if (n % 7 != 0) bad.push_back(std::to_string(p));
    }
  c.add("X_E3: 7 | L(1) at p <= " + std::to_string(cfg.seven_bound) + ", p = +-1 mod 7", bad.empty(),
        "primes " + join(seen) + (bad.empty() ? "" : "; fails at " + join(bad)));
  c.time_limit(600);
}

void check12(Ctx& c, const RunConfig& cfg) {
  c.r.title = "relation among D1, D3, D4 on X_E3";
  c.r.statement = "2[D4] = -3[D1] + 3[D3] in J(F_p), D4 = (z = 0, x^2 - xy + 2y^2 = 0) - 2 P0";
  for (long p : cfg.relation_primes) {
    auto r = check_d4_relation(p);
    c.add("p = " + std::to_string(p) + ": 2[D4] = -3[D1] + 3[D3]", r.holds,
          r.negated_holds ? "2[D4] = 3[D1] - 3[D3] holds instead" : "neither sign holds");
  }
  c.time_limit(120);
}

void check13(Ctx& c, const RunConfig& cfg) {
  c.r.title = "sieve machinery";
  c.r.statement = "known points survive, coset intersection is idempotent and order-free, saturation certificate is sound, index lemma";
  const std::vector<std::string> D = {"D1", "D2", "D3"};
  auto run = run_sieve(3, cfg.sieve_p, cfg.sieve_aux, D);
  std::vector<std::string> surv;
  for (auto& P : run.survivors) surv.push_back("[" + std::to_string(P[0]) + ":" + std::to_string(P[1]) + ":" +
                                               std::to_string(P[2]) + "]");
  std::string aux;
  for (long q : cfg.sieve_aux) aux += " " + std::to_string(q);
  c.add("X_E3 gens D1,D2,D3, p = " + std::to_string(cfg.sieve_p) + ", S = {" + aux + " }: known points survive",
        run.known_survive, std::to_string(run.survivors.size()) + " surviving points: " + join(surv, " "));
  auto r2 = run_sieve(3, 5, {13}, D);
  c.add("X_E3 gens D1,D2,D3, p = 5, S = {13}: known points survive", r2.known_survive);
  auto spec = named_generators(3, D);
  auto a = omega(reference_curve(3, 3), spec), b = omega(reference_curve(3, 5), spec),
       d = omega(reference_curve(3, 13), spec);
  auto same = [](const CosetSystem& x, const CosetSystem& y) {
    auto u = x.reps, v = y.reps;
    std::sort(u.begin(), u.end());
    std::sort(v.begin(), v.end());
    return x.L == y.L && u == v;
  };
  c.add("intersection is idempotent", same(intersect_systems(a.sys, a.sys), a.sys) &&
                                          same(intersect_systems(b.sys, full_system(3)), b.sys));
  auto s1 = sieve_intersect({a, b, d}, 0), s2 = sieve_intersect({d, b, a}, 2), s3 = sieve_intersect({b, a, d}, 1);
  c.add("intersection is order-independent", same(s1.meet, s2.meet) && same(s1.meet, s3.meet) &&
                                                  s1.survivors == s2.survivors && s1.survivors == s3.survivors);
  {
    auto C = reference_curve(2, 3);
    auto all = enumerate_jacobian(C);
    std::unordered_map<std::vector<std::uint32_t>, bool, KeyHash> twice;
    for (auto& x : all) twice[C.mul(2, x).key] = true;
    long agree = 0, unsound = 0, certified = 0;
    for (auto& y : all) {
      bool cert = not_divisible_certificate(C, y, 2), divisible = twice.count(y.key) > 0;
      if (cert) ++certified;
      if (cert && divisible) ++unsound;
      if (cert == !divisible) ++agree;
    }
    c.add("saturation certificate at p = 3, l = 2 agrees with exhaustive 2J(F_3)",
          unsound == 0 && agree == static_cast<long>(all.size()),
          std::to_string(certified) + " certified, " + std::to_string(agree) + "/" + std::to_string(all.size()) +
              " agree");
  }
  {
    auto inj = named_generators(3, D);
    inj.recipes[0].multiplier = 2;
    auto rep = saturation_check(reference_quartic(3), known_points(3)[0], inj, 2, {5, 17, 19, 23});
    c.add("saturation check rejects a 2-divisible generator set", !rep.saturated && !rep.used_primes.empty());
  }
  std::mt19937_64 rng(cfg.seed + 13);
  std::uniform_int_distribution<long> inv(1, 12), ng(1, 3), ent(0, 50);
  long ok = 0;
  for (long t = 0; t < cfg.index_lemma_instances; ++t) {
    std::vector<long> A{inv(rng)}, B{inv(rng)};
    if (t % 2) A.push_back(inv(rng));
    if (t % 3 == 0) B.push_back(inv(rng));
    std::vector<std::vector<long>> gens;
    for (long k = ng(rng); k > 0; --k) {
      std::vector<long> v;
      for (size_t i = 0; i < A.size() + B.size(); ++i) v.push_back(ent(rng));
      gens.push_back(v);
    }
    ok += verify_index_lemma(A, B, gens).holds;
  }
  c.add("index lemma on " + std::to_string(cfg.index_lemma_instances) + " random instances",
        ok == cfg.index_lemma_instances);
}
}  // namespace

CheckReport run_check(int id, const RunConfig& cfg) {
  using Fn = void (*)(Ctx&, const RunConfig&);
  static const Fn fns[14] = {nullptr, check1, check2,  check3,  check4,  check5,  check6,
                             check7,  check8, check9,  check10, check11, check12, check13};
  if (id < 1 || id > 13) throw std::invalid_argument("check ids are 1..13");
  Ctx c;
  c.r.id = id;
  try {
    fns[id](c, cfg);
  } catch (const std::exception& e) {
    c.add("check ran to completion", false, e.what());
  }
  c.r.seconds = since(c.t0);
  return c.r;
}

std::vector<CheckReport> verify_all(const RunConfig& cfg) {
  std::vector<int> ids = cfg.only;
  if (ids.empty())
    for (int i = 1; i <= 13; ++i) ids.push_back(i);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<CheckReport> out;
  if (cfg.jobs <= 1) {
    for (int id : ids) out.push_back(run_check(id, cfg));
    return out;
  }
  std::vector<std::future<CheckReport>> running;
  size_t next = 0;
  while (next < ids.size() || !running.empty()) {
    while (next < ids.size() && running.size() < static_cast<size_t>(cfg.jobs))
      running.push_back(std::async(std::launch::async, run_check, ids[next++], std::cref(cfg)));
    out.push_back(running.front().get());
    running.erase(running.begin());
  }
  std::sort(out.begin(), out.end(), [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
  return out;
}

json report_json(const std::vector<CheckReport>& reps, const RunConfig& cfg, bool timings) {
  json checks = json::array();
  bool all = true;
  for (auto& r : reps) {
    json subs = json::array();
    for (auto& s : r.subs) subs.push_back({{"label", s.label}, {"pass", s.pass}, {"detail", s.detail}});
    json j = {{"id", r.id}, {"title", r.title}, {"statement", r.statement}, {"pass", r.pass()}, {"subchecks", subs}};
    if (timings) j["seconds"] = r.seconds;
    checks.push_back(j);
    all = all && r.pass();
  }
  json gmp = std::string(gmp_version);
  return {{"ok", all}, {"config", cfg.to_json()}, {"versions", {{"gmp", gmp}}}, {"checks", checks}};
}

std::string report_line(const CheckReport& r, bool timings) {
  std::ostringstream o;
  o << (r.pass() ? "PASS" : "FAIL") << " " << r.id << " " << r.title;
  size_t bad = 0;
  for (auto& s : r.subs) bad += !s.pass;
  o << " [" << (r.subs.size() - bad) << "/" << r.subs.size() << " subchecks]";
  for (auto& s : r.subs)
    if (!s.pass) o << " | failed: " << s.label << (s.detail.empty() ? "" : " (" + s.detail + ")");
  if (timings) {
    o.setf(std::ios::fixed);
    o.precision(2);
    o << " {" << r.seconds << " s}";
  }
  return o.str();
}

int model_index(const std::string& name) {
  if (name.size() == 3 && name.rfind("XE", 0) == 0 && name[2] >= '1' && name[2] <= '4') return name[2] - '0';
  throw std::invalid_argument("model must be one of XE1, XE2, XE3, XE4");
}

// ---------------- subcommands ----------------

json cmd_classify_cns49(long box) {
  auto cl = classify_cns49(box);
  json cand = json::array();
  for (auto& k : cl.candidates)
    cand.push_back({{"j", str(k.j)}, {"x", str(k.x)}, {"y", str(k.y)}, {"k", str(k.k)}, {"cm", k.cm}});
  json cm = json::array(), non = json::array();
  for (auto& j : cl.cm_js) cm.push_back(str(j));
  for (auto& j : cl.non_cm_js) non.push_back(str(j));
  return {{"ok", cl.cm_js.size() == 7}, {"box", box}, {"cm_j", cm}, {"non_cm_j", non}, {"candidates", cand}};
}

json cmd_fermat_search(int tag, long c_max, bool primitive) {
  if (tag != 28 && tag != 196) throw std::invalid_argument("tag must be 28 or 196");
  auto v = primitive ? search_primitive_solutions(tag, c_max) : search_star_solutions(tag, c_max);
  json sols = json::array();
  for (auto& t : v)
    sols.push_back({{"a", str(t.a)}, {"b", str(t.b)}, {"c", str(t.c)}, {"star", t.star}, {"primitive", t.primitive}});
  return {{"ok", true}, {"tag", tag}, {"c_max", c_max}, {"solutions", sols}};
}

json cmd_curves_build(const std::string& a, const std::string& b, const std::string& c, int tag) {
  Int A(a), B(b), C(c);
  auto t = make_triple(A, B, C, tag);
  json out = {{"triple", {str(A), str(B), str(C)}}, {"tag", tag}, {"star", t.star}};
  EllCurveQ E = t.star ? build_frey(t) : build_frey_unchecked(A, B, tag);
  auto I = invariants(E);
  out["frey"] = str(E);
  out["j"] = str(I.j);
  out["j_formula"] = str(frey_j(B, C, tag));
  out["disc"] = str(I.disc);
  out["twist_minus3_minimal"] = str(twist_minus3_minimal(A, B, tag));
  auto k = kraus_inertia(E);
  out["kraus"] = {k.alpha, k.beta};
  out["ok"] = I.j == frey_j(B, C, tag);
  return out;
}

json cmd_congruence_table() {
  RunConfig cfg;
  json rows = json::array();
  bool ok = true;
  for (auto& row : trace_rows()) {
    EllCurveQ E = row.curve == 1 ? curve_E1() : row.curve == 2 ? curve_E2() : curve_E3();
    if (row.twist != 1) E = quadratic_twist(E, row.twist);
    std::vector<long> got = {ap_trace(E, 3), ap_trace(E, 5), ap_trace(E, 11), ap_trace(E, 13)};
    std::vector<long> want = {row.a3, row.a5, row.a11, row.a13};
    ok = ok && got == want;
    rows.push_back({{"form", row.name},
                    {"curve", "E" + std::to_string(row.curve)},
                    {"twist", row.twist},
                    {"a_3,5,11,13", got},
                    {"match", got == want}});
  }
  Ctx c;
  check5(c, cfg);
  json subs = json::array();
  for (auto& s : c.r.subs) subs.push_back({{"label", s.label}, {"pass", s.pass}});
  return {{"ok", ok && c.r.pass()}, {"traces", rows}, {"congruences", subs}};
}

json cmd_cartan_verify(long p) {
  json out = {{"p", p}};
  bool ok = true;
  for (auto k : {CartanKind::NonSplit, CartanKind::Split}) {
    std::string n = k == CartanKind::NonSplit ? "ns" : "sp";
    out[n] = {{"cartan", build_cartan(p, k, false).order()}, {"normalizer", build_cartan(p, k, true).order()}};
    if (p <= 7) {
      auto G = build_exotic(p, k);
      auto r = verify_rank_subspace_lemma(p, k);
      out[n]["exotic_order"] = G.order();
      out[n]["exotic_expected"] = static_cast<size_t>(build_cartan(p, k, true).order() * p * p * p);
      out[n]["subspace_lemma"] = {{"holds", r.holds}, {"subspaces", r.subspaces_checked}};
      ok = ok && r.holds && G.order() == build_cartan(p, k, true).order() * static_cast<size_t>(p * p * p);
    }
  }
  out["ok"] = ok;
  return out;
}

json cmd_quartic_points(int model, long height) {
  auto Q = reference_quartic(model);
  auto pts = box_search(Q, height);
  auto want = known_points(model);
  std::sort(want.begin(), want.end());
  json P = json::array();
  for (auto& x : pts) P.push_back(str(x));
  return {{"ok", pts == want}, {"model", "XE" + std::to_string(model)}, {"height", height},
          {"quartic", str(Q.F)}, {"points", P}, {"smooth", is_smooth(Q)}};
}

json cmd_jacobian_zeta(int model, long p) {
  auto C = reference_curve(model, p);
  auto L = C.zeta();
  json coeffs = json::array();
  for (auto& x : L.c) coeffs.push_back(str(x));
  return {{"ok", L.functional_equation() && L.weil_bound_numeric()},
          {"model", "XE" + std::to_string(model)},
          {"p", p},
          {"N1", C.rational_points().size()},
          {"L", coeffs},
          {"L(1)", str(L.at_one())},
          {"functional_equation", L.functional_equation()},
          {"weil_bound", L.weil_bound_numeric()}};
}

json cmd_jacobian_relation(long p) {
  auto r = check_d4_relation(p);
  return {{"ok", r.holds},
          {"model", "XE3"},
          {"p", p},
          {"relation", "2[D4] = -3[D1] + 3[D3]"},
          {"holds", r.holds},
          {"negated_relation_holds", r.negated_holds},
          {"lhs_key", r.lhs},
          {"rhs_key", r.rhs}};
}

json cmd_sieve_run(int model, long p, const std::vector<long>& aux, const std::vector<std::string>& gens) {
  auto r = run_sieve(model, p, aux, gens);
  auto pt = [](const std::array<long, 3>& P) {
    return "[" + std::to_string(P[0]) + ":" + std::to_string(P[1]) + ":" + std::to_string(P[2]) + "]";
  };
  json surv = json::array(), known = json::array();
  for (auto& P : r.survivors) surv.push_back(pt(P));
  for (auto& P : r.known_reductions) known.push_back(pt(P));
  return {{"ok", r.known_survive},
          {"model", "XE" + std::to_string(model)},
          {"p", p},
          {"aux", aux},
          {"gens", gens},
          {"status", r.status},
          {"surviving_points", surv},
          {"surviving_classes", r.surviving_classes},
          {"combined_index", str(r.combined_index)},
          {"known_reductions", known},
          {"known_survive", r.known_survive},
          {"seconds", r.seconds}};
}

}  // namespace f237
