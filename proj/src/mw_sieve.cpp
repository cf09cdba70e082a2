#include "f237/mw_sieve.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <stdexcept>

namespace f237 {

DivisorClass ClassRecipe::instantiate(const SmoothQuarticFp& C) const {
  DivisorClass x = kind == PointDifference ? C.abel_jacobi(P) : C.class_from_section(h);
  return multiplier == 1 ? x : C.mul(multiplier, x);
}

std::vector<DivisorClass> GeneratorSpec::instantiate(const SmoothQuarticFp& C) const {
  std::vector<DivisorClass> v;
  for (auto& r : recipes) v.push_back(r.instantiate(C));
  return v;
}

namespace {
// index of the known point named by a generator, or -1
int point_index(int model, const std::string& name) {
  if (model == 3 && (name == "D1" || name == "D2" || name == "D3")) return name[1] - '0';
  if ((model == 2 || model == 4) && name == "P1") return 1;
  return -1;
}
}  // namespace

GeneratorSpec named_generators(int model, const std::vector<std::string>& names) {
  auto pts = known_points(model);
  GeneratorSpec g;
  std::set<std::string> seen;
  for (auto& n : names) {
    int i = point_index(model, n);
    if (i < 0) throw std::invalid_argument("unknown generator " + n + " for model " + std::to_string(model));
    if (!seen.insert(n).second) throw std::invalid_argument("repeated generator " + n);
    ClassRecipe r;
    r.name = n;
    r.kind = ClassRecipe::PointDifference;
    r.P = pts[i];
    g.recipes.push_back(r);
  }
  return g;
}

std::vector<IntVec> known_point_coefficients(int model, const std::vector<std::string>& names) {
  size_t r = names.size();
  std::vector<IntVec> out{IntVec(r, Int(0))};  // the base point
  for (size_t k = 0; k < r; ++k) {
    IntVec e(r, Int(0));
    e[k] = 1;
    out.push_back(e);
  }
  (void)model;
  return out;
}

bool CosetSystem::contains(const IntVec& v) const {
  IntVec w = L.reduce(v);
  return std::find(reps.begin(), reps.end(), w) != reps.end();
}

CosetSystem full_system(size_t r) {
  CosetSystem s;
  s.r = r;
  s.L = Lattice::full(r);
  s.reps = {IntVec(r, Int(0))};
  return s;
}

OmegaResult omega(const SmoothQuarticFp& C, const GeneratorSpec& gens, size_t guard) {
  OmegaResult res;
  res.q = C.p();
  res.group_order = C.group_order();
  auto T = subgroup_enumerate(C, gens.instantiate(C), guard);
  res.subgroup_order = T.order();
  res.sys.r = gens.rank();
  res.sys.L = T.kernel;
  for (auto& P : C.rational_points()) {
    auto it = T.coeffs.find(C.abel_jacobi(P).key);
    if (it == T.coeffs.end()) continue;
    res.points.push_back(P);
    res.sys.reps.push_back(res.sys.L.reduce(it->second));
  }
  return res;
}

CosetSystem intersect_systems(const CosetSystem& a, const CosetSystem& b) {
  if (a.r != b.r) throw std::invalid_argument("rank mismatch");
  CosetSystem s;
  s.r = a.r;
  s.L = lattice_intersection(a.L, b.L);
  std::set<IntVec> reps;
  for (auto& x : a.reps)
    for (auto& y : b.reps)
      if (auto c = coset_meet(a.L, x, b.L, y)) reps.insert(s.L.reduce(*c));
  s.reps.assign(reps.begin(), reps.end());
  return s;
}

SieveResult sieve_intersect(const std::vector<OmegaResult>& systems, size_t target) {
  if (systems.empty() || target >= systems.size()) throw std::invalid_argument("no target system");
  SieveResult res;
  res.meet = full_system(systems[0].sys.r);
  for (auto& s : systems) res.meet = intersect_systems(res.meet, s.sys);
  const OmegaResult& t = systems[target];
  std::set<IntVec> hit;
  for (auto& c : res.meet.reps) hit.insert(t.sys.L.reduce(c));
  for (size_t i = 0; i < t.points.size(); ++i)
    if (hit.count(t.sys.reps[i])) res.survivors.push_back(t.points[i]);
  return res;
}

std::vector<IntVec> y_ell(long ell, size_t r) {
  std::vector<IntVec> out;
  for (size_t lead = 0; lead < r; ++lead) {
    size_t tail = r - lead - 1;
    long count = 1;
    for (size_t i = 0; i < tail; ++i) count *= ell;
    for (long code = 0; code < count; ++code) {
      IntVec v(r, Int(0));
      v[lead] = 1;
      long c = code;
      for (size_t i = lead + 1; i < r; ++i) {
        v[i] = c % ell;
        c /= ell;
      }
      out.push_back(v);
    }
  }
  return out;
}

bool not_divisible_certificate(const SmoothQuarticFp& C, const DivisorClass& y, long ell) {
  Int M = C.group_order();
  if (M % ell != 0) return false;
  return C.mul(M / ell, y) != C.zero();
}

SaturationReport saturation_check(const PlaneQuarticQ& Q, const Pt3& base, const GeneratorSpec& gens, long ell,
                                  const std::vector<long>& aux_primes) {
  SaturationReport rep;
  auto Y = y_ell(ell, gens.rank());
  std::vector<bool> covered(Y.size(), false);
  for (long s : aux_primes) {
    SmoothQuarticFp C(Q, s, base);
    Int M = C.group_order();
    if (M % ell != 0 || val(M, Int(ell)) != 1) {
      rep.skipped_primes.push_back(s);
      continue;
    }
    rep.used_primes.push_back(s);
    // (M/ell) y is linear in y
    std::vector<DivisorClass> h;
    for (auto& g : gens.instantiate(C)) h.push_back(C.mul(M / ell, g));
    for (size_t k = 0; k < Y.size(); ++k) {
      if (covered[k]) continue;
      DivisorClass t = C.zero();
      for (size_t i = 0; i < h.size(); ++i)
        if (Y[k][i] != 0) t = C.add(t, C.mul(Y[k][i], h[i]));
      if (t != C.zero()) covered[k] = true;
    }
  }
  for (size_t k = 0; k < Y.size(); ++k)
    if (!covered[k]) rep.uncovered.push_back(Y[k]);
  rep.saturated = rep.uncovered.empty();
  return rep;
}

IndexLemmaReport verify_index_lemma(const std::vector<long>& A, const std::vector<long>& B,
                                    const std::vector<std::vector<long>>& gens) {
  std::vector<long> mods = A;
  mods.insert(mods.end(), B.begin(), B.end());
  long nA = 1, nB = 1;
  for (long a : A) nA *= a;
  for (long b : B) nB *= b;
  if (nA * nB > 1000000) throw std::invalid_argument("group exceeds size guard");
  size_t n = mods.size();
  auto encode = [&](const std::vector<long>& v) {
    long k = 0;
    for (size_t i = 0; i < n; ++i) k = k * mods[i] + v[i];
    return k;
  };
  std::vector<std::vector<long>> g;
  for (auto v : gens) {
    if (v.size() != n) throw std::invalid_argument("generator length");
    for (size_t i = 0; i < n; ++i) v[i] = ((v[i] % mods[i]) + mods[i]) % mods[i];
    g.push_back(v);
  }
  std::vector<char> seen(static_cast<size_t>(nA * nB), 0);
  std::vector<std::vector<long>> frontier{std::vector<long>(n, 0)};
  seen[0] = 1;
  std::set<long> pa, pb;
  auto project = [&](const std::vector<long>& v) {
    long ka = 0, kb = 0;
    for (size_t i = 0; i < A.size(); ++i) ka = ka * mods[i] + v[i];
    for (size_t i = A.size(); i < n; ++i) kb = kb * mods[i] + v[i];
    pa.insert(ka);
    pb.insert(kb);
  };
  long order = 1;
  project(frontier[0]);
  while (!frontier.empty()) {
    std::vector<std::vector<long>> next;
    for (auto& x : frontier)
      for (auto& s : g) {
        std::vector<long> y(n);
        for (size_t i = 0; i < n; ++i) y[i] = (x[i] + s[i]) % mods[i];
        long k = encode(y);
        if (seen[k]) continue;
        seen[k] = 1;
        ++order;
        project(y);
        next.push_back(std::move(y));
      }
    frontier.swap(next);
  }
  long a = static_cast<long>(pa.size()), b = static_cast<long>(pb.size());
  IndexLemmaReport rep;
  rep.index = Int(nA * nB / order);
  rep.bound = Int(nA / a) * Int(nB / b) * Int(std::gcd(a, b));
  rep.holds = rep.bound % rep.index == 0;
  return rep;
}

SieveRunReport run_sieve(int model, long p, const std::vector<long>& aux, const std::vector<std::string>& gens) {
  static const int known_rank[5] = {0, 1, 2, 3, 2};
  auto t0 = std::chrono::steady_clock::now();
  SieveRunReport rep;
  rep.model = model;
  rep.p = p;
  rep.aux = aux;
  rep.gens = gens;
  GeneratorSpec spec = named_generators(model, gens);
  rep.status = static_cast<int>(gens.size()) == known_rank[model] ? "FULL" : "PARTIAL";
  auto Q = reference_quartic(model);
  auto base = known_points(model)[0];
  std::vector<OmegaResult> sys;
  std::vector<long> primes{p};
  primes.insert(primes.end(), aux.begin(), aux.end());
  for (long q : primes) sys.push_back(omega(SmoothQuarticFp(Q, q, base), spec));
  auto res = sieve_intersect(sys, 0);
  rep.survivors = res.survivors;
  rep.combined_index = res.meet.L.index();
  rep.surviving_classes = res.meet.reps.size();
  SmoothQuarticFp Cp(Q, p, base);
  auto pts = known_points(model);
  rep.known_survive = true;
  auto coeffs = known_point_coefficients(model, gens);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    size_t idx = i == 0 ? 0 : static_cast<size_t>(point_index(model, gens[i - 1]));
    auto P = Cp.reduce_point(pts[idx]);
    rep.known_reductions.push_back(P);
    bool in_meet = res.meet.contains(coeffs[i]);
    bool listed = std::find(rep.survivors.begin(), rep.survivors.end(), P) != rep.survivors.end();
    rep.known_survive = rep.known_survive && in_meet && listed;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace f237
