#include "f237/cartan_groups.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "f237/exact_arith.hpp"

namespace f237 {

namespace {
long md(long a, long n) { return ((a % n) + n) % n; }
}  // namespace

MatModN::MatModN(long n, long a, long b, long c, long d)
    : N(n), e{md(a, n), md(b, n), md(c, n), md(d, n)} {}

long MatModN::det() const { return md(e[0] * e[3] - e[1] * e[2], N); }

bool MatModN::invertible() const {
  long d = det(), a = N, b = d;
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a == 1;
}

MatModN MatModN::operator*(const MatModN& o) const {
  if (N != o.N) throw std::invalid_argument("modulus mismatch");
  return MatModN(N, e[0] * o.e[0] + e[1] * o.e[2], e[0] * o.e[1] + e[1] * o.e[3],
                 e[2] * o.e[0] + e[3] * o.e[2], e[2] * o.e[1] + e[3] * o.e[3]);
}

MatModN MatModN::reduce(long M) const {
  if (N % M) throw std::invalid_argument("reduction modulus must divide N");
  return MatModN(M, e[0], e[1], e[2], e[3]);
}

std::uint64_t MatModN::key() const {
  std::uint64_t n = static_cast<std::uint64_t>(N);
  return ((static_cast<std::uint64_t>(e[0]) * n + e[1]) * n + e[2]) * n + e[3];
}

MatModN MatModN::from_key(long N, std::uint64_t k) {
  std::uint64_t n = static_cast<std::uint64_t>(N);
  long d = k % n;
  k /= n;
  long c = k % n;
  k /= n;
  long b = k % n;
  k /= n;
  return MatModN(N, static_cast<long>(k), b, c, d);
}

void FiniteMatGroup::index() {
  std::sort(elements.begin(), elements.end(),
            [](const MatModN& a, const MatModN& b) { return a.key() < b.key(); });
  keys_.clear();
  for (auto& g : elements) keys_.insert(g.key());
}

FiniteMatGroup FiniteMatGroup::generate(long N, const std::vector<MatModN>& gens) {
  FiniteMatGroup G;
  G.N = N;
  std::unordered_set<std::uint64_t> seen;
  std::vector<MatModN> frontier{MatModN::identity(N)};
  seen.insert(frontier[0].key());
  std::vector<MatModN> all = frontier;
  while (!frontier.empty()) {
    std::vector<MatModN> next;
    for (auto& g : frontier)
      for (auto& s : gens) {
        MatModN h = g * s;
        if (seen.insert(h.key()).second) {
          next.push_back(h);
          all.push_back(h);
        }
      }
    frontier.swap(next);
  }
  G.elements = std::move(all);
  G.index();
  return G;
}

FiniteMatGroup FiniteMatGroup::from_elements(long N, std::vector<MatModN> els) {
  FiniteMatGroup G;
  G.N = N;
  G.elements = std::move(els);
  G.index();
  G.elements.erase(std::unique(G.elements.begin(), G.elements.end()), G.elements.end());
  return G;
}

bool FiniteMatGroup::contains(const MatModN& g) const { return keys_.count(g.key()) > 0; }

FiniteMatGroup FiniteMatGroup::reduce(long M) const {
  std::vector<MatModN> v;
  for (auto& g : elements) v.push_back(g.reduce(M));
  return from_elements(M, v);
}

bool FiniteMatGroup::closed() const {
  for (auto& a : elements)
    for (auto& b : elements)
      if (!contains(a * b)) return false;
  return true;
}

bool FiniteMatGroup::has_identity() const { return contains(MatModN::identity(N)); }

bool FiniteMatGroup::has_inverses() const {
  // finite and closed: each element has some power equal to the identity inside the set
  for (auto& g : elements) {
    MatModN h = g;
    bool found = false;
    for (size_t i = 0; i <= elements.size(); ++i) {
      MatModN hg = h * g;
      if (hg == MatModN::identity(N)) {
        found = contains(h);
        break;
      }
      h = hg;
    }
    if (!found && !(g == MatModN::identity(N))) return false;
  }
  return true;
}

long least_nonresidue(long p) {
  for (long e = 2; e < p; ++e)
    if (powmod(e, (p - 1) / 2, p) == static_cast<std::uint64_t>(p - 1)) return e;
  throw std::invalid_argument("no non-residue");
}

namespace {
void guard_prime(long p, long limit) {
  if (p % 2 == 0 || !is_prime_small(p)) throw std::invalid_argument("p must be an odd prime");
  if (p > limit) throw std::invalid_argument("p exceeds enumeration guard");
}

std::vector<MatModN> cartan_elements(long N, long p, CartanKind kind) {
  long eps = least_nonresidue(p);
  std::vector<MatModN> v;
  for (long a = 0; a < N; ++a)
    for (long b = 0; b < N; ++b) {
      MatModN g = kind == CartanKind::NonSplit ? MatModN(N, a, eps * b, b, a) : MatModN(N, a, 0, 0, b);
      if (g.invertible() && g.det() % p != 0) v.push_back(g);
    }
  return v;
}

MatModN normalizer_extra(long N, CartanKind kind) {
  return kind == CartanKind::NonSplit ? MatModN(N, 1, 0, 0, -1) : MatModN(N, 0, 1, 1, 0);
}
}  // namespace

FiniteMatGroup build_cartan(long p, CartanKind kind, bool normalizer) {
  guard_prime(p, 13);
  auto els = cartan_elements(p, p, kind);
  if (normalizer) {
    MatModN w = normalizer_extra(p, kind);
    size_t n = els.size();
    for (size_t i = 0; i < n; ++i) els.push_back(els[i] * w);
  }
  return FiniteMatGroup::from_elements(p, els);
}

std::vector<MatModN> v_basis(long p, CartanKind kind) {
  long eps = least_nonresidue(p);
  if (kind == CartanKind::NonSplit)
    return {MatModN(p * p, 1, 0, 0, 0), MatModN(p * p, 0, eps, -1, 0), MatModN(p * p, 0, 0, 0, 1)};
  return {MatModN(p * p, 1, 0, 0, 1), MatModN(p * p, 0, 1, 0, 0), MatModN(p * p, 0, 0, 1, 0)};
}

FiniteMatGroup unipotent_kernel(long p, CartanKind kind) {
  long N = p * p;
  auto B = v_basis(p, kind);
  std::vector<MatModN> els;
  for (long s = 0; s < p; ++s)
    for (long t = 0; t < p; ++t)
      for (long u = 0; u < p; ++u) {
        MatModN m(N, 1, 0, 0, 1);
        for (int i = 0; i < 4; ++i) m.e[i] = md(m.e[i] + p * (s * B[0].e[i] + t * B[1].e[i] + u * B[2].e[i]), N);
        els.push_back(m);
      }
  return FiniteMatGroup::from_elements(N, els);
}

namespace {
// closure with an abort once the set exceeds cap
std::optional<FiniteMatGroup> generate_capped(long N, const std::vector<MatModN>& gens, size_t cap) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<MatModN> frontier{MatModN::identity(N)}, all = frontier;
  seen.insert(frontier[0].key());
  while (!frontier.empty()) {
    std::vector<MatModN> next;
    for (auto& g : frontier)
      for (auto& s : gens) {
        MatModN h = g * s;
        if (seen.insert(h.key()).second) {
          if (seen.size() > cap) return std::nullopt;
          next.push_back(h);
          all.push_back(h);
        }
      }
    frontier.swap(next);
  }
  return FiniteMatGroup::from_elements(N, all);
}

std::vector<MatModN> small_generating_set(const FiniteMatGroup& G) {
  std::vector<MatModN> gens;
  size_t have = 1;
  for (auto& g : G.elements) {
    auto trial = gens;
    trial.push_back(g);
    size_t n = FiniteMatGroup::generate(G.N, trial).order();
    if (n > have) {
      gens = trial;
      have = n;
      if (have == G.order()) break;
    }
  }
  return gens;
}
}  // namespace

FiniteMatGroup build_exotic(long p, CartanKind kind) {
  guard_prime(p, 7);
  long N = p * p;
  FiniteMatGroup Cp = build_cartan(p, kind, true);
  FiniteMatGroup K = unipotent_kernel(p, kind);
  size_t target = Cp.order() * K.order();
  auto gens = small_generating_set(Cp);
  // C spans M2(F_p)/V; lifts of g modulo I+pV are g + p*t*(g C)
  MatModN C = kind == CartanKind::NonSplit ? MatModN(p, 0, 0, 1, 0) : MatModN(p, 1, 0, 0, 0);
  std::vector<MatModN> kgens = v_basis(p, kind);
  for (auto& b : kgens)
    for (int i = 0; i < 4; ++i) b.e[i] = (p * b.e[i] + (i == 0 || i == 3 ? 1 : 0)) % N;
  size_t k = gens.size();
  long combos = 1;
  for (size_t i = 0; i < k; ++i) combos *= p;
  for (long code = 0; code < combos; ++code) {
    std::vector<MatModN> all = kgens;
    long c = code;
    for (size_t i = 0; i < k; ++i) {
      long t = c % p;
      c /= p;
      MatModN gc = gens[i] * C;
      MatModN l(N, gens[i].e[0], gens[i].e[1], gens[i].e[2], gens[i].e[3]);
      for (int j = 0; j < 4; ++j) l.e[j] = (l.e[j] + p * t * gc.e[j]) % N;
      all.push_back(l);
    }
    auto G = generate_capped(N, all, target);
    if (G && G->order() == target) return *G;
  }
  throw std::runtime_error("no subgroup of the expected order");
}

SubspaceLemmaResult verify_rank_subspace_lemma(long p, CartanKind kind) {
  guard_prime(p, 7);
  auto B = v_basis(p, kind);
  // coordinates (s,t,u) -> determinant mod p of s B0 + t B1 + u B2
  auto det_at = [&](long s, long t, long u) {
    long e[4];
    for (int i = 0; i < 4; ++i) e[i] = s * B[0].e[i] + t * B[1].e[i] + u * B[2].e[i];
    return md(e[0] * e[3] - e[1] * e[2], p);
  };
  SubspaceLemmaResult res;
  res.holds = true;
  // 2-dim subspaces of F_p^3 in reduced row echelon form
  std::vector<std::array<std::array<long, 3>, 2>> subs;
  for (long a = 0; a < p; ++a)
    for (long b = 0; b < p; ++b) subs.push_back({{{1, 0, a}, {0, 1, b}}});
  for (long a = 0; a < p; ++a) subs.push_back({{{1, a, 0}, {0, 0, 1}}});
  subs.push_back({{{0, 1, 0}, {0, 0, 1}}});
  for (auto& S : subs) {
    ++res.subspaces_checked;
    bool all_singular = true;
    for (long x = 0; x < p && all_singular; ++x)
      for (long y = 0; y < p && all_singular; ++y) {
        long s = x * S[0][0] + y * S[1][0], t = x * S[0][1] + y * S[1][1], u = x * S[0][2] + y * S[1][2];
        if (det_at(s, t, u) != 0) all_singular = false;
      }
    if (all_singular) {
      res.holds = false;
      if (!res.counterexample) res.counterexample = S;
    }
  }
  return res;
}

}  // namespace f237
