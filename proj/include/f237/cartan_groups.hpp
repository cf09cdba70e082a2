#pragma once
#include <array>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

namespace f237 {

struct MatModN {
  long N = 1;
  std::array<long, 4> e{};  // [[e0, e1], [e2, e3]]

  MatModN() = default;
  MatModN(long n, long a, long b, long c, long d);
  long det() const;
  bool invertible() const;
  MatModN operator*(const MatModN& o) const;
  MatModN reduce(long M) const;  // entries mod M (M | N)
  std::uint64_t key() const;
  static MatModN from_key(long N, std::uint64_t k);
  static MatModN identity(long N) { return MatModN(N, 1, 0, 0, 1); }
  bool operator==(const MatModN& o) const { return N == o.N && e == o.e; }
};

enum class CartanKind { Split, NonSplit };

class FiniteMatGroup {
 public:
  long N = 1;
  std::vector<MatModN> elements;  // sorted by key

  static FiniteMatGroup generate(long N, const std::vector<MatModN>& gens);
  static FiniteMatGroup from_elements(long N, std::vector<MatModN> els);
  size_t order() const { return elements.size(); }
  bool contains(const MatModN& g) const;
  FiniteMatGroup reduce(long M) const;
  // direct checks by enumeration
  bool closed() const;
  bool has_identity() const;
  bool has_inverses() const;

 private:
  std::unordered_set<std::uint64_t> keys_;
  void index();
};

long least_nonresidue(long p);
FiniteMatGroup build_cartan(long p, CartanKind kind, bool normalizer);
FiniteMatGroup build_exotic(long p, CartanKind kind);
// basis of V_kind over F_p as 2x2 integer matrices
std::vector<MatModN> v_basis(long p, CartanKind kind);
// I + p*V as a subgroup of GL2(Z/p^2)
FiniteMatGroup unipotent_kernel(long p, CartanKind kind);

struct SubspaceLemmaResult {
  bool holds = false;
  long subspaces_checked = 0;
  std::optional<std::array<std::array<long, 3>, 2>> counterexample;  // basis coordinates
};
SubspaceLemmaResult verify_rank_subspace_lemma(long p, CartanKind kind);

}  // namespace f237
