#pragma once

#include "dendra/error.hpp"
#include "dendra/matrix.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace dendra {

/// I + v*E_{i,j} in dimension n, with 1-based indices i != j.
GroupMatrix elementary(std::size_t n, std::size_t i, std::size_t j, const Integer& v,
                       std::optional<std::uint64_t> modulus = std::nullopt);

/// a^{-1} b^{-1} a b.
GroupMatrix commutator(const GroupMatrix& a, const GroupMatrix& b);

/// The six 3x3 unipotent elements a_1..a_6 with off-diagonal entry r at
/// (1,2), (1,3), (2,3), (2,1), (3,1), (3,2) respectively.
std::array<GroupMatrix, 6> six_generators(const Integer& r);

/// u_{i,j}^l, u_{i,j+1}^l, u_{j,j+1}^l, u_{j,i}^l, u_{j+1,i}^l, u_{j+1,j}^l in
/// SL_n(Z); requires n >= 3 and 1 <= i < j <= n-1.
std::array<GroupMatrix, 6> six_generators_embedded(std::size_t n, std::size_t i, std::size_t j,
                                                   const Integer& l);

struct HexagonCheck {
  int index = 0;              // i in 1..6
  bool commutes = false;      // [a_i, a_{i+1}] == e
  bool power_relation = false;  // [a_{i-1}, a_{i+1}] == a_i^{+r} or a_i^{-r}
  int sign = 0;               // +1 / -1 when power_relation holds, else 0
};

struct HexagonReport {
  std::vector<HexagonCheck> checks;
  bool pass = false;
  std::optional<int> first_failure;
};

/// Cyclic indices are taken mod 6; the sign of a_i^{\pm r} is observed, never assumed.
HexagonReport verify_hexagon_relations(std::span<const GroupMatrix> gens, const Integer& r);

/// Checks (b^{-1}c^q)^m (a^{-1}c^p)^m b^m a^m == [b^m, a^m] c^{m(p+q)}
/// == c^{-m^2 r + m(p+q)} exactly.
/// Throws unless [a,b] == c^r and c commutes with a and b.
bool verify_ll_identity(const GroupMatrix& a, const GroupMatrix& b, const GroupMatrix& c,
                        long r, long p, long q, long m);

/// a \in \Gamma(k), i.e. a == I mod k. Throws if det(a) != 1.
bool congruence_membership(const GroupMatrix& a, std::uint64_t k);

/// Levels k in [2, max_level] with a \in \Gamma(k); no minimality claim.
std::vector<std::uint64_t> congruence_levels(const GroupMatrix& a, std::uint64_t max_level);

/// Finite group of n x n matrices over Z/mZ stored as packed residues.
///
/// Elements are kept in canonical (row-major lexicographic) order; the
/// index of an element is stable for the lifetime of the group.
class FiniteMatrixGroup {
 public:
  using Index = std::size_t;

  std::size_t dim() const noexcept { return n_; }
  std::uint64_t modulus() const noexcept { return m_; }
  std::size_t order() const noexcept { return count_; }

  std::span<const std::uint32_t> entries(Index i) const {
    return {data_.data() + i * n_ * n_, n_ * n_};
  }
  GroupMatrix element(Index i) const;

  std::optional<Index> find(std::span<const std::uint32_t> entries) const;
  std::optional<Index> find(const GroupMatrix& g) const;

  Index identity_index() const noexcept { return identity_; }
  Index multiply(Index a, Index b) const;
  Index inverse(Index a) const;

  const std::vector<GroupMatrix>& generators() const noexcept { return generators_; }
  const std::vector<Index>& generator_indices() const noexcept { return generator_indices_; }

  /// Product of packed matrices mod m, written into out (size n*n).
  void multiply_into(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                     std::span<std::uint32_t> out) const;

 private:
  friend FiniteMatrixGroup enumerate_group(std::size_t, std::uint64_t, std::span<const GroupMatrix>,
                                           std::size_t);
  std::string key(std::span<const std::uint32_t> entries) const;

  std::size_t n_ = 0;
  std::uint64_t m_ = 2;
  std::size_t count_ = 0;
  std::vector<std::uint32_t> data_;
  std::unordered_map<std::string, Index> index_;
  Index identity_ = 0;
  std::vector<GroupMatrix> generators_;
  std::vector<Index> generator_indices_;
};

/// Breadth-first closure of the generators (and their inverses) inside
/// GL_n(Z/mZ). Throws CapExceeded("group too large for cap") past `cap`.
FiniteMatrixGroup enumerate_group(std::size_t n, std::uint64_t m, std::span<const GroupMatrix> gens,
                                  std::size_t cap = kDefaultElementCap);

/// True iff the subset is a subgroup (contains e and is closed under products).
bool is_subgroup(const FiniteMatrixGroup& g, std::span<const FiniteMatrixGroup::Index> subset);

/// Kernel of the left action of g on g/h: the largest normal subgroup of g
/// inside h. Result sorted ascending. Throws if h is not a subgroup.
std::vector<FiniteMatrixGroup::Index> normal_core(const FiniteMatrixGroup& g,
                                                  std::span<const FiniteMatrixGroup::Index> h);

/// |SL_n(Z/p^k)| for prime p, computed from the closed-form order formula.
Integer special_linear_order(std::size_t n, std::uint64_t p, std::size_t k);

bool is_prime(std::uint64_t p);

}  // namespace dendra
