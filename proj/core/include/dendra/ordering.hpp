#pragma once

#include "dendra/error.hpp"
#include "dendra/matrix.hpp"
#include "dendra/pl_homeo.hpp"
#include "dendra/tower.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace dendra {

/// A finite subset of a matrix group, kept in canonical (matrix) order.
///
/// A word is a list of letters +k / -k naming generator k-1 or its inverse;
/// the element of a word is the left-to-right product of its letters.
class Ball {
 public:
  Ball() = default;
  /// Deduplicates and sorts; `words` may be empty or parallel to `elements`.
  Ball(std::vector<GroupMatrix> elements, std::vector<GroupMatrix> generators,
       std::vector<std::string> generator_names, std::size_t radius,
       std::vector<std::vector<int>> words = {});

  std::size_t size() const noexcept { return elements_.size(); }
  const GroupMatrix& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<GroupMatrix>& elements() const noexcept { return elements_; }
  std::optional<std::size_t> find(const GroupMatrix& g) const;
  std::size_t index(const GroupMatrix& g) const;  // throws "element not in ball"
  bool contains(const GroupMatrix& g) const { return find(g).has_value(); }
  std::optional<std::size_t> identity_index() const;

  const std::vector<GroupMatrix>& generators() const noexcept { return generators_; }
  const std::vector<std::string>& generator_names() const noexcept { return generator_names_; }
  std::size_t radius() const noexcept { return radius_; }

  /// Shortest word found by breadth-first generation; empty when unknown.
  const std::vector<int>& word(std::size_t i) const { return words_.at(i); }
  bool has_words() const noexcept { return !words_.empty(); }
  /// Element indices in breadth-first discovery order (canonical order when unknown).
  const std::vector<std::size_t>& discovery_order() const noexcept { return discovery_; }
  /// The word of element i rendered with generator names, e.g. "a^2*b^-1", "e".
  std::string label(std::size_t i) const;

 private:
  std::vector<GroupMatrix> elements_;
  std::unordered_map<GroupMatrix, std::size_t, GroupMatrixHash> index_;
  std::vector<GroupMatrix> generators_;
  std::vector<std::string> generator_names_;
  std::size_t radius_ = 0;
  std::vector<std::vector<int>> words_;
  std::vector<std::size_t> discovery_;
};

/// All products of at most `radius` generators and inverses.
/// Throws CapExceeded("ball exceeds cap") past `cap` elements.
Ball ball_generate(std::span<const GroupMatrix> gens, std::size_t radius,
                   std::vector<std::string> names = {}, std::size_t cap = kDefaultElementCap);

/// Left-to-right product of the letters of a word.
GroupMatrix evaluate_word(std::span<const GroupMatrix> gens, const std::vector<int>& word);

/// phi(g, h) in {-1, +1} on ordered pairs of distinct ball elements; 0 marks
/// an unassigned pair. phi(g, h) = +1 means g is above h.
class OrderAssignment {
 public:
  OrderAssignment() = default;
  explicit OrderAssignment(std::shared_ptr<const Ball> domain);

  const Ball& domain() const { return *domain_; }
  const std::shared_ptr<const Ball>& domain_ptr() const noexcept { return domain_; }
  std::size_t size() const noexcept { return n_; }

  int sign(std::size_t g, std::size_t h) const { return signs_[g * n_ + h]; }
  /// Sets one ordered pair only; (R) is not enforced.
  void set(std::size_t g, std::size_t h, int sign);
  /// Sets phi(g,h) = sign and phi(h,g) = -sign.
  void set_pair(std::size_t g, std::size_t h, int sign);
  bool complete() const;
  /// g below h.
  bool less(std::size_t g, std::size_t h) const { return sign(g, h) == -1; }

  /// Ball indices sorted from least to greatest; requires a total order.
  std::vector<std::size_t> sorted() const;

  /// Total order from a ranking: rank[i] < rank[j] means i below j.
  static OrderAssignment from_ranks(std::shared_ptr<const Ball> domain, std::span<const long long> rank);

  friend bool operator==(const OrderAssignment& a, const OrderAssignment& b) {
    return a.n_ == b.n_ && a.signs_ == b.signs_ && (a.n_ == 0 || a.domain_->elements() == b.domain_->elements());
  }

 private:
  std::shared_ptr<const Ball> domain_;
  std::size_t n_ = 0;
  std::vector<std::int8_t> signs_;
};

struct AxiomViolation {
  enum class Kind { reflexivity, transitivity };
  Kind kind;
  std::vector<std::size_t> elements;  // (g,h) for R_B, (f,g,h) for T_B
};

struct AxiomReport {
  bool pass = true;
  std::vector<AxiomViolation> violations;
};

/// (R_B) and (T_B) on the elements of b, which must lie in phi's domain.
/// Throws "incomplete assignment" when some pair of b is unassigned.
AxiomReport check_axioms(const OrderAssignment& phi, const Ball& b);

struct InvarianceViolation {
  GroupMatrix f;
  std::size_t g;  // indices into b
  std::size_t h;
};

struct InvarianceReport {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<InvarianceViolation> violations;
};

/// (L_{F,B}): phi(fg, fh) = phi(g, h) for f in F and g != h in b, with phi on b2.
/// Throws "ball containment violated" unless F b and b lie in b2.
InvarianceReport check_invariance(const OrderAssignment& phi, std::span<const GroupMatrix> f, const Ball& b,
                                  const Ball& b2);

enum class SearchOutcome { sat, unsat, budget_exhausted };
std::string to_string(SearchOutcome outcome);

struct ForcingStep {
  std::size_t g = 0;  // indices into b2
  std::size_t h = 0;
  int sign = 0;
  std::string reason;
};

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::unsat;
  std::optional<OrderAssignment> witness;  // set iff sat
  std::size_t branches = 0;                // decisions tried
  std::size_t conflicts = 0;
  std::vector<ForcingStep> first_conflict;  // forcing chain, conflict last
};

struct SearchOptions {
  std::size_t budget = 1'000'000;             // maximum number of decisions
  std::optional<std::uint64_t> shuffle_seed;  // permute the element order first
};

/// Depth-first search for an order on b2 satisfying (R), (T) and (L_{F,b}).
/// Throws "ball containment violated" unless F b and b lie in b2.
SearchResult search_invariant(std::span<const GroupMatrix> f, const Ball& b, std::shared_ptr<const Ball> b2,
                              const SearchOptions& options = {});

struct CompactnessResult {
  OrderAssignment order;
  std::vector<std::size_t> supporters;  // chain indices agreeing with order on the target
};

/// Most frequent restriction of the chain members to the target; ties go to the
/// lexicographically least sign vector. Throws "insufficient chain" when fewer
/// than min_support members cover the target with that restriction.
CompactnessResult compactness_extract(std::span<const OrderAssignment> chain, std::shared_ptr<const Ball> target,
                                      std::size_t min_support = 1);

/// Order on b by first disagreeing probe: keys[i][j] is the position of element
/// i applied to probe j. Throws "probes insufficient (action not almost free at
/// this scale)" when two elements share all keys.
OrderAssignment order_from_keys(std::shared_ptr<const Ball> b, const std::vector<std::vector<Rational>>& keys);

/// Order on b from a tree action fixing the leaf z, comparing images of the
/// probes by their distance from z along the arc through the probes.
OrderAssignment order_from_action(const FiniteTreeAction& act, const VertexId& z,
                                  std::span<const VertexId> probes, std::shared_ptr<const Ball> b);

/// Order on b from realized maps of an arc with end point -inf; probes are
/// increasing arc points.
OrderAssignment order_from_action(const ArcAction& act, std::span<const Rational> probes,
                                  std::shared_ptr<const Ball> b);

/// gamma_1 <= gamma_2 iff the probe images of gamma_1 are lexicographically
/// at most those of gamma_2. A total, transitive relation that need not be
/// antisymmetric.
struct QuasiOrderSample {
  std::vector<Rational> probes;

  /// Nullopt when some probe leaves the realized range.
  std::optional<bool> less_equal(const PLHomeo& a, int a_power, const PLHomeo& b, int b_power) const;
};

enum class LLVerdict { holds_up_to_k, fails, inconclusive };
std::string to_string(LLVerdict verdict);

struct LLResult {
  LLVerdict verdict = LLVerdict::inconclusive;
  std::size_t power_cap = 0;
  std::optional<long> k0;             // power refuting the last surviving alternative
  std::optional<long> refutes_up;     // first k with g^k above h
  std::optional<long> refutes_down;   // first k with g^k above h^{-1}
  std::optional<int> surviving;       // +1: g^k <= h, -1: g^k <= h^{-1}, for all |k| <= cap
};

/// Bounded test of g << h: scans k = 0, 1, -1, 2, -2, ... up to |k| = power_cap.
/// This approximates a condition quantified over all of Z.
LLResult ll_test(const QuasiOrderSample& sample, const PLHomeo& g, const PLHomeo& h, std::size_t power_cap);

/// Named preset instances for searches.
struct OrderPreset {
  std::string name;
  std::string description;
  std::vector<GroupMatrix> generators;
  std::vector<std::string> generator_names;
  std::size_t radius = 0;
};

std::vector<OrderPreset> order_presets();
OrderPreset order_preset(const std::string& name);  // throws "unknown preset"

}  // namespace dendra
