#pragma once

#include "dendra/error.hpp"
#include "dendra/matrix.hpp"
#include "dendra/tree.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dendra {

/// A tree together with one automorphism per named generator.
struct FiniteTreeAction {
  Tree tree;
  std::vector<std::string> generator_names;
  std::vector<TreeAutomorphism> generators;
  /// Matrices the generators stand for; empty for purely combinatorial actions.
  std::vector<GroupMatrix> generator_matrices;

  std::size_t generator_count() const noexcept { return generators.size(); }
  /// Image of v under the word; letters are +k / -k for generator k-1 or its inverse,
  /// and the rightmost letter acts first.
  VertexIndex apply_word(const std::vector<int>& word, VertexIndex v) const;
};

/// The trivial action of the given generators on a tree.
FiniteTreeAction trivial_action(Tree tree, std::vector<std::string> generator_names = {"g"});

struct TowerProvenance {
  std::size_t n = 0;
  std::uint64_t p = 0;
  std::size_t depth = 0;
  std::uint64_t quotient_modulus = 1;  // p^depth
  std::string representative_rule;
  /// Coset representatives gamma_1..gamma_k of Gamma_{b+1} in Gamma_b, per b,
  /// as matrices over Z/p^depth.
  std::vector<std::vector<GroupMatrix>> coset_representatives;
};

/// Levels of finite tree actions joined by equivariant monotone bonds.
///
/// bonds[a] maps vertex indices of level a+1 onto level a. In a congruence
/// tower the vertex list of level a is a prefix of the list of level a+1.
struct InverseSystem {
  std::vector<FiniteTreeAction> levels;
  std::vector<std::vector<VertexIndex>> bonds;
  std::optional<TowerProvenance> provenance;

  std::size_t depth() const noexcept { return levels.empty() ? 0 : levels.size() - 1; }
};

/// Coset trees of Gamma/Gamma_b for b <= depth with Gamma = SL_n(Z) and
/// Gamma_b its principal congruence subgroup of level p^b. All arithmetic
/// happens in SL_n(Z/p^depth). Generators are the u_{i,j}, i != j.
InverseSystem build_congruence_tower(std::size_t n, std::uint64_t p, std::size_t depth,
                                     std::size_t cap = kDefaultElementCap);

struct BondViolation {
  std::string generator;
  VertexId vertex;
};

struct EquivarianceReport {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<BondViolation> violations;
};

/// psi(g.x) == g.psi(x) for every generator g and vertex x of level+1.
EquivarianceReport verify_equivariant_bond(const InverseSystem& sys, std::size_t level);

struct BondShapeReport {
  bool surjective = true;
  bool monotone = true;          // every fibre induces a connected subtree
  bool identity_on_copy = true;  // psi is the identity on level vertices present above
  std::vector<std::string> problems;
  bool pass() const noexcept { return surjective && monotone && identity_on_copy; }
};

BondShapeReport verify_bond_shape(const InverseSystem& sys, std::size_t level);

struct OrbitResult {
  std::vector<VertexIndex> vertices;  // discovery order, starting with v
  bool closed = false;                // stable under every generator and inverse
};

/// Breadth-first orbit under generators and inverses, up to word length `cap`.
OrbitResult orbit(const FiniteTreeAction& act, VertexIndex v, std::size_t word_length_cap);
OrbitResult orbit(const FiniteTreeAction& act, const VertexId& v, std::size_t word_length_cap);

struct DegreeProfile {
  std::vector<std::size_t> max_degree;  // per level
  std::optional<std::size_t> stable_degree;  // p^{n^2-1} + 1 for congruence towers
  bool stabilized = true;  // max degree equals stable_degree at every level >= 2
};

DegreeProfile degree_profile(const InverseSystem& sys);

/// One vertex per level with psi_a(x_{a+1}) = x_a.
using Thread = std::vector<VertexIndex>;

bool is_thread(const InverseSystem& sys, const Thread& thread);
Thread act_on_thread(const InverseSystem& sys, std::size_t generator, const Thread& thread);
/// The thread ending at a vertex of the deepest level.
Thread thread_through(const InverseSystem& sys, VertexIndex deepest_vertex);

struct StarArm {
  int index = 0;             // +-1, ..., +-count
  Rational angle_over_pi;    // sgn(i)(1 - 1/(2|i|)), exact
  Rational length;           // 1/|i|, exact
  double angle = 0.0;        // radians, approximate
  double length_value = 0.0;
  bool coordinates_exact = false;
  VertexId vertex;
};

struct StarDendrite {
  Tree tree;  // planar embedding; inexact coordinates are binary rationals of doubles
  std::vector<StarArm> arms;
};

/// 2*count arms from the origin, arm i at angle sgn(i)(1 - 1/(2|i|))pi of length 1/|i|.
StarDendrite star_dendrite(int count);
std::string star_to_svg(const StarDendrite& star, double size_px = 400.0);

struct Pendant {
  VertexId base;  // orbit vertex e_i on the deepest level
  VertexId middle;
  VertexId tip;
  Rational length;  // label only
};

struct DecoratedAction {
  FiniteTreeAction action;
  std::vector<Pendant> pendants;  // e_1 = seed, then orbit discovery order
};

using LengthRule = std::function<Rational(std::size_t)>;  // 1-based position -> length label
Rational harmonic_length(std::size_t i);

/// Hangs a once-subdivided pendant arc from each vertex in the orbit of `seed`
/// on the deepest level, and extends the generators to permute the arcs.
DecoratedAction attach_decorations(const InverseSystem& sys, const VertexId& seed,
                                   const LengthRule& lengths = harmonic_length);

/// Orbit size of the first-point projection of x into each level's subtree.
std::vector<std::size_t> projection_orbit_growth(const InverseSystem& sys, const DecoratedAction& decorated,
                                                 const VertexId& x,
                                                 std::size_t word_length_cap = static_cast<std::size_t>(-1));

}  // namespace dendra
