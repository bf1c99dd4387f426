#pragma once

#include "dendra/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dendra {

using VertexId = std::string;
using VertexIndex = std::uint32_t;
using Coordinates = std::vector<Rational>;

/// Finite combinatorial graph intended to be a tree; the stand-in for a
/// dendrite. Construction only rejects unrepresentable input (duplicate or
/// unknown vertex identifiers); tree-ness is checked by validate_tree.
class Tree {
 public:
  using Edge = std::pair<VertexIndex, VertexIndex>;

  Tree() = default;
  Tree(std::vector<VertexId> vertices, std::vector<std::pair<VertexId, VertexId>> edges,
       std::map<VertexId, Coordinates> embedding = {});
  Tree(std::vector<VertexId> vertices, std::vector<Edge> edges);

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const VertexId& id(VertexIndex v) const { return ids_.at(v); }
  const std::vector<VertexId>& ids() const noexcept { return ids_; }
  VertexIndex index(const VertexId& v) const;  // throws "vertex not in tree"
  std::optional<VertexIndex> find(const VertexId& v) const;
  bool contains(const VertexId& v) const { return find(v).has_value(); }

  std::span<const VertexIndex> neighbors(VertexIndex v) const { return adjacency_.at(v); }
  std::size_t degree(VertexIndex v) const { return adjacency_.at(v).size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool adjacent(VertexIndex a, VertexIndex b) const;

  bool has_embedding() const noexcept { return !embedding_.empty(); }
  /// Per-vertex coordinates; empty when there is no embedding.
  const std::vector<std::optional<Coordinates>>& embedding() const noexcept { return embedding_; }
  void set_embedding(const std::map<VertexId, Coordinates>& embedding);

 private:
  void index_vertices();
  void add_edge(VertexIndex a, VertexIndex b);

  std::vector<VertexId> ids_;
  std::unordered_map<VertexId, VertexIndex> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexIndex>> adjacency_;
  std::vector<std::optional<Coordinates>> embedding_;
};

struct Validation {
  bool ok = true;
  std::string diagnostic;  // names the first violated invariant, empty when ok
};

Validation validate_tree(const Tree& t);

/// Bijection on the vertex indices of a fixed tree.
class TreeAutomorphism {
 public:
  TreeAutomorphism() = default;
  explicit TreeAutomorphism(std::vector<VertexIndex> images);  // throws unless a permutation

  static TreeAutomorphism identity(std::size_t n);
  /// Checked: throws "not a tree automorphism" unless adjacency is preserved.
  static TreeAutomorphism of(const Tree& t, std::vector<VertexIndex> images);
  /// Unlisted vertices are fixed.
  static TreeAutomorphism from_ids(const Tree& t, const std::map<VertexId, VertexId>& mapping);

  VertexIndex operator()(VertexIndex v) const { return images_[v]; }
  std::size_t size() const noexcept { return images_.size(); }
  const std::vector<VertexIndex>& images() const noexcept { return images_; }

  /// (this ∘ inner)(v) = this(inner(v)).
  TreeAutomorphism compose(const TreeAutomorphism& inner) const;
  TreeAutomorphism inverse() const;

  bool preserves(const Tree& t) const;
  bool is_identity() const;
  std::vector<VertexIndex> fixed_vertices() const;

  friend bool operator==(const TreeAutomorphism&, const TreeAutomorphism&) = default;

 private:
  std::vector<VertexIndex> images_;
};

std::vector<VertexIndex> path(const Tree& t, VertexIndex a, VertexIndex b);
std::vector<VertexId> path(const Tree& t, const VertexId& a, const VertexId& b);

/// Distances from a source vertex (breadth-first).
std::vector<std::size_t> distances_from(const Tree& t, VertexIndex source);

/// First point map onto the subtree induced by `in_sub`. Throws
/// "subtree required" when the marked set is empty or disconnected.
VertexIndex first_point_map(const Tree& t, const std::vector<char>& in_sub, VertexIndex x);
VertexId first_point_map(const Tree& t, std::span<const VertexId> sub, const VertexId& x);

/// Number of components of t minus x (its degree); undefined on a singleton.
std::size_t point_order(const Tree& t, const VertexId& x);

/// Union of pairwise paths; sorted by vertex index.
std::vector<VertexIndex> convex_hull(const Tree& t, std::span<const VertexIndex> s);
std::vector<VertexId> convex_hull(const Tree& t, std::span<const VertexId> s);

bool induces_connected_subtree(const Tree& t, const std::vector<char>& in_sub);

/// A fixed vertex o != e of h, where e is a fixed leaf. The witness is the
/// fixed vertex nearest to e, ties broken by the smallest identifier.
VertexId second_fixed_point(const Tree& t, const TreeAutomorphism& h, const VertexId& e);

/// A vertex != z fixed by every generator (same canonical choice).
VertexId common_fixed_point(const Tree& t, std::span<const TreeAutomorphism> gens, const VertexId& z);

std::string to_dot(const Tree& t, const std::string& graph_name = "T");

}  // namespace dendra
