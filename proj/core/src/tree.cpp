#include "dendra/tree.hpp"

#include "dendra/error.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

namespace dendra {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::vector<VertexIndex> parents_from(const Tree& t, VertexIndex root) {
  constexpr VertexIndex none = std::numeric_limits<VertexIndex>::max();
  std::vector<VertexIndex> parent(t.size(), none);
  parent[root] = root;
  std::deque<VertexIndex> queue{root};
  while (!queue.empty()) {
    VertexIndex v = queue.front();
    queue.pop_front();
    for (VertexIndex w : t.neighbors(v)) {
      if (parent[w] != none) continue;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  return parent;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Tree::Tree(std::vector<VertexId> vertices, std::vector<std::pair<VertexId, VertexId>> edges,
           std::map<VertexId, Coordinates> embedding)
    : ids_(std::move(vertices)) {
  index_vertices();
  for (const auto& [a, b] : edges) add_edge(index(a), index(b));
  if (!embedding.empty()) set_embedding(embedding);
}

Tree::Tree(std::vector<VertexId> vertices, std::vector<Edge> edges) : ids_(std::move(vertices)) {
  index_vertices();
  for (const auto& [a, b] : edges) {
    if (a >= ids_.size() || b >= ids_.size()) throw Error("vertex not in tree");
    add_edge(a, b);
  }
}

void Tree::index_vertices() {
  index_.reserve(ids_.size());
  for (VertexIndex i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) throw Error("duplicate vertex identifier \"" + ids_[i] + "\"");
  }
  adjacency_.assign(ids_.size(), {});
}

void Tree::add_edge(VertexIndex a, VertexIndex b) {
  edges_.emplace_back(a, b);
  adjacency_[a].push_back(b);
  if (a != b) adjacency_[b].push_back(a);
}

VertexIndex Tree::index(const VertexId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw Error("vertex not in tree: \"" + v + "\"");
  return it->second;
}

std::optional<VertexIndex> Tree::find(const VertexId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Tree::adjacent(VertexIndex a, VertexIndex b) const {
  const auto& n = adjacency_.at(a);
  return std::find(n.begin(), n.end(), b) != n.end();
}

void Tree::set_embedding(const std::map<VertexId, Coordinates>& embedding) {
  embedding_.assign(ids_.size(), std::nullopt);
  for (const auto& [v, coords] : embedding) embedding_[index(v)] = coords;
}

Validation validate_tree(const Tree& t) {
  auto fail = [](std::string why) { return Validation{false, std::move(why)}; };
  if (t.size() == 0) return fail("empty: a tree needs at least one vertex");
  std::set<std::pair<VertexIndex, VertexIndex>> seen;
  for (const auto& [a, b] : t.edges()) {
    if (a == b) return fail("self-loop at \"" + t.id(a) + "\"");
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second)
      return fail("duplicate edge {\"" + t.id(a) + "\", \"" + t.id(b) + "\"}");
  }
  const std::size_t expected = t.size() - 1;
  if (t.edge_count() > expected)
    return fail("cycle: " + std::to_string(t.edge_count()) + " edges on " + std::to_string(t.size()) +
                " vertices");
  if (t.edge_count() < expected)
    return fail("disconnected: " + std::to_string(t.edge_count()) + " edges on " +
                std::to_string(t.size()) + " vertices");
  auto dist = distances_from(t, 0);
  for (VertexIndex v = 0; v < t.size(); ++v)
    if (dist[v] == kUnreached) return fail("disconnected: \"" + t.id(v) + "\" unreachable");
  if (t.has_embedding()) {
    std::set<Coordinates> points;
    std::size_t dim = 0;
    for (VertexIndex v = 0; v < t.size(); ++v) {
      const auto& c = t.embedding()[v];
      if (!c) return fail("embedding incomplete: \"" + t.id(v) + "\" has no coordinates");
      if (c->size() != 2 && c->size() != 3) return fail("embedding dimension must be 2 or 3");
      if (dim == 0) dim = c->size();
      if (c->size() != dim) return fail("embedding dimension is inconsistent");
      if (!points.insert(*c).second) return fail("embedding not injective at \"" + t.id(v) + "\"");
    }
  }
  return {};
}

// --- TreeAutomorphism ------------------------------------------------------

TreeAutomorphism::TreeAutomorphism(std::vector<VertexIndex> images) : images_(std::move(images)) {
  std::vector<char> hit(images_.size(), 0);
  for (VertexIndex v : images_) {
    if (v >= images_.size() || hit[v]) throw Error("vertex map is not a bijection");
    hit[v] = 1;
  }
}

TreeAutomorphism TreeAutomorphism::identity(std::size_t n) {
  std::vector<VertexIndex> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<VertexIndex>(i);
  return TreeAutomorphism(std::move(id));
}

TreeAutomorphism TreeAutomorphism::of(const Tree& t, std::vector<VertexIndex> images) {
  if (images.size() != t.size()) throw Error("vertex map size does not match tree");
  TreeAutomorphism h(std::move(images));
  if (!h.preserves(t)) throw Error("not a tree automorphism");
  return h;
}

TreeAutomorphism TreeAutomorphism::from_ids(const Tree& t, const std::map<VertexId, VertexId>& mapping) {
  auto images = identity(t.size()).images_;
  for (const auto& [from, to] : mapping) images[t.index(from)] = t.index(to);
  return of(t, std::move(images));
}

TreeAutomorphism TreeAutomorphism::compose(const TreeAutomorphism& inner) const {
  if (inner.size() != size()) throw Error("automorphisms act on different trees");
  std::vector<VertexIndex> out(size());
  for (std::size_t v = 0; v < size(); ++v) out[v] = images_[inner.images_[v]];
  return TreeAutomorphism(std::move(out));
}

TreeAutomorphism TreeAutomorphism::inverse() const {
  std::vector<VertexIndex> out(size());
  for (std::size_t v = 0; v < size(); ++v) out[images_[v]] = static_cast<VertexIndex>(v);
  return TreeAutomorphism(std::move(out));
}

bool TreeAutomorphism::preserves(const Tree& t) const {
  if (size() != t.size()) return false;
  // A bijection mapping every edge onto an edge preserves non-adjacency too,
  // since the edge count is finite and fixed.
  std::set<std::pair<VertexIndex, VertexIndex>> edges;
  for (const auto& [a, b] : t.edges()) edges.insert(std::minmax(a, b));
  for (const auto& [a, b] : t.edges())
    if (!edges.count(std::minmax(images_[a], images_[b]))) return false;
  return true;
}

bool TreeAutomorphism::is_identity() const {
  for (std::size_t v = 0; v < size(); ++v)
    if (images_[v] != v) return false;
  return true;
}

std::vector<VertexIndex> TreeAutomorphism::fixed_vertices() const {
  std::vector<VertexIndex> fixed;
  for (std::size_t v = 0; v < size(); ++v)
    if (images_[v] == v) fixed.push_back(static_cast<VertexIndex>(v));
  return fixed;
}

// --- paths and retractions -------------------------------------------------

std::vector<std::size_t> distances_from(const Tree& t, VertexIndex source) {
  std::vector<std::size_t> dist(t.size(), kUnreached);
  dist.at(source) = 0;
  std::deque<VertexIndex> queue{source};
  while (!queue.empty()) {
    VertexIndex v = queue.front();
    queue.pop_front();
    for (VertexIndex w : t.neighbors(v)) {
      if (dist[w] != kUnreached) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

std::vector<VertexIndex> path(const Tree& t, VertexIndex a, VertexIndex b) {
  if (a >= t.size() || b >= t.size()) throw Error("vertex not in tree");
  auto parent = parents_from(t, b);
  if (parent[a] == std::numeric_limits<VertexIndex>::max()) throw Error("vertices are not connected");
  std::vector<VertexIndex> out{a};
  while (out.back() != b) out.push_back(parent[out.back()]);
  return out;
}

std::vector<VertexId> path(const Tree& t, const VertexId& a, const VertexId& b) {
  std::vector<VertexId> out;
  for (VertexIndex v : path(t, t.index(a), t.index(b))) out.push_back(t.id(v));
  return out;
}

bool induces_connected_subtree(const Tree& t, const std::vector<char>& in_sub) {
  if (in_sub.size() != t.size()) return false;
  auto start = std::find(in_sub.begin(), in_sub.end(), 1);
  if (start == in_sub.end()) return false;
  std::vector<char> reached(t.size(), 0);
  auto root = static_cast<VertexIndex>(start - in_sub.begin());
  reached[root] = 1;
  std::deque<VertexIndex> queue{root};
  std::size_t count = 1;
  while (!queue.empty()) {
    VertexIndex v = queue.front();
    queue.pop_front();
    for (VertexIndex w : t.neighbors(v)) {
      if (!in_sub[w] || reached[w]) continue;
      reached[w] = 1;
      ++count;
      queue.push_back(w);
    }
  }
  return count == static_cast<std::size_t>(std::count(in_sub.begin(), in_sub.end(), 1));
}

VertexIndex first_point_map(const Tree& t, const std::vector<char>& in_sub, VertexIndex x) {
  if (!induces_connected_subtree(t, in_sub)) throw Error("subtree required");
  if (in_sub[x]) return x;
  // In a tree the nearest vertex of a connected subtree is its unique gate.
  std::vector<char> seen(t.size(), 0);
  seen[x] = 1;
  std::deque<VertexIndex> queue{x};
  while (!queue.empty()) {
    VertexIndex v = queue.front();
    queue.pop_front();
    for (VertexIndex w : t.neighbors(v)) {
      if (seen[w]) continue;
      if (in_sub[w]) return w;
      seen[w] = 1;
      queue.push_back(w);
    }
  }
  throw Error("subtree unreachable from vertex");
}

VertexId first_point_map(const Tree& t, std::span<const VertexId> sub, const VertexId& x) {
  std::vector<char> in_sub(t.size(), 0);
  for (const auto& v : sub) in_sub[t.index(v)] = 1;
  return t.id(first_point_map(t, in_sub, t.index(x)));
}

std::size_t point_order(const Tree& t, const VertexId& x) {
  VertexIndex v = t.index(x);
  if (t.size() < 2) throw Error("order undefined on degenerate tree");
  return t.degree(v);
}

std::vector<VertexIndex> convex_hull(const Tree& t, std::span<const VertexIndex> s) {
  if (s.empty()) throw Error("convex hull of an empty set");
  auto parent = parents_from(t, s.front());
  std::vector<char> in(t.size(), 0);
  in[s.front()] = 1;
  for (VertexIndex v : s) {
    if (v >= t.size()) throw Error("vertex not in tree");
    if (parent[v] == std::numeric_limits<VertexIndex>::max()) throw Error("vertices are not connected");
    while (!in[v]) {
      in[v] = 1;
      v = parent[v];
    }
  }
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < t.size(); ++v)
    if (in[v]) out.push_back(v);
  return out;
}

std::vector<VertexId> convex_hull(const Tree& t, std::span<const VertexId> s) {
  std::vector<VertexIndex> idx;
  for (const auto& v : s) idx.push_back(t.index(v));
  std::vector<VertexId> out;
  for (VertexIndex v : convex_hull(t, std::span<const VertexIndex>(idx))) out.push_back(t.id(v));
  return out;
}

namespace {

VertexId nearest_fixed(const Tree& t, const std::vector<char>& fixed, VertexIndex from) {
  auto dist = distances_from(t, from);
  std::optional<VertexIndex> best;
  for (VertexIndex v = 0; v < t.size(); ++v) {
    if (v == from || !fixed[v]) continue;
    if (!best || dist[v] < dist[*best] || (dist[v] == dist[*best] && t.id(v) < t.id(*best))) best = v;
  }
  if (!best) throw Error("no second fixed point");
  return t.id(*best);
}

void require_leaf(const Tree& t, VertexIndex e) {
  if (t.size() < 2) throw Error("tree must have at least two vertices");
  if (t.degree(e) != 1) throw Error("end point required: \"" + t.id(e) + "\" is not a leaf");
}

}  // namespace

VertexId second_fixed_point(const Tree& t, const TreeAutomorphism& h, const VertexId& e) {
  VertexIndex ei = t.index(e);
  if (h.size() != t.size()) throw Error("automorphism does not act on this tree");
  if (h(ei) != ei) throw Error("endpoint not fixed");
  require_leaf(t, ei);
  std::vector<char> fixed(t.size(), 0);
  for (VertexIndex v : h.fixed_vertices()) fixed[v] = 1;
  return nearest_fixed(t, fixed, ei);
}

VertexId common_fixed_point(const Tree& t, std::span<const TreeAutomorphism> gens, const VertexId& z) {
  VertexIndex zi = t.index(z);
  std::vector<char> fixed(t.size(), 1);
  for (const auto& g : gens) {
    if (g.size() != t.size()) throw Error("automorphism does not act on this tree");
    if (g(zi) != zi) throw Error("a generator moves the end point");
    for (VertexIndex v = 0; v < t.size(); ++v)
      if (g(v) != v) fixed[v] = 0;
  }
  require_leaf(t, zi);
  return nearest_fixed(t, fixed, zi);
}

std::string to_dot(const Tree& t, const std::string& graph_name) {
  std::ostringstream out;
  out << "graph " << quoted(graph_name) << " {\n";
  for (VertexIndex v = 0; v < t.size(); ++v) out << "  " << quoted(t.id(v)) << ";\n";
  for (const auto& [a, b] : t.edges()) out << "  " << quoted(t.id(a)) << " -- " << quoted(t.id(b)) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace dendra
