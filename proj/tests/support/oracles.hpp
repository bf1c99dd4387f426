#pragma once

// Small brute-force reference implementations. They share no code with the
// library beyond the Tree type used to hand over inputs.

#include "dendra/tree.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Mat = std::vector<std::int64_t>;  // row-major n x n, entries in [0, m)

inline Mat mul(const Mat& a, const Mat& b, std::size_t n, std::int64_t m) {
  Mat c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] = (c[i * n + j] + a[i * n + k] * b[k * n + j]) % m;
  return c;
}

/// Product over Z; callers keep entries small.
inline Mat mul_z(const Mat& a, const Mat& b, std::size_t n) {
  Mat c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
  return c;
}

inline Mat identity(std::size_t n) {
  Mat e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return e;
}

/// I + E_{ij} mod m, 1-based.
inline Mat unipotent(std::size_t n, std::size_t i, std::size_t j, std::int64_t m) {
  Mat u = identity(n);
  u[(i - 1) * n + (j - 1)] = 1 % m;
  return u;
}

/// Closure of the generators under right multiplication, in BFS order.
inline std::vector<Mat> bfs_group(std::size_t n, std::int64_t m, const std::vector<Mat>& gens) {
  std::vector<Mat> order{identity(n)};
  std::set<Mat> seen{identity(n)};
  for (std::size_t head = 0; head < order.size(); ++head)
    for (const auto& g : gens) {
      Mat x = mul(order[head], g, n, m);
      if (seen.insert(x).second) order.push_back(std::move(x));
    }
  return order;
}

/// Multiplication table of an explicitly listed finite group.
struct Table {
  std::vector<Mat> elements;
  std::vector<std::vector<std::size_t>> product;
  std::vector<std::size_t> inverse;
  std::size_t identity = 0;
};

inline Table table_of(std::vector<Mat> elements, std::size_t n, std::int64_t m) {
  Table t;
  std::sort(elements.begin(), elements.end());
  std::map<Mat, std::size_t> at;
  for (std::size_t i = 0; i < elements.size(); ++i) at[elements[i]] = i;
  t.product.assign(elements.size(), std::vector<std::size_t>(elements.size()));
  t.inverse.assign(elements.size(), 0);
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j) t.product[i][j] = at.at(mul(elements[i], elements[j], n, m));
  t.identity = at.at(identity(n));
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (t.product[i][j] == t.identity) t.inverse[i] = j;
  t.elements = std::move(elements);
  return t;
}

using Subset = std::set<std::size_t>;

inline Subset closure(const Table& t, const std::vector<std::size_t>& gens) {
  Subset s{t.identity};
  std::deque<std::size_t> queue{t.identity};
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (auto g : gens) {
      const auto y = t.product[x][g];
      if (s.insert(y).second) queue.push_back(y);
    }
  }
  return s;
}

/// Every subgroup generated by at most three elements.
inline std::set<Subset> subgroups(const Table& t) {
  std::set<Subset> out;
  const auto n = t.elements.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = b; c < n; ++c) out.insert(closure(t, {a, b, c}));
  return out;
}

inline bool is_normal(const Table& t, const Subset& h) {
  for (std::size_t g = 0; g < t.elements.size(); ++g)
    for (auto x : h)
      if (!h.count(t.product[t.product[g][x]][t.inverse[g]])) return false;
  return true;
}

/// The largest normal subgroup of the group inside h, found by scanning all subgroups.
inline Subset largest_normal_inside(const Table& t, const Subset& h, const std::set<Subset>& all) {
  Subset best{t.identity};
  for (const auto& k : all) {
    if (!is_normal(t, k) || !std::includes(h.begin(), h.end(), k.begin(), k.end())) continue;
    if (k.size() > best.size()) best = k;
  }
  return best;
}

/// All automorphisms of t fixing the vertex `fixed`, by backtracking over images.
inline std::vector<std::vector<dendra::VertexIndex>> automorphisms_fixing(const dendra::Tree& t,
                                                                          dendra::VertexIndex fixed) {
  const auto n = t.size();
  std::vector<std::vector<dendra::VertexIndex>> out;
  std::vector<dendra::VertexIndex> image(n, n);
  std::vector<char> used(n, 0);
  image[fixed] = fixed;
  used[fixed] = 1;
  std::function<void(std::size_t)> extend = [&](std::size_t v) {
    if (v == n) {
      out.push_back(image);
      return;
    }
    if (v == fixed) return extend(v + 1);
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || t.degree(w) != t.degree(v)) continue;
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u)
        if (image[u] != n) ok = t.adjacent(u, v) == t.adjacent(image[u], w);
      if (ok && fixed > v) ok = t.adjacent(fixed, v) == t.adjacent(fixed, w);
      if (!ok) continue;
      image[v] = w;
      used[w] = 1;
      extend(v + 1);
      used[w] = 0;
      image[v] = n;
    }
  };
  extend(0);
  return out;
}

/// Canonical string of the subtree below v when the tree hangs from root.
inline std::string shape(const dendra::Tree& t, dendra::VertexIndex v, dendra::VertexIndex parent) {
  std::vector<std::string> kids;
  for (auto w : t.neighbors(v))
    if (w != parent) kids.push_back(shape(t, w, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

/// A uniformly random automorphism fixing root: isomorphic child subtrees are shuffled.
inline std::vector<dendra::VertexIndex> random_automorphism(const dendra::Tree& t, dendra::VertexIndex root,
                                                            std::mt19937_64& rng) {
  std::vector<dendra::VertexIndex> image(t.size(), t.size());
  // Maps the subtree at v (parent pv) onto the isomorphic subtree at w (parent pw).
  std::function<void(dendra::VertexIndex, dendra::VertexIndex, dendra::VertexIndex, dendra::VertexIndex)> map_onto =
      [&](dendra::VertexIndex v, dendra::VertexIndex pv, dendra::VertexIndex w, dendra::VertexIndex pw) {
        image[v] = w;
        std::map<std::string, std::vector<dendra::VertexIndex>> from, to;
        for (auto c : t.neighbors(v))
          if (c != pv) from[shape(t, c, v)].push_back(c);
        for (auto c : t.neighbors(w))
          if (c != pw) to[shape(t, c, w)].push_back(c);
        for (auto& [key, kids] : from) {
          auto targets = to.at(key);
          std::shuffle(targets.begin(), targets.end(), rng);
          for (std::size_t i = 0; i < kids.size(); ++i) map_onto(kids[i], v, targets[i], w);
        }
      };
  map_onto(root, t.size(), root, t.size());
  return image;
}

/// Random labelled tree on n >= 2 vertices from a Pruefer sequence.
inline dendra::Tree random_tree(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  if (n == 2) return dendra::Tree(ids, {{ids[0], ids[1]}});
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> seq(n - 2), degree(n, 1);
  for (auto& s : seq) ++degree[s = pick(rng)];
  for (auto s : seq) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(ids[leaf], ids[s]);
    --degree[leaf];
    --degree[s];
  }
  std::vector<std::size_t> last;
  for (std::size_t i = 0; i < n; ++i)
    if (degree[i] == 1) last.push_back(i);
  edges.emplace_back(ids[last[0]], ids[last[1]]);
  return dendra::Tree(ids, edges);
}

/// A spine with `copies` identical random branches hung at a random spine vertex,
/// so that automorphisms fixing the spine end exist. About n vertices.
inline dendra::Tree symmetric_tree(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> copies_dist(2, 4);
  const std::size_t copies = copies_dist(rng);
  const std::size_t branch = std::max<std::size_t>(1, (n / 2) / copies);
  const std::size_t spine = n > copies * branch + 2 ? n - copies * branch : 2;
  std::vector<std::size_t> parent(branch, 0);  // branch shape: parent[i] < i, parent[0] unused
  for (std::size_t i = 1; i < branch; ++i) parent[i] = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < spine; ++i) {
    ids.push_back("s" + std::to_string(i));
    if (i) edges.emplace_back(ids[i - 1], ids[i]);
  }
  const std::string hub = ids[std::uniform_int_distribution<std::size_t>(1, spine - 1)(rng)];
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t i = 0; i < branch; ++i) {
      const auto id = "b" + std::to_string(c) + "." + std::to_string(i);
      ids.push_back(id);
      edges.emplace_back(i == 0 ? hub : "b" + std::to_string(c) + "." + std::to_string(parent[i]), id);
    }
  return dendra::Tree(ids, edges);
}

}  // namespace oracle
