#include "dendra/tower.hpp"

#include "dendra/matgrp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <deque>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace dendra {

VertexIndex FiniteTreeAction::apply_word(const std::vector<int>& word, VertexIndex v) const {
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int letter = *it;
    if (letter == 0 || static_cast<std::size_t>(std::abs(letter)) > generators.size())
      throw Error("word letter out of range");
    const auto& g = generators[static_cast<std::size_t>(std::abs(letter) - 1)];
    if (letter > 0) {
      v = g(v);
    } else {
      // Inverse image by search keeps this allocation-free for short words.
      const auto& img = g.images();
      v = static_cast<VertexIndex>(std::find(img.begin(), img.end(), v) - img.begin());
    }
  }
  return v;
}

FiniteTreeAction trivial_action(Tree tree, std::vector<std::string> generator_names) {
  FiniteTreeAction act;
  const std::size_t n = tree.size();
  act.tree = std::move(tree);
  act.generator_names = std::move(generator_names);
  act.generators.assign(act.generator_names.size(), TreeAutomorphism::identity(n));
  return act;
}

namespace {

std::string generator_name(std::size_t i, std::size_t j) {
  return "u" + std::to_string(i) + "," + std::to_string(j);
}

std::uint64_t checked_power(std::uint64_t p, std::size_t k) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (out > 0xffffffffULL / p) throw Error("quotient modulus p^depth must be below 2^32");
    out *= p;
  }
  return out;
}

std::string vertex_name(std::size_t level, std::span<const std::uint32_t> entries, std::uint64_t mod) {
  if (level == 0) return "0:root";
  std::string id = std::to_string(level) + ":";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) id.push_back(',');
    id += std::to_string(entries[i] % mod);
  }
  return id;
}

}  // namespace

InverseSystem build_congruence_tower(std::size_t n, std::uint64_t p, std::size_t depth, std::size_t cap) {
  if (n < 2) throw Error("congruence tower requires n >= 2");
  if (!is_prime(p)) throw Error("p must be prime");
  const std::uint64_t modulus = checked_power(p, depth);
  if (special_linear_order(n, p, depth) > Integer(static_cast<unsigned long>(cap)))
    throw CapExceeded("group too large for cap");

  std::vector<std::string> names;
  std::vector<GroupMatrix> integral_gens;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (i != j) {
        names.push_back(generator_name(i, j));
        integral_gens.push_back(elementary(n, i, j, 1));
      }

  TowerProvenance prov;
  prov.n = n;
  prov.p = p;
  prov.depth = depth;
  prov.quotient_modulus = modulus;
  prov.representative_rule =
      "coset representatives and vertex lifts are the lexicographically least row-major "
      "canonical forms in SL_n(Z/p^depth)";

  InverseSystem sys;
  if (depth == 0) {
    FiniteTreeAction root = trivial_action(Tree({"0:root"}, std::vector<Tree::Edge>{}), names);
    root.generator_matrices = integral_gens;
    sys.levels.push_back(std::move(root));
    sys.provenance = std::move(prov);
    return sys;
  }

  std::vector<GroupMatrix> gens;
  for (const auto& g : integral_gens) gens.push_back(g.reduced(modulus));
  const FiniteMatrixGroup group = enumerate_group(n, modulus, gens, cap);
  const std::size_t order = group.order();
  const std::size_t nn = n * n;

  // class_of[b][x]: block index of the coset x Gamma_b among level-b vertices.
  // lift[b][c]: lexicographically least group element of block-b class c.
  std::vector<std::vector<std::uint32_t>> class_of(depth + 1, std::vector<std::uint32_t>(order, 0));
  std::vector<std::vector<std::size_t>> lift(depth + 1);
  lift[0].push_back(0);
  std::vector<std::uint64_t> level_mod(depth + 1, 1);
  for (std::size_t b = 1; b <= depth; ++b) {
    level_mod[b] = level_mod[b - 1] * p;
    std::unordered_map<std::string, std::uint32_t> seen;
    std::string key(nn * 4, '\0');
    for (std::size_t x = 0; x < order; ++x) {
      auto e = group.entries(x);
      for (std::size_t k = 0; k < nn; ++k) {
        std::uint32_t r = static_cast<std::uint32_t>(e[k] % level_mod[b]);
        std::memcpy(key.data() + 4 * k, &r, 4);
      }
      auto [it, inserted] = seen.emplace(key, static_cast<std::uint32_t>(lift[b].size()));
      if (inserted) lift[b].push_back(x);
      class_of[b][x] = it->second;
    }
  }

  // Representatives of Gamma_{b+1} in Gamma_b: least element of each class
  // of the kernel of reduction mod p^b.
  std::vector<std::vector<std::size_t>> reps(depth);
  for (std::size_t b = 0; b < depth; ++b) {
    std::vector<char> taken(lift[b + 1].size(), 0);
    const std::uint32_t identity_class = b == 0 ? 0 : class_of[b][group.identity_index()];
    for (std::size_t x = 0; x < order; ++x) {
      if (b > 0 && class_of[b][x] != identity_class) continue;
      std::uint32_t c = class_of[b + 1][x];
      if (taken[c]) continue;
      taken[c] = 1;
      reps[b].push_back(x);
    }
    std::vector<GroupMatrix> mats;
    for (std::size_t x : reps[b]) mats.push_back(group.element(x));
    prov.coset_representatives.push_back(std::move(mats));
  }

  std::vector<std::size_t> offset(depth + 2, 0);
  for (std::size_t b = 0; b <= depth; ++b) offset[b + 1] = offset[b] + lift[b].size();
  const std::size_t total = offset[depth + 1];

  std::vector<VertexId> ids;
  ids.reserve(total);
  for (std::size_t b = 0; b <= depth; ++b)
    for (std::size_t x : lift[b]) ids.push_back(vertex_name(b, group.entries(x), level_mod[b]));

  // Edges {gamma Gamma_b, gamma gamma_k Gamma_{b+1}}.
  std::vector<Tree::Edge> edges;
  edges.reserve(total - 1);
  std::vector<std::uint32_t> product(nn);
  std::vector<char> has_parent(total, 0);
  for (std::size_t b = 0; b < depth; ++b) {
    for (std::size_t c = 0; c < lift[b].size(); ++c) {
      auto gamma = group.entries(lift[b][c]);
      for (std::size_t rep : reps[b]) {
        group.multiply_into(gamma, group.entries(rep), product);
        std::size_t child = offset[b + 1] + class_of[b + 1][*group.find(product)];
        if (has_parent[child]) throw Error("coset tree construction produced a repeated child");
        has_parent[child] = 1;
        edges.emplace_back(static_cast<VertexIndex>(offset[b] + c), static_cast<VertexIndex>(child));
      }
    }
  }

  // Left translation on every block, computed once on the deepest tree.
  std::vector<std::vector<VertexIndex>> perm(gens.size(), std::vector<VertexIndex>(total));
  for (std::size_t s = 0; s < gens.size(); ++s) {
    auto g = group.entries(group.generator_indices()[s]);
    perm[s][0] = 0;
    for (std::size_t b = 1; b <= depth; ++b) {
      for (std::size_t c = 0; c < lift[b].size(); ++c) {
        group.multiply_into(g, group.entries(lift[b][c]), product);
        perm[s][offset[b] + c] = static_cast<VertexIndex>(offset[b] + class_of[b][*group.find(product)]);
      }
    }
  }

  for (std::size_t a = 0; a <= depth; ++a) {
    const std::size_t size = offset[a + 1];
    FiniteTreeAction level;
    std::vector<VertexId> level_ids(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(size));
    std::vector<Tree::Edge> level_edges(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(size - 1));
    level.tree = Tree(std::move(level_ids), std::move(level_edges));
    level.generator_names = names;
    level.generator_matrices = integral_gens;
    for (const auto& full : perm)
      level.generators.emplace_back(std::vector<VertexIndex>(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(size)));
    sys.levels.push_back(std::move(level));
  }

  // psi_a collapses each level-(a+1) leaf onto its parent.
  for (std::size_t a = 0; a < depth; ++a) {
    std::vector<VertexIndex> bond(offset[a + 2]);
    std::iota(bond.begin(), bond.begin() + static_cast<std::ptrdiff_t>(offset[a + 1]), 0);
    for (std::size_t c = 0; c < lift[a + 1].size(); ++c) {
      std::size_t x = lift[a + 1][c];
      std::size_t parent = a == 0 ? 0 : offset[a] + class_of[a][x];
      bond[offset[a + 1] + c] = static_cast<VertexIndex>(parent);
    }
    sys.bonds.push_back(std::move(bond));
  }
  sys.provenance = std::move(prov);
  return sys;
}

EquivarianceReport verify_equivariant_bond(const InverseSystem& sys, std::size_t level) {
  EquivarianceReport report;
  if (level + 1 >= sys.levels.size()) return report;  // vacuous
  const auto& lower = sys.levels[level];
  const auto& upper = sys.levels[level + 1];
  const auto& bond = sys.bonds.at(level);
  if (lower.generators.size() != upper.generators.size())
    throw Error("levels carry different generator sets");
  for (std::size_t s = 0; s < upper.generators.size(); ++s) {
    for (VertexIndex x = 0; x < upper.tree.size(); ++x) {
      ++report.checked;
      if (bond[upper.generators[s](x)] != lower.generators[s](bond[x])) {
        report.pass = false;
        report.violations.push_back({upper.generator_names.at(s), upper.tree.id(x)});
      }
    }
  }
  return report;
}

BondShapeReport verify_bond_shape(const InverseSystem& sys, std::size_t level) {
  BondShapeReport report;
  if (level + 1 >= sys.levels.size()) return report;
  const Tree& lower = sys.levels[level].tree;
  const Tree& upper = sys.levels[level + 1].tree;
  const auto& bond = sys.bonds.at(level);
  if (bond.size() != upper.size()) throw Error("bond size does not match level");

  std::vector<char> hit(lower.size(), 0);
  for (VertexIndex x = 0; x < upper.size(); ++x) {
    if (bond[x] >= lower.size()) throw Error("bond image out of range");
    hit[bond[x]] = 1;
    if (auto same = lower.find(upper.id(x)); same && *same != bond[x]) {
      report.identity_on_copy = false;
      report.problems.push_back("not the identity on \"" + upper.id(x) + "\"");
    }
  }
  for (VertexIndex y = 0; y < lower.size(); ++y)
    if (!hit[y]) {
      report.surjective = false;
      report.problems.push_back("\"" + lower.id(y) + "\" has empty preimage");
    }

  // Components of each fibre, via union-find over fibre-internal edges.
  std::vector<VertexIndex> parent(upper.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](VertexIndex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [a, b] : upper.edges())
    if (bond[a] == bond[b]) parent[root(a)] = root(b);
  std::vector<std::size_t> components(lower.size(), 0);
  for (VertexIndex x = 0; x < upper.size(); ++x)
    if (root(x) == x) ++components[bond[x]];
  for (VertexIndex y = 0; y < lower.size(); ++y)
    if (components[y] > 1) {
      report.monotone = false;
      report.problems.push_back("fibre over \"" + lower.id(y) + "\" is disconnected");
    }
  return report;
}

OrbitResult orbit(const FiniteTreeAction& act, VertexIndex v, std::size_t word_length_cap) {
  if (v >= act.tree.size()) throw Error("vertex not in tree");
  std::vector<TreeAutomorphism> moves = act.generators;
  for (const auto& g : act.generators) moves.push_back(g.inverse());
  OrbitResult result;
  std::vector<char> seen(act.tree.size(), 0);
  seen[v] = 1;
  result.vertices.push_back(v);
  std::size_t layer_begin = 0;
  for (std::size_t length = 0; length < word_length_cap; ++length) {
    const std::size_t layer_end = result.vertices.size();
    if (layer_begin == layer_end) break;
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& g : moves) {
        VertexIndex w = g(result.vertices[i]);
        if (!seen[w]) {
          seen[w] = 1;
          result.vertices.push_back(w);
        }
      }
    }
    layer_begin = layer_end;
  }
  result.closed = true;
  for (VertexIndex u : result.vertices)
    for (const auto& g : moves)
      if (!seen[g(u)]) {
        result.closed = false;
        return result;
      }
  return result;
}

OrbitResult orbit(const FiniteTreeAction& act, const VertexId& v, std::size_t word_length_cap) {
  return orbit(act, act.tree.index(v), word_length_cap);
}

DegreeProfile degree_profile(const InverseSystem& sys) {
  DegreeProfile profile;
  for (const auto& level : sys.levels) {
    std::size_t best = 0;
    for (VertexIndex v = 0; v < level.tree.size(); ++v) best = std::max(best, level.tree.degree(v));
    profile.max_degree.push_back(best);
  }
  if (sys.provenance) {
    const auto& prov = *sys.provenance;
    std::size_t branching = 1;
    for (std::size_t k = 0; k < prov.n * prov.n - 1; ++k) branching *= prov.p;
    profile.stable_degree = branching + 1;
    for (std::size_t a = 2; a < profile.max_degree.size(); ++a)
      if (profile.max_degree[a] != *profile.stable_degree) profile.stabilized = false;
  }
  return profile;
}

bool is_thread(const InverseSystem& sys, const Thread& thread) {
  if (thread.size() != sys.levels.size()) return false;
  for (std::size_t a = 0; a < thread.size(); ++a)
    if (thread[a] >= sys.levels[a].tree.size()) return false;
  for (std::size_t a = 0; a + 1 < thread.size(); ++a)
    if (sys.bonds[a][thread[a + 1]] != thread[a]) return false;
  return true;
}

Thread act_on_thread(const InverseSystem& sys, std::size_t generator, const Thread& thread) {
  if (thread.size() != sys.levels.size()) throw Error("thread length does not match system depth");
  Thread out(thread.size());
  for (std::size_t a = 0; a < thread.size(); ++a) out[a] = sys.levels[a].generators.at(generator)(thread[a]);
  return out;
}

Thread thread_through(const InverseSystem& sys, VertexIndex deepest_vertex) {
  if (sys.levels.empty()) throw Error("empty inverse system");
  Thread thread(sys.levels.size());
  thread.back() = deepest_vertex;
  for (std::size_t a = sys.levels.size() - 1; a-- > 0;) thread[a] = sys.bonds[a].at(thread[a + 1]);
  return thread;
}

StarDendrite star_dendrite(int count) {
  if (count < 1) throw Error("star dendrite needs at least one arm pair");
  StarDendrite star;
  std::vector<VertexId> ids{"o"};
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::map<VertexId, Coordinates> embedding{{"o", {Rational(0), Rational(0)}}};
  for (int k = 1; k <= count; ++k) {
    for (int i : {k, -k}) {
      StarArm arm;
      arm.index = i;
      const int sign = i > 0 ? 1 : -1;
      arm.angle_over_pi = Rational(sign) * (Rational(1) - Rational(1, 2 * k));
      arm.length = Rational(1, k);
      arm.angle = arm.angle_over_pi.get_d() * std::numbers::pi;
      arm.length_value = 1.0 / k;
      arm.vertex = "arm" + std::string(i > 0 ? "+" : "") + std::to_string(i);
      Coordinates tip;
      if (k == 1) {
        // angle = +-pi/2: the only arms with rational endpoint coordinates.
        tip = {Rational(0), Rational(sign)};
        arm.coordinates_exact = true;
      } else {
        tip = {Rational(arm.length_value * std::cos(arm.angle)), Rational(arm.length_value * std::sin(arm.angle))};
        arm.coordinates_exact = false;
      }
      ids.push_back(arm.vertex);
      edges.emplace_back("o", arm.vertex);
      embedding.emplace(arm.vertex, std::move(tip));
      star.arms.push_back(std::move(arm));
    }
  }
  star.tree = Tree(std::move(ids), std::move(edges), std::move(embedding));
  return star;
}

std::string star_to_svg(const StarDendrite& star, double size_px) {
  const double half = size_px / 2.0;
  const double scale = half * 0.9;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\"" << size_px
      << "\" viewBox=\"0 0 " << size_px << ' ' << size_px << "\">\n";
  for (const auto& arm : star.arms) {
    const double x = half + scale * arm.length_value * std::cos(arm.angle);
    const double y = half - scale * arm.length_value * std::sin(arm.angle);
    out << "  <line x1=\"" << half << "\" y1=\"" << half << "\" x2=\"" << x << "\" y2=\"" << y
        << "\" stroke=\"black\" stroke-width=\"1.5\"><title>arm " << arm.index << "</title></line>\n";
  }
  out << "  <circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"3\" fill=\"red\"/>\n</svg>\n";
  return out.str();
}

Rational harmonic_length(std::size_t i) { return Rational(Integer(1), Integer(static_cast<unsigned long>(i))); }

DecoratedAction attach_decorations(const InverseSystem& sys, const VertexId& seed, const LengthRule& lengths) {
  if (sys.levels.empty()) throw Error("empty inverse system");
  const FiniteTreeAction& base = sys.levels.back();
  const Tree& tree = base.tree;
  const VertexIndex seed_index = tree.index(seed);
  if (tree.degree(seed_index) > 1) throw Error("seed not a leaf");

  const auto orbit_vertices = orbit(base, seed_index, static_cast<std::size_t>(-1)).vertices;
  const std::size_t n0 = tree.size();
  const std::size_t k = orbit_vertices.size();

  DecoratedAction out;
  std::vector<VertexId> ids = tree.ids();
  std::vector<Tree::Edge> edges = tree.edges();
  std::vector<std::size_t> position(n0, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < k; ++i) {
    position[orbit_vertices[i]] = i;
    const std::string stem = "pendant:" + std::to_string(i + 1);
    Pendant pendant{tree.id(orbit_vertices[i]), stem + ":mid", stem + ":tip", lengths(i + 1)};
    const auto middle = static_cast<VertexIndex>(n0 + 2 * i);
    ids.push_back(pendant.middle);
    ids.push_back(pendant.tip);
    edges.emplace_back(orbit_vertices[i], middle);
    edges.emplace_back(middle, middle + 1);
    out.pendants.push_back(std::move(pendant));
  }

  out.action.tree = Tree(std::move(ids), std::move(edges));
  out.action.generator_names = base.generator_names;
  out.action.generator_matrices = base.generator_matrices;
  for (const auto& g : base.generators) {
    std::vector<VertexIndex> images(g.images());
    images.resize(n0 + 2 * k);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = position[g(orbit_vertices[i])];
      images[n0 + 2 * i] = static_cast<VertexIndex>(n0 + 2 * j);
      images[n0 + 2 * i + 1] = static_cast<VertexIndex>(n0 + 2 * j + 1);
    }
    out.action.generators.emplace_back(std::move(images));
  }
  return out;
}

std::vector<std::size_t> projection_orbit_growth(const InverseSystem& sys, const DecoratedAction& decorated,
                                                 const VertexId& x, std::size_t word_length_cap) {
  const Tree& tree = decorated.action.tree;
  const bool on_pendant = std::any_of(decorated.pendants.begin(), decorated.pendants.end(),
                                      [&](const Pendant& p) { return p.middle == x || p.tip == x; });
  if (!on_pendant) throw Error("x is not on a pendant arc");
  const VertexIndex xi = tree.index(x);
  std::vector<std::size_t> sizes;
  for (const auto& level : sys.levels) {
    std::vector<char> in_sub(tree.size(), 0);
    for (const auto& id : level.tree.ids()) in_sub[tree.index(id)] = 1;
    VertexIndex r = first_point_map(tree, in_sub, xi);
    sizes.push_back(orbit(decorated.action, r, word_length_cap).vertices.size());
  }
  return sizes;
}

}  // namespace dendra
