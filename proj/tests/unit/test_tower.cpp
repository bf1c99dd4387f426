#include "oracles.hpp"

#include "dendra/error.hpp"
#include "dendra/io.hpp"
#include "dendra/tower.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace dendra;

namespace {

const InverseSystem& tower_322() {
  static const InverseSystem sys = build_congruence_tower(3, 2, 2);
  return sys;
}

std::size_t oracle_sl_order(std::size_t n, std::int64_t m) {
  std::vector<oracle::Mat> gens;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (i != j) gens.push_back(oracle::unipotent(n, i, j, m));
  return oracle::bfs_group(n, m, gens).size();
}

std::size_t leaves(const Tree& t) {
  std::size_t count = 0;
  for (VertexIndex v = 0; v < t.size(); ++v) count += t.degree(v) == 1;
  return count;
}

}  // namespace

TEST_CASE("depth zero tower") {
  const auto sys = build_congruence_tower(3, 2, 0);
  REQUIRE(sys.levels.size() == 1);
  CHECK(sys.levels[0].tree.size() == 1);
  for (const auto& g : sys.levels[0].generators) CHECK(g.is_identity());
  CHECK(verify_equivariant_bond(sys, 0).pass);
  CHECK(degree_profile(sys).max_degree == std::vector<std::size_t>{0});
}

TEST_CASE("tower (3,2,1)") {
  const auto sys = build_congruence_tower(3, 2, 1);
  const Tree& t = sys.levels[1].tree;
  CHECK(leaves(t) == oracle_sl_order(3, 2));
  CHECK(t.size() == 169);
  const auto root = t.index("0:root");
  const auto fixed = orbit(sys.levels[1], root, 10);
  CHECK(fixed.vertices.size() == 1);
  CHECK(fixed.closed);
  VertexIndex leaf = 0;
  while (t.degree(leaf) != 1) ++leaf;
  const auto leaf_orbit = orbit(sys.levels[1], leaf, 100);
  CHECK(leaf_orbit.vertices.size() == 168);
  CHECK(leaf_orbit.closed);
  CHECK(sys.levels[1].generator_names.size() == 6);
  CHECK(sys.levels[1].generator_names[0] == "u1,2");
}

TEST_CASE("tower (3,2,2) structure") {
  const auto& sys = tower_322();
  REQUIRE(sys.levels.size() == 3);
  const std::size_t q2 = oracle_sl_order(3, 2), q4 = oracle_sl_order(3, 4);
  CHECK(sys.levels[2].tree.size() == 1 + q2 + q4);
  CHECK(leaves(sys.levels[2].tree) == 43008);
  for (const auto& level : sys.levels) {
    CHECK(validate_tree(level.tree).ok);
    for (const auto& g : level.generators) CHECK(g.preserves(level.tree));
    const auto root = level.tree.index("0:root");
    for (const auto& g : level.generators) CHECK(g(root) == root);
  }
  const auto profile = degree_profile(sys);
  CHECK(profile.max_degree == std::vector<std::size_t>{0, 168, 257});
  for (std::size_t a = 0; a + 1 < sys.levels.size(); ++a) {
    CHECK(verify_equivariant_bond(sys, a).pass);
    CHECK(verify_bond_shape(sys, a).pass());
  }
  const Tree& t1 = sys.levels[1].tree;
  const Tree& t2 = sys.levels[2].tree;
  for (VertexIndex v = 0; v < t1.size(); ++v)
    if (t1.degree(v) == 1) CHECK(t2.degree(t2.index(t1.id(v))) == 257);
}

TEST_CASE("threads and provenance") {
  const auto& sys = tower_322();
  const Tree& deepest = sys.levels[2].tree;
  VertexIndex leaf = 0;
  while (deepest.degree(leaf) != 1) ++leaf;
  const auto thread = thread_through(sys, leaf);
  CHECK(is_thread(sys, thread));
  for (std::size_t g = 0; g < sys.levels[2].generators.size(); ++g) CHECK(is_thread(sys, act_on_thread(sys, g, thread)));
  REQUIRE(sys.provenance.has_value());
  CHECK(sys.provenance->quotient_modulus == 4);
  CHECK(sys.provenance->coset_representatives.size() == 2);
  CHECK(sys.provenance->coset_representatives[1].size() == 256);
}

TEST_CASE("scrambled bond is detected") {
  auto sys = build_congruence_tower(2, 2, 2);
  CHECK(verify_equivariant_bond(sys, 1).pass);
  auto& bond = sys.bonds[1];
  const Tree& t = sys.levels[2].tree;
  VertexIndex a = 0, b = 0;
  for (VertexIndex v = 0; v < t.size(); ++v)
    if (t.degree(v) == 1) {
      if (a == 0) a = v;
      else if (bond[v] != bond[a]) {
        b = v;
        break;
      }
    }
  std::swap(bond[a], bond[b]);
  const auto report = verify_equivariant_bond(sys, 1);
  CHECK_FALSE(report.pass);
  CHECK_FALSE(report.violations.empty());
}

TEST_CASE("degree stabilization") {
  const auto sys = build_congruence_tower(2, 2, 3);
  const auto profile = degree_profile(sys);
  CHECK(profile.max_degree == std::vector<std::size_t>{0, 6, 9, 9});
  CHECK(profile.stable_degree == 9);
  CHECK(profile.stabilized);
  for (std::size_t a = 0; a + 1 < sys.levels.size(); ++a) CHECK(verify_equivariant_bond(sys, a).pass);
}

TEST_CASE("tower errors") {
  CHECK_THROWS_WITH_AS(build_congruence_tower(3, 4, 1), "p must be prime", Error);
  CHECK_THROWS_AS(build_congruence_tower(1, 2, 1), Error);
  CHECK_THROWS_WITH_AS(build_congruence_tower(3, 2, 3), "group too large for cap", CapExceeded);
  CHECK_THROWS_AS(build_congruence_tower(3, 2, 2, 1000), CapExceeded);
}

TEST_CASE("tower JSON round trip") {
  const auto sys = build_congruence_tower(2, 2, 2);
  const auto j = io::to_json(sys);
  CHECK(j.at("provenance").at("p") == 2);
  const auto back = io::tower_from_json(j);
  CHECK(back.levels.size() == 3);
  CHECK(verify_equivariant_bond(back, 1).pass);
  CHECK(io::to_json(back).at("levels") == j.at("levels"));
}

TEST_CASE("star dendrite") {
  const auto star = star_dendrite(8);
  CHECK(star.arms.size() == 16);
  CHECK(validate_tree(star.tree).ok);
  for (const auto& arm : star.arms) {
    if (arm.index == 1) {
      CHECK(arm.angle_over_pi == Rational(Integer(1), Integer(2)));
      CHECK(arm.length == 1);
      CHECK(arm.coordinates_exact);
    }
    if (arm.index == -2) {
      CHECK(arm.angle_over_pi == Rational(Integer(-3), Integer(4)));
      CHECK(arm.length == Rational(Integer(1), Integer(2)));
      CHECK(arm.angle == doctest::Approx(-0.75 * std::numbers::pi));
    }
  }
  const auto pair = star_dendrite(1);
  CHECK(pair.tree.size() == 3);
  CHECK(point_order(pair.tree, "o") == 2);
  CHECK(star_to_svg(star).find("<svg") != std::string::npos);
  CHECK_THROWS_AS(star_dendrite(0), Error);
}

TEST_CASE("decorations on a trivial action") {
  Tree t({"v", "w"}, {{"v", "w"}});
  InverseSystem sys;
  sys.levels.push_back(trivial_action(t));
  const auto dec = attach_decorations(sys, "v");
  CHECK(dec.pendants.size() == 1);
  for (const auto& g : dec.action.generators) CHECK(g.is_identity());
  CHECK(projection_orbit_growth(sys, dec, dec.pendants[0].tip) == std::vector<std::size_t>{1});
}

TEST_CASE("decorations on (3,2,1)") {
  const auto sys = build_congruence_tower(3, 2, 1);
  const Tree& t = sys.levels[1].tree;
  VertexIndex leaf = 0;
  while (t.degree(leaf) != 1) ++leaf;
  const auto dec = attach_decorations(sys, t.id(leaf));
  REQUIRE(dec.pendants.size() == 168);
  CHECK(dec.pendants[0].length == 1);
  CHECK(dec.pendants[1].length == Rational(Integer(1), Integer(2)));
  CHECK(dec.pendants[2].length == Rational(Integer(1), Integer(3)));
  CHECK(validate_tree(dec.action.tree).ok);
  for (const auto& g : dec.action.generators) CHECK(g.preserves(dec.action.tree));
  const auto tips = orbit(dec.action, dec.pendants[0].tip, 100);
  CHECK(tips.vertices.size() == 168);
  CHECK(projection_orbit_growth(sys, dec, dec.pendants[0].tip) == std::vector<std::size_t>{1, 168});
  CHECK_THROWS_WITH_AS(attach_decorations(sys, "0:root"), "seed not a leaf", Error);
  CHECK_THROWS_AS(projection_orbit_growth(sys, dec, "0:root"), Error);
}

TEST_CASE("decorated (3,2,2) growth") {
  const auto& sys = tower_322();
  const Tree& t = sys.levels[2].tree;
  VertexIndex leaf = 0;
  while (t.degree(leaf) != 1) ++leaf;
  const auto dec = attach_decorations(sys, t.id(leaf));
  CHECK(dec.pendants.size() == 43008);
  CHECK(projection_orbit_growth(sys, dec, dec.pendants[0].middle) == std::vector<std::size_t>{1, 168, 43008});
}
