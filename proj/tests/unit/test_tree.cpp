#include "oracles.hpp"

#include "dendra/error.hpp"
#include "dendra/io.hpp"
#include "dendra/tree.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace dendra;

namespace {

Tree star3() { return Tree({"c", "l1", "l2", "l3"}, {{"c", "l1"}, {"c", "l2"}, {"c", "l3"}}); }
Tree path4() { return Tree({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}}); }

TreeAutomorphism swap(const Tree& t, const std::string& x, const std::string& y) {
  std::map<VertexId, VertexId> m;
  for (const auto& id : t.ids()) m[id] = id;
  m[x] = y;
  m[y] = x;
  return TreeAutomorphism::from_ids(t, m);
}

std::vector<char> mark(const Tree& t, std::initializer_list<const char*> ids) {
  std::vector<char> in(t.size(), 0);
  for (auto id : ids) in[t.index(id)] = 1;
  return in;
}

}  // namespace

TEST_CASE("validate_tree") {
  CHECK(validate_tree(Tree({"v"}, std::vector<std::pair<VertexId, VertexId>>{})).ok);
  CHECK(validate_tree(Tree({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}})).ok);
  const auto triangle = validate_tree(Tree({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}));
  CHECK_FALSE(triangle.ok);
  CHECK(triangle.diagnostic.find("cycle") == 0);
  const auto forest = validate_tree(Tree({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}}));
  CHECK_FALSE(forest.ok);
  CHECK_FALSE(forest.diagnostic.empty());
  CHECK_FALSE(validate_tree(Tree({"a", "b"}, {{"a", "a"}})).ok);
  CHECK_FALSE(validate_tree(Tree({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}})).ok);
  CHECK_THROWS_AS(Tree({"a", "a"}, std::vector<std::pair<VertexId, VertexId>>{}), Error);
}

TEST_CASE("embedding must be injective") {
  Tree t({"a", "b"}, {{"a", "b"}}, {{"a", {Rational(0), Rational(0)}}, {"b", {Rational(0), Rational(0)}}});
  CHECK_FALSE(validate_tree(t).ok);
  Tree u({"a", "b"}, {{"a", "b"}}, {{"a", {Rational(0), Rational(0)}}, {"b", {Rational(1), Rational(0)}}});
  CHECK(validate_tree(u).ok);
}

TEST_CASE("path") {
  const auto s = star3();
  CHECK(path(s, "l1", "l2") == std::vector<VertexId>{"l1", "c", "l2"});
  CHECK(path(s, "l1", "l1") == std::vector<VertexId>{"l1"});
  CHECK(path(path4(), "a", "d") == std::vector<VertexId>{"a", "b", "c", "d"});
  CHECK_THROWS_WITH_AS(path(s, "l1", "zz"), doctest::Contains("vertex not in tree"), Error);
}

TEST_CASE("first_point_map") {
  const auto p = path4();
  const std::vector<VertexId> ab{"a", "b"};
  CHECK(first_point_map(p, ab, "d") == "b");
  CHECK(first_point_map(p, ab, "a") == "a");
  const std::vector<VertexId> l1{"l1"};
  CHECK(first_point_map(star3(), l1, "l2") == "l1");
  const std::vector<VertexId> ad{"a", "d"};
  CHECK_THROWS_WITH_AS(first_point_map(p, ad, "b"), "subtree required", Error);
}

TEST_CASE("point_order") {
  CHECK(point_order(star3(), "c") == 3);
  CHECK(point_order(star3(), "l2") == 1);
  CHECK(point_order(Tree({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}), "b") == 2);
  CHECK_THROWS_WITH_AS(point_order(Tree({"v"}, std::vector<std::pair<VertexId, VertexId>>{}), "v"),
                       "order undefined on degenerate tree", Error);
}

TEST_CASE("convex_hull") {
  const std::vector<VertexId> a{"a"}, l12{"l1", "l2"}, ad{"a", "d"}, none{};
  CHECK(convex_hull(path4(), a) == std::vector<VertexId>{"a"});
  auto h = convex_hull(star3(), l12);
  std::sort(h.begin(), h.end());
  CHECK(h == std::vector<VertexId>{"c", "l1", "l2"});
  CHECK(convex_hull(path4(), ad).size() == 4);
  CHECK_THROWS_AS(convex_hull(path4(), none), Error);
}

TEST_CASE("second_fixed_point") {
  const auto s = star3();
  CHECK(second_fixed_point(s, TreeAutomorphism::identity(4), "l1") == "c");
  CHECK(second_fixed_point(s, swap(s, "l2", "l3"), "l1") == "c");
  const Tree abc({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  const auto autos = oracle::automorphisms_fixing(abc, abc.index("a"));
  REQUIRE(autos.size() == 1);
  CHECK(second_fixed_point(abc, TreeAutomorphism(autos[0]), "a") == "b");
  CHECK_THROWS_WITH_AS(second_fixed_point(s, swap(s, "l1", "l2"), "l1"), "endpoint not fixed", Error);
  CHECK_THROWS_AS(second_fixed_point(s, TreeAutomorphism::identity(4), "c"), Error);
}

TEST_CASE("common_fixed_point") {
  const Tree zmw({"z", "m", "w"}, {{"z", "m"}, {"m", "w"}});
  const std::vector<TreeAutomorphism> id{TreeAutomorphism::identity(3)};
  CHECK(common_fixed_point(zmw, id, "z") == "m");
  const Tree star4({"c", "z", "x", "y", "w"}, {{"c", "z"}, {"c", "x"}, {"c", "y"}, {"c", "w"}});
  std::vector<TreeAutomorphism> all;
  for (auto& images : oracle::automorphisms_fixing(star4, star4.index("z"))) all.emplace_back(images);
  CHECK(all.size() == 6);
  CHECK(common_fixed_point(star4, all, "z") == "c");
  const std::vector<TreeAutomorphism> moving{swap(star4, "z", "x")};
  CHECK_THROWS_AS(common_fixed_point(star4, moving, "z"), Error);
}

TEST_CASE("automorphism construction") {
  const auto s = star3();
  CHECK_THROWS_AS(TreeAutomorphism({0, 0, 1, 2}), Error);
  CHECK_THROWS_WITH_AS(TreeAutomorphism::of(s, {1, 0, 2, 3}), "not a tree automorphism", Error);
  const auto h = swap(s, "l1", "l2");
  CHECK(h.compose(h).is_identity());
  CHECK(h.inverse() == h);
  CHECK(h.fixed_vertices().size() == 2);
}

TEST_CASE("tree JSON round trip and DOT") {
  Tree t({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}},
         {{"a", {Rational(0), Rational(0)}}, {"b", {Rational(Integer(1), Integer(2)), Rational(0)}}, {"c", {Rational(1), Rational(Integer(-1), Integer(3))}}});
  const auto j = io::to_json(t);
  CHECK(j.at("embedding").at("c").at(1) == "-1/3");
  const Tree back = io::tree_from_json(j);
  CHECK(io::to_json(back) == j);
  const std::string dot = to_dot(t);
  CHECK(dot.find("graph") != std::string::npos);
  CHECK(dot.find("\"a\" -- \"b\"") != std::string::npos);
}

TEST_CASE("properties on random trees") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 30)(rng);
    const Tree t = oracle::random_tree(n, rng);
    REQUIRE(validate_tree(t).ok);
    std::size_t order_sum = 0;
    for (const auto& id : t.ids()) order_sum += point_order(t, id);
    CHECK(order_sum == 2 * t.edge_count());

    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int k = 0; k < 10; ++k) {
      const auto a = t.id(pick(rng)), b = t.id(pick(rng));
      auto forward = path(t, a, b), backward = path(t, b, a);
      std::reverse(backward.begin(), backward.end());
      CHECK(forward == backward);
      for (std::size_t i = 1; i < forward.size(); ++i) CHECK(t.adjacent(t.index(forward[i - 1]), t.index(forward[i])));
    }

    // A connected sub-tree: the hull of a few random vertices.
    std::vector<VertexId> seeds{t.id(pick(rng)), t.id(pick(rng))};
    const auto sub = convex_hull(t, seeds);
    std::vector<char> in(n, 0);
    for (const auto& v : sub) in[t.index(v)] = 1;
    REQUIRE(induces_connected_subtree(t, in));
    for (const auto& x : t.ids()) {
      const auto r = first_point_map(t, sub, x);
      CHECK(first_point_map(t, sub, r) == r);
      const auto arc = path(t, x, r);
      for (const auto& v : arc) CHECK((v == r) == static_cast<bool>(in[t.index(v)]));
    }
  }
}

TEST_CASE("convex hull equals brute-force minimal connected superset") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
    const Tree t = oracle::random_tree(n, rng);
    std::vector<VertexIndex> s;
    for (VertexIndex v = 0; v < n; ++v)
      if (rng() % 3 == 0) s.push_back(v);
    if (s.empty()) s.push_back(0);
    std::size_t best = n + 1;
    std::vector<char> best_set;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<char> in(n, 0);
      std::size_t size = 0;
      for (std::size_t v = 0; v < n; ++v) size += in[v] = (mask >> v) & 1;
      if (size >= best) continue;
      if (!std::all_of(s.begin(), s.end(), [&](VertexIndex v) { return in[v]; })) continue;
      if (!induces_connected_subtree(t, in)) continue;
      best = size;
      best_set = in;
    }
    auto hull = convex_hull(t, s);
    std::vector<char> got(n, 0);
    for (auto v : hull) got[v] = 1;
    CHECK(got == best_set);
  }
}

TEST_CASE("every automorphism fixing a leaf fixes a second vertex") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 10)(rng);
    const Tree t = trial % 2 ? oracle::random_tree(n, rng) : oracle::symmetric_tree(n, rng);
    for (VertexIndex e = 0; e < t.size(); ++e) {
      if (t.degree(e) != 1) continue;
      for (auto& images : oracle::automorphisms_fixing(t, e)) {
        const TreeAutomorphism h(images);
        REQUIRE(h.preserves(t));
        CHECK(h.fixed_vertices().size() >= 2);
        const auto o = t.index(second_fixed_point(t, h, t.id(e)));
        CHECK(o != e);
        CHECK(h(o) == o);
      }
    }
  }
}
