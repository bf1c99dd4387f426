#include "dendra/error.hpp"
#include "dendra/matgrp.hpp"
#include "dendra/ordering.hpp"
#include "dendra/realize.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace dendra;

namespace {

const GroupMatrix t = elementary(2, 1, 2, 1);

Rational q(long a, long b = 1) { return Rational(Integer(a), Integer(b)); }

std::shared_ptr<const Ball> z_ball(std::size_t radius) {
  return std::make_shared<const Ball>(ball_generate(std::vector<GroupMatrix>{t}, radius, {"t"}));
}

OrderAssignment natural(std::shared_ptr<const Ball> b) {
  std::vector<long long> rank;
  for (const auto& g : b->elements()) rank.push_back(g(0, 1).get_si());
  return OrderAssignment::from_ranks(b, rank);
}

std::vector<std::size_t> indices_of(const Ball& b, std::initializer_list<long> powers) {
  std::vector<std::size_t> out;
  for (long k : powers) out.push_back(b.index(t.pow(k)));
  return out;
}

}  // namespace

TEST_CASE("PLHomeo basics") {
  const PLHomeo m({{q(0), q(1)}, {q(2), q(5)}});
  CHECK(m.evaluate(q(1)) == q(3));
  CHECK_FALSE(m.evaluate(q(3)).has_value());
  CHECK(m.inverse().evaluate(q(3)) == q(1));
  CHECK(m.evaluate(ArcPoint::minus_infinity()) == ArcPoint::minus_infinity());
  CHECK(m.evaluate(ArcPoint::plus_infinity())->to_string() == "+inf");
  CHECK_THROWS_AS(PLHomeo({{q(0), q(1)}, {q(2), q(1)}}), Error);
  CHECK_FALSE(PLHomeo::unchecked({{q(0), q(1)}, {q(2), q(1)}}).is_strictly_increasing());
  const auto back = pl_from_csv(to_csv(m));
  CHECK(back == m);
  CHECK(to_csv(m).rfind("input,output\n", 0) == 0);
}

TEST_CASE("fixed_set") {
  const std::vector<Rational> pts{q(-1), q(0), q(3)};
  const auto whole = fixed_set(PLHomeo::identity(pts));
  REQUIRE(whole.intervals.size() == 1);
  CHECK(whole.intervals[0] == std::make_pair(q(-1), q(3)));
  const auto shift = fixed_set(PLHomeo({{q(0), q(1)}, {q(1), q(2)}, {q(2), q(3)}}));
  CHECK(shift.empty_interior());
  CHECK(shift.ends_fixed);
  const auto part = fixed_set(PLHomeo({{q(0), q(0)}, {q(1), q(1)}, {q(2), q(3)}}));
  REQUIRE(part.intervals.size() == 1);
  CHECK(part.intervals[0] == std::make_pair(q(0), q(1)));
  CHECK(part.points.empty());
  const auto crossing = fixed_set(PLHomeo({{q(0), q(1)}, {q(4), q(3)}}));
  REQUIRE(crossing.points.size() == 1);
  CHECK(crossing.points[0] == q(2));
}

TEST_CASE("realize follows the induction rule") {
  auto b = z_ball(2);
  const auto phi = natural(b);
  const auto std_enum = indices_of(*b, {0, 1, -1, 2, -2});
  const auto rm = realize(std_enum, phi);
  CHECK(rm.t == std::vector<Rational>{q(0), q(1), q(-1), q(2), q(-2)});
  const auto mid = realize(indices_of(*b, {0, 2, 1}), phi);
  CHECK(mid.t == std::vector<Rational>{q(0), q(1), q(1, 2)});
  CHECK(realize(indices_of(*b, {0}), phi).t == std::vector<Rational>{q(0)});
  const auto deeper = realize(indices_of(*b, {0, 2, 1, -2, -1}), phi);
  CHECK(deeper.t_of(t.pow(-1)) == q(-1, 2));
  CHECK_THROWS_AS(realize(std::vector<std::size_t>{}, phi), Error);
  CHECK_THROWS_AS(realize(indices_of(*b, {0, 1, 0}), phi), Error);
  CHECK_THROWS_AS(realize(std_enum, OrderAssignment(b)), Error);
}

TEST_CASE("realizations are order isomorphisms with dyadic values") {
  std::mt19937_64 rng(17);
  const std::vector<GroupMatrix> z2{elementary(3, 1, 3, 1), elementary(3, 2, 3, 1)};
  auto b = std::make_shared<const Ball>(ball_generate(z2, 3));
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long long> rank(b->size());
    std::iota(rank.begin(), rank.end(), 0);
    std::shuffle(rank.begin(), rank.end(), rng);
    const auto phi = OrderAssignment::from_ranks(b, rank);
    std::vector<std::size_t> order(b->size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const auto rm = realize(order, phi);
    for (std::size_t i = 0; i < order.size(); ++i) {
      CHECK(has_dyadic_denominator(rm.t[i]));
      for (std::size_t j = 0; j < order.size(); ++j)
        if (i != j) CHECK((rank[order[i]] < rank[order[j]]) == (rm.t[i] < rm.t[j]));
    }
    CHECK(rm.t[0] == 0);
  }
}

TEST_CASE("generator maps") {
  auto b = z_ball(10);
  const auto rm = realize(b->discovery_order(), natural(b));
  const auto id = generator_pl_map(rm, GroupMatrix::identity(2), "e", *b);
  for (const auto& [x, y] : id.map.map.breakpoints()) CHECK(x == y);
  const auto plus = generator_pl_map(rm, t, "t", *b);
  CHECK(plus.map.map.breakpoints().size() == 20);
  for (const auto& [x, y] : plus.map.map.breakpoints()) CHECK(y == x + 1);
  CHECK(plus.map.map.is_strictly_increasing());
  CHECK(plus.map.map.evaluate(ArcPoint::minus_infinity()) == ArcPoint::minus_infinity());
  CHECK_THROWS_WITH_AS(generator_pl_map(rm, t.pow(30), "t^30", *b), "empty realizable sub-ball", Error);
}

TEST_CASE("verify_realization and almost freeness") {
  auto b = z_ball(10);
  const auto rm = realize(b->discovery_order(), natural(b));
  auto arc = realized_arc_action(rm, *b);
  CHECK(arc.maps.size() == 21);
  CHECK(verify_realization(rm, arc.maps, *b).pass);
  CHECK(almost_free_report(arc.maps).almost_free);

  auto corrupted = arc.maps;
  for (auto& m : corrupted)
    if (m.element == t) {
      auto bp = m.map.breakpoints();
      bp[3].second += Rational(Integer(1), Integer(4));
      m.map = PLHomeo::unchecked(bp);
    }
  const auto bad = verify_realization(rm, corrupted, *b);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.violations.empty());

  auto single = z_ball(0);
  const auto trivial = realize(single->discovery_order(), natural(single));
  CHECK(verify_realization(trivial, realized_arc_action(trivial, *single).maps, *single).pass);

  const std::vector<LabeledMap> none;
  CHECK(almost_free_report(none).almost_free);
  const std::vector<LabeledMap> sticky{{t, "t", PLHomeo({{q(0), q(0)}, {q(1), q(1)}, {q(2), q(3)}})}};
  const auto report = almost_free_report(sticky);
  CHECK_FALSE(report.almost_free);
  REQUIRE(report.witnesses.size() == 1);
  CHECK(report.witnesses[0].lo == q(0));
  CHECK(report.witnesses[0].hi == q(1));
  const std::vector<LabeledMap> identity{{GroupMatrix::identity(2), "e", PLHomeo::identity(std::vector<Rational>{q(0), q(1)})}};
  CHECK(almost_free_report(identity).almost_free);
}

TEST_CASE("round trip through the realized arc") {
  auto b = z_ball(10);
  const auto phi = natural(b);
  const auto rm = realize(b->discovery_order(), phi);
  for (std::size_t i = 0; i < b->size(); ++i) CHECK(rm.t_of(b->element(i)) == Rational(b->element(i)(0, 1)));
  const auto arc = realized_arc_action(rm, *b);
  const std::vector<Rational> probes{q(0), q(1)};
  CHECK(order_from_action(arc, probes, b) == phi);
  const std::vector<Rational> outside{q(50)};
  CHECK_THROWS_AS(order_from_action(arc, outside, b), Error);

  const Tree path = subdivided_arc(rm);
  CHECK(validate_tree(path).ok);
  CHECK(path.size() == 23);
  CHECK(path.contains("-inf"));
  CHECK(point_order(path, "+inf") == 1);
  CHECK(to_csv(rm).rfind("word,t\n", 0) == 0);
  CHECK(to_svg(arc.maps[0].map, "map").find("<svg") != std::string::npos);
}
