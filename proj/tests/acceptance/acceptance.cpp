// Runs the nine acceptance checks and prints one PASS/FAIL line for each.
// Exit status is the number of failing checks.

#include "oracles.hpp"

#include "dendra/io.hpp"
#include "dendra/matgrp.hpp"
#include "dendra/ordering.hpp"
#include "dendra/realize.hpp"
#include "dendra/tower.hpp"
#include "dendra/tree.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dendra;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

using Check = std::function<void(Outcome&)>;

std::size_t count_leaves(const Tree& t) {
  std::size_t leaves = 0;
  for (VertexIndex v = 0; v < t.size(); ++v) leaves += t.degree(v) == 1;
  return leaves;
}

std::vector<oracle::Mat> unipotents(std::size_t n, std::int64_t m) {
  std::vector<oracle::Mat> gens;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (i != j) gens.push_back(oracle::unipotent(n, i, j, m));
  return gens;
}

void congruence_tower(Outcome& o) {
  const std::size_t sl3_mod2 = oracle::bfs_group(3, 2, unipotents(3, 2)).size();
  const std::size_t sl3_mod4 = oracle::bfs_group(3, 4, unipotents(3, 4)).size();
  const auto sys = build_congruence_tower(3, 2, 2);
  const Tree& t1 = sys.levels[1].tree;
  const Tree& t2 = sys.levels[2].tree;
  o.require(count_leaves(t1) == sl3_mod2 && sl3_mod2 == 168, "level-1 leaves");
  o.require(count_leaves(t2) == sl3_mod4 && sl3_mod4 == 43008, "level-2 leaves");
  std::size_t bad_branching = 0;
  for (VertexIndex v = 0; v < t1.size(); ++v)
    if (t1.degree(v) == 1 && t2.degree(t2.index(t1.id(v))) != 256 + 1) ++bad_branching;
  o.require(bad_branching == 0, "branching 2^8 below every level-1 leaf");

  const auto& act1 = sys.levels[1];
  const auto& act2 = sys.levels[2];
  const auto& psi = sys.bonds[1];
  std::size_t violations = 0, checked = 0;
  for (std::size_t g = 0; g < act2.generators.size(); ++g)
    for (VertexIndex x = 0; x < t2.size(); ++x, ++checked)
      if (psi[act2.generators[g](x)] != act1.generators[g](psi[x])) ++violations;
  o.require(act2.generators.size() == 6, "six generators");
  o.require(violations == 0, "equivariance of the level-2 bond");
  const auto report = verify_equivariant_bond(sys, 1);
  o.require(report.pass && report.violations.empty(), "library equivariance report");
  o.detail << "leaves 168/43008, branching 256, " << checked << " equivariance checks, " << violations
           << " violations";
}

void hexagon(Outcome& o) {
  std::size_t cases = 0;
  for (int r = 1; r <= 3; ++r, ++cases) {
    const auto gens = six_generators(r);
    o.require(verify_hexagon_relations(gens, r).pass, "six_generators r=" + std::to_string(r));
  }
  for (std::size_t n = 3; n <= 5; ++n)
    for (std::size_t i = 1; i + 1 <= n - 1; ++i)
      for (std::size_t j = i + 1; j <= n - 1; ++j)
        for (int l = 1; l <= 2; ++l, ++cases) {
          const auto gens = six_generators_embedded(n, i, j, l);
          o.require(verify_hexagon_relations(gens, l).pass,
                    "embedded n=" + std::to_string(n) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
        }
  o.detail << cases << " generator sets";
}

oracle::Mat power_z(oracle::Mat a, long k) {
  oracle::Mat r = oracle::identity(3);
  for (long i = 0; i < k; ++i) r = oracle::mul_z(r, a, 3);
  return r;
}

oracle::Mat unipotent_z(std::size_t i, std::size_t j, long v) {
  oracle::Mat u = oracle::identity(3);
  u[(i - 1) * 3 + (j - 1)] = v;
  return u;
}

void ll_identity(Outcome& o) {
  std::size_t cases = 0, oracle_agrees = 0;
  for (long r = 1; r <= 3; ++r) {
    const auto a = elementary(3, 1, 2, r), b = elementary(3, 2, 3, 1), c = elementary(3, 1, 3, 1);
    for (long m = 1; m <= 5; ++m)
      for (long p = 1; p <= 5; ++p)
        for (long q = 1; q <= 5; ++q, ++cases) {
          o.require(verify_ll_identity(a, b, c, r, p, q, m), "identity r,m,p,q");
          // (b^-1 c^q)^m (a^-1 c^p)^m b^m a^m against c^(m(p+q) - m^2 r) over Z.
          const auto lhs = oracle::mul_z(
              oracle::mul_z(power_z(oracle::mul_z(unipotent_z(2, 3, -1), unipotent_z(1, 3, q), 3), m),
                            power_z(oracle::mul_z(unipotent_z(1, 2, -r), unipotent_z(1, 3, p), 3), m), 3),
              oracle::mul_z(unipotent_z(2, 3, m), unipotent_z(1, 2, r * m), 3), 3);
          oracle_agrees += lhs == unipotent_z(1, 3, m * (p + q) - m * m * r);
        }
  }
  o.require(oracle_agrees == cases, "integer oracle");
  o.detail << cases << " cases";
}

struct SearchSetup {
  std::vector<GroupMatrix> f;
  Ball b;
  std::shared_ptr<const Ball> b2;
};

SearchSetup setup(const std::vector<GroupMatrix>& gens, std::size_t radius) {
  SearchSetup s;
  for (const auto& g : gens) {
    s.f.push_back(g);
    s.f.push_back(g.inverse());
  }
  s.b = ball_generate(gens, radius);
  s.b2 = std::make_shared<const Ball>(ball_generate(gens, radius + 1));
  return s;
}

void ordering_search(Outcome& o) {
  for (const char* name : {"torsion-z2", "torsion-z3", "torsion-z4"}) {
    const auto preset = order_preset(name);
    auto s = setup(preset.generators, preset.radius);
    o.require(search_invariant(s.f, s.b, s.b2).outcome == SearchOutcome::unsat, std::string(name) + " unsat");
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      SearchOptions opts;
      opts.shuffle_seed = seed;
      o.require(search_invariant(s.f, s.b, s.b2, opts).outcome == SearchOutcome::unsat,
                std::string(name) + " unsat under shuffle");
    }
  }
  {
    auto s = setup({elementary(2, 1, 2, 1)}, 3);
    const auto r = search_invariant(s.f, s.b, s.b2);
    o.require(r.outcome == SearchOutcome::sat && r.witness.has_value(), "Z radius 3 sat");
    if (r.witness) {
      o.require(check_axioms(*r.witness, *s.b2).pass, "witness axioms");
      o.require(check_invariance(*r.witness, s.f, s.b, *s.b2).pass, "witness invariance");
    }
    const std::string first = io::to_json(r, *s.b2).dump();
    const std::string second = io::to_json(search_invariant(s.f, s.b, s.b2), *s.b2).dump();
    o.require(first == second, "determinism");
  }
  {
    auto s = setup({elementary(3, 1, 3, 1), elementary(3, 2, 3, 1)}, 1);
    const auto r = search_invariant(s.f, s.b, s.b2);
    o.require(r.outcome == SearchOutcome::sat, "Z^2 radius 1 sat");
    if (r.witness) o.require(check_invariance(*r.witness, s.f, s.b, *s.b2).pass, "Z^2 witness invariance");
    o.require(io::to_json(r, *s.b2).dump() == io::to_json(search_invariant(s.f, s.b, s.b2), *s.b2).dump(),
              "Z^2 determinism");
  }
  o.detail << "torsion unsat (30 shuffles), Z and Z^2 sat, repeat runs identical";
}

void realization(Outcome& o) {
  const std::vector<GroupMatrix> gens{elementary(2, 1, 2, 1)};
  auto b = std::make_shared<const Ball>(ball_generate(gens, 10));
  o.require(b->size() == 21, "21 elements");
  std::vector<long long> rank;
  for (const auto& g : b->elements()) rank.push_back(g(0, 1).get_si());
  const auto order = OrderAssignment::from_ranks(b, rank);
  const auto rm = realize(b->discovery_order(), order);
  // Discovery order e, t, t^-1, t^2, t^-2, ...: each new element lands one past
  // the current extreme on its side, so t(t^k) = k.
  std::size_t exact = 0;
  for (std::size_t i = 0; i < b->size(); ++i)
    exact += rm.t_of(b->element(i)) == Rational(static_cast<long>(rank[i]));
  o.require(exact == 21, "t(k) = k");
  const auto sorted = order.sorted();
  bool monotone = true;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    monotone = monotone && *rm.t_of(b->element(sorted[i - 1])) < *rm.t_of(b->element(sorted[i]));
  o.require(monotone, "strict monotonicity");
  const auto arc = realized_arc_action(rm, *b);
  const auto report = verify_realization(rm, arc.maps, *b);
  o.require(report.pass, "equivariance and composition");
  o.require(almost_free_report(arc.maps).almost_free, "almost free");
  const std::vector<Rational> probes{Rational(0), Rational(1), Rational(2), Rational(3)};
  o.require(order_from_action(arc, probes, b) == order, "round trip");
  o.detail << "21 t-values exact, " << arc.maps.size() << " maps, " << report.checked << " relations checked";
}

void fixed_points(Outcome& o) {
  std::mt19937_64 rng(20260101);
  std::size_t autos = 0, sets = 0, failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 50)(rng);
    const Tree t = trial % 2 == 0 ? oracle::random_tree(n, rng) : oracle::symmetric_tree(n, rng);
    std::vector<VertexIndex> leaves;
    for (VertexIndex v = 0; v < t.size(); ++v)
      if (t.degree(v) == 1) leaves.push_back(v);
    const VertexIndex e = leaves[std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng)];
    std::vector<TreeAutomorphism> group;
    if (t.size() <= 12) {
      for (auto& images : oracle::automorphisms_fixing(t, e)) group.emplace_back(std::move(images));
    } else {
      for (int k = 0; k < 24; ++k) group.emplace_back(oracle::random_automorphism(t, e, rng));
    }
    for (const auto& h : group) {
      ++autos;
      if (!h.preserves(t) || h(e) != e) {
        ++failures;
        continue;
      }
      const VertexIndex o2 = t.index(second_fixed_point(t, h, t.id(e)));
      failures += o2 == e || h(o2) != o2;
    }
    for (int k = 0; k < 10; ++k, ++sets) {
      std::vector<TreeAutomorphism> gens;
      const auto size = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
      for (std::size_t i = 0; i < size; ++i)
        gens.push_back(group[std::uniform_int_distribution<std::size_t>(0, group.size() - 1)(rng)]);
      const VertexIndex c = t.index(common_fixed_point(t, gens, t.id(e)));
      bool ok = c != e;
      for (const auto& g : gens) ok = ok && g(c) == c;
      failures += !ok;
    }
  }
  o.require(failures == 0, "fixed vertex verified");
  o.detail << "200 trees, " << autos << " automorphisms, " << sets << " generator sets, " << failures
           << " failures";
}

oracle::Mat to_oracle(std::span<const std::uint32_t> entries) { return oracle::Mat(entries.begin(), entries.end()); }

void core_against_brute_force(Outcome& o, std::uint64_t m, std::size_t expected_order, std::size_t& subgroups) {
  const std::vector<GroupMatrix> gens{elementary(2, 1, 2, 1, m), elementary(2, 2, 1, 1, m)};
  const auto g = enumerate_group(2, m, gens);
  const auto table = oracle::table_of(
      oracle::bfs_group(2, static_cast<std::int64_t>(m), {oracle::unipotent(2, 1, 2, m), oracle::unipotent(2, 2, 1, m)}),
      2, static_cast<std::int64_t>(m));
  o.require(g.order() == expected_order && table.elements.size() == expected_order, "group order");
  std::map<oracle::Mat, std::size_t> to_table;
  for (std::size_t i = 0; i < table.elements.size(); ++i) to_table[table.elements[i]] = i;
  const auto all = oracle::subgroups(table);
  for (const auto& h : all) {
    ++subgroups;
    std::vector<FiniteMatrixGroup::Index> h_lib;
    for (auto x : h) h_lib.push_back(*g.find(GroupMatrix(2, {table.elements[x].begin(), table.elements[x].end()}, m)));
    oracle::Subset core;
    for (auto i : normal_core(g, h_lib)) core.insert(to_table.at(to_oracle(g.entries(i))));
    o.require(core == oracle::largest_normal_inside(table, h, all), "core equals brute force");
    Integer factorial = 1;
    for (std::size_t k = 2; k <= expected_order / h.size(); ++k) factorial *= static_cast<unsigned long>(k);
    o.require(factorial % Integer(static_cast<unsigned long>(expected_order / core.size())) == 0,
              "index divides [G:H]!");
  }
}

void normal_core_check(Outcome& o) {
  std::size_t subgroups = 0;
  core_against_brute_force(o, 2, 6, subgroups);
  core_against_brute_force(o, 3, 24, subgroups);
  o.detail << subgroups << " subgroups of SL_2(Z/2) and SL_2(Z/3)";
}

void decorated_tower(Outcome& o) {
  const auto sys = build_congruence_tower(3, 2, 2);
  const Tree& deepest = sys.levels.back().tree;
  VertexId seed;
  for (VertexIndex v = 0; v < deepest.size() && seed.empty(); ++v)
    if (deepest.degree(v) == 1) seed = deepest.id(v);
  const auto decorated = attach_decorations(sys, seed);
  const auto growth = projection_orbit_growth(sys, decorated, decorated.pendants.front().tip);
  const std::vector<std::size_t> expected{1, oracle::bfs_group(3, 2, unipotents(3, 2)).size(),
                                          oracle::bfs_group(3, 4, unipotents(3, 4)).size()};
  o.require(growth == expected, "growth 1, 168, 43008");
  o.require(growth.size() == 3 && growth[0] < growth[1] && growth[1] < growth[2], "strictly increasing");
  o.detail << "growth";
  for (auto g : growth) o.detail << ' ' << g;
}

void star_geometry(Outcome& o) {
  const auto star = star_dendrite(8);
  const auto exported = io::to_json(star.tree);
  std::size_t arms = 0;
  for (const auto& arm : star.arms) {
    ++arms;
    const int i = arm.index, a = std::abs(i), sign = i > 0 ? 1 : -1;
    const Rational angle = Rational(sign) * (Rational(1) - Rational(Integer(1), Integer(2 * a)));
    const Rational length(Integer(1), Integer(a));
    o.require(arm.angle_over_pi == angle && arm.length == length, "exact angle and length");
    const double theta = sign * (1.0 - 1.0 / (2.0 * a)) * std::numbers::pi;
    o.require(std::abs(arm.angle - theta) < 1e-9 && std::abs(arm.length_value - 1.0 / a) < 1e-9, "float export");
    const auto& xy = exported.at("embedding").at(arm.vertex);
    const double x = parse_rational(xy.at(0).get<std::string>()).get_d();
    const double y = parse_rational(xy.at(1).get<std::string>()).get_d();
    o.require(std::abs(x - std::cos(theta) / a) < 1e-9 && std::abs(y - std::sin(theta) / a) < 1e-9,
              "exported endpoint");
  }
  o.require(arms == 16, "sixteen arms");
  o.detail << arms << " arms";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Check run;
    double seconds_limit;
  };
  const std::vector<Criterion> criteria{
      {"congruence tower (3,2,2)", congruence_tower, 60},
      {"hexagon relations", hexagon, 1},
      {"Heisenberg identity, 375 cases", ll_identity, 1},
      {"invariant order search", ordering_search, 60},
      {"realization round trip on the Z-ball", realization, 60},
      {"fixed points on random trees", fixed_points, 60},
      {"normal core against brute force", normal_core_check, 60},
      {"decorated tower orbit growth", decorated_tower, 60},
      {"star dendrite geometry", star_geometry, 60},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[k].run(o);
    } catch (const std::exception& ex) {
      o.require(false, std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < criteria[k].seconds_limit, "runtime");
    failed += !o.pass;
    std::printf("%s %zu %s (%s; %.3f s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].name, o.detail.str().c_str(),
                secs);
  }
  return failed;
}
