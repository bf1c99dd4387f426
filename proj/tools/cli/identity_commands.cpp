#include "presets.hpp"
#include "report.hpp"

#include "dendra/error.hpp"
#include "dendra/matgrp.hpp"

#include <algorithm>
#include <set>

namespace dendra::cli {

namespace {

using Index = FiniteMatrixGroup::Index;

std::vector<Index> closure(const FiniteMatrixGroup& g, std::initializer_list<Index> gens) {
  std::vector<Index> elements{g.identity_index()};
  std::vector<char> seen(g.order(), 0);
  seen[g.identity_index()] = 1;
  for (std::size_t head = 0; head < elements.size(); ++head)
    for (Index s : gens) {
      Index next = g.multiply(elements[head], s);
      if (!seen[next]) {
        seen[next] = 1;
        elements.push_back(next);
      }
    }
  std::sort(elements.begin(), elements.end());
  return elements;
}

bool is_normal(const FiniteMatrixGroup& g, const std::vector<Index>& k) {
  std::vector<char> in(g.order(), 0);
  for (Index x : k) in[x] = 1;
  for (Index y = 0; y < g.order(); ++y)
    for (Index x : k)
      if (!in[g.multiply(g.multiply(y, x), g.inverse(y))]) return false;
  return true;
}

Integer factorial(std::size_t n) {
  Integer out = 1;
  for (std::size_t k = 2; k <= n; ++k) out *= static_cast<unsigned long>(k);
  return out;
}

}  // namespace

void add_identity_commands(CLI::App& app, Context& ctx) {
  auto* ids = app.add_subcommand("identities", "Exact matrix identities");
  ids->require_subcommand(1);

  {
    auto* cmd = ids->add_subcommand("hexagon", "Commutator relations of the six unipotent generators");
    struct Opts {
      std::string preset;
      long r = 1;
      bool embedded = false;
      std::size_t n = 3, i = 1, j = 2;
      long l = 1;
    };
    auto o = std::make_shared<Opts>();
    auto* preset = cmd->add_option("--preset", o->preset, "Named instance (see `presets`)");
    preset->excludes(cmd->add_option("-r", o->r, "Off-diagonal entry r")->check(CLI::PositiveNumber));
    preset->excludes(cmd->add_flag("--embedded", o->embedded, "Use the generators embedded in SL_n(Z)"));
    cmd->add_option("-n", o->n, "Dimension for --embedded")->check(CLI::Range(3, 12));
    cmd->add_option("-i", o->i, "Row index for --embedded");
    cmd->add_option("-j", o->j, "Column index for --embedded");
    cmd->add_option("-l", o->l, "Power for --embedded")->check(CLI::PositiveNumber);
    cmd->callback([&ctx, o] {
      ctx.action = [&ctx, o] {
        if (!o->preset.empty()) {
          for (const auto& [k, v] : find_preset(o->preset, "identities hexagon").parameters) {
            if (k == "r") o->r = std::stol(v);
            if (k == "n") o->embedded = true, o->n = std::stoul(v);
            if (k == "i") o->i = std::stoul(v);
            if (k == "j") o->j = std::stoul(v);
            if (k == "l") o->l = std::stol(v);
          }
        }
        json params = json::object();
        if (!o->preset.empty()) params["preset"] = o->preset;
        std::array<GroupMatrix, 6> gens;
        Integer r;
        if (o->embedded) {
          gens = six_generators_embedded(o->n, o->i, o->j, o->l);
          r = o->l;
          params.update({{"embedded", true}, {"n", o->n}, {"i", o->i}, {"j", o->j}, {"l", o->l}});
        } else {
          gens = six_generators(o->r);
          r = o->r;
          params["r"] = o->r;
        }
        auto rep = verify_hexagon_relations(gens, r);
        json checks = json::array();
        for (const auto& c : rep.checks)
          checks.push_back(
              {{"index", c.index}, {"commutes", c.commutes}, {"power_relation", c.power_relation}, {"sign", c.sign}});
        json report = make_report("identities hexagon", params);
        json gen_json = json::array();
        for (const auto& g : gens) gen_json.push_back(io::to_json(g));
        report["result"] = {{"relation_power", io::to_json(r)},
                            {"generators", gen_json},
                            {"checks", checks},
                            {"first_failure", rep.first_failure ? json(*rep.first_failure) : json(nullptr)}};
        return emit(ctx, std::move(report), rep.pass ? kPass : kFail);
      };
    });
  }

  {
    auto* cmd = ids->add_subcommand("ll", "Commutator word identity on the Heisenberg triple, swept over parameters");
    auto preset = std::make_shared<std::string>();
    auto r_max = std::make_shared<long>(3);
    auto m_max = std::make_shared<long>(5);
    cmd->add_option("--preset", *preset, "Named instance (see `presets`)");
    cmd->add_option("--r-max", *r_max, "Sweep r = 1..r-max")->check(CLI::Range(1, 50));
    cmd->add_option("--m-max", *m_max, "Sweep m, p, q = 1..m-max")->check(CLI::Range(1, 20));
    cmd->callback([&ctx, preset, r_max, m_max] {
      ctx.action = [&ctx, preset, r_max, m_max] {
        if (!preset->empty())
          for (const auto& [k, v] : find_preset(*preset, "identities ll").parameters) {
            if (k == "r-max") *r_max = std::stol(v);
            if (k == "m-max") *m_max = std::stol(v);
          }
        std::size_t cases = 0;
        json failures = json::array();
        const GroupMatrix b = elementary(3, 2, 3, 1), c = elementary(3, 1, 3, 1);
        for (long r = 1; r <= *r_max; ++r) {
          const GroupMatrix a = elementary(3, 1, 2, r);
          for (long m = 1; m <= *m_max; ++m)
            for (long p = 1; p <= *m_max; ++p)
              for (long q = 1; q <= *m_max; ++q) {
                ++cases;
                if (!verify_ll_identity(a, b, c, r, p, q, m)) failures.push_back({{"r", r}, {"m", m}, {"p", p}, {"q", q}});
              }
        }
        json params = {{"r_max", *r_max}, {"m_max", *m_max}, {"triple", "a = u1,2^r, b = u2,3, c = u1,3"}};
        if (!preset->empty()) params["preset"] = *preset;
        json report = make_report("identities ll", params);
        const bool pass = failures.empty();
        report["result"] = {{"cases", cases}, {"failures", std::move(failures)}};
        return emit(ctx, std::move(report), pass ? kPass : kFail);
      };
    });
  }

  {
    auto* cmd = ids->add_subcommand("core", "Normal cores of the subgroups of SL_n(Z/m)");
    auto preset = std::make_shared<std::string>();
    auto n = std::make_shared<std::size_t>(2);
    auto mod = std::make_shared<std::uint64_t>(2);
    auto max_order = std::make_shared<std::size_t>(2000);
    cmd->add_option("--preset", *preset, "Named instance (see `presets`)");
    cmd->add_option("-n", *n, "Dimension")->check(CLI::Range(2, 6));
    cmd->add_option("--mod", *mod, "Modulus")->check(CLI::Range(2, 1 << 20));
    cmd->add_option("--max-order", *max_order, "Refuse larger groups")->check(CLI::PositiveNumber);
    cmd->callback([&ctx, preset, n, mod, max_order] {
      ctx.action = [&ctx, preset, n, mod, max_order] {
        if (!preset->empty())
          for (const auto& [k, v] : find_preset(*preset, "identities core").parameters) {
            if (k == "n") *n = std::stoul(v);
            if (k == "mod") *mod = std::stoull(v);
          }
        std::vector<GroupMatrix> gens;
        for (std::size_t i = 1; i <= *n; ++i)
          for (std::size_t j = 1; j <= *n; ++j)
            if (i != j) gens.push_back(elementary(*n, i, j, 1, *mod));
        auto g = enumerate_group(*n, *mod, gens, *max_order);
        std::set<std::vector<Index>> subgroups;
        for (Index x = 0; x < g.order(); ++x)
          for (Index y = x; y < g.order(); ++y) subgroups.insert(closure(g, {x, y}));
        std::vector<std::vector<Index>> normal_subgroups;
        for (const auto& h : subgroups)
          if (is_normal(g, h)) normal_subgroups.push_back(h);
        json rows = json::array();
        bool pass = true;
        for (const auto& h : subgroups) {
          auto core = normal_core(g, h);
          const bool contained = std::includes(h.begin(), h.end(), core.begin(), core.end());
          const bool normal = is_normal(g, core);
          bool largest = true;
          for (const auto& k : normal_subgroups)
            if (std::includes(h.begin(), h.end(), k.begin(), k.end()) && k.size() > core.size()) largest = false;
          const std::size_t index_h = g.order() / h.size();
          const bool divides = factorial(index_h) % Integer(static_cast<unsigned long>(g.order() / core.size())) == 0;
          pass = pass && contained && normal && largest && divides;
          rows.push_back({{"order", h.size()},
                          {"index", index_h},
                          {"core_order", core.size()},
                          {"core_normal", normal},
                          {"core_largest", largest},
                          {"core_index_divides_index_factorial", divides}});
        }
        json params = {{"n", *n}, {"mod", *mod}, {"subgroups", "generated by at most two elements"}};
        if (!preset->empty()) params["preset"] = *preset;
        json report = make_report("identities core", params);
        report["result"] = {{"group_order", g.order()}, {"subgroup_count", subgroups.size()}, {"subgroups", rows}};
        return emit(ctx, std::move(report), pass ? kPass : kFail);
      };
    });
  }

  {
    auto* cmd = ids->add_subcommand("congruence", "Levels k with a == I mod k");
    auto n = std::make_shared<std::size_t>(2);
    auto entries = std::make_shared<std::string>();
    auto max_level = std::make_shared<std::uint64_t>(64);
    cmd->add_option("-n", *n, "Dimension")->check(CLI::Range(1, 12));
    cmd->add_option("--entries", *entries, "Comma-separated row-major integer entries")->required();
    cmd->add_option("--max-level", *max_level, "Largest level tested")->check(CLI::Range(2, 1 << 24));
    cmd->callback([&ctx, n, entries, max_level] {
      ctx.action = [&ctx, n, entries, max_level] {
        std::vector<Integer> values;
        for (const auto& item : split_list(*entries)) {
          try {
            values.emplace_back(item);
          } catch (const std::invalid_argument&) {
            throw Error("not an integer: " + item);
          }
        }
        GroupMatrix a(*n, std::move(values));
        auto levels = congruence_levels(a, *max_level);
        json params = {{"n", *n}, {"entries", split_list(*entries)}, {"max_level", *max_level}};
        json report = make_report("identities congruence", params);
        report["result"] = {{"determinant", io::to_json(a.determinant())}, {"levels", levels}};
        return emit(ctx, std::move(report), kPass);
      };
    });
  }
}

}  // namespace dendra::cli
