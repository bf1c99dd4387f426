#include "presets.hpp"
#include "report.hpp"

#include "dendra/error.hpp"
#include "dendra/tower.hpp"

#include <filesystem>
#include <map>
#include <set>

namespace dendra::cli {

namespace {

struct TowerSource {
  std::string preset;
  std::string file;
  std::size_t n = 3;
  std::uint64_t p = 2;
  std::size_t depth = 1;
  std::size_t cap = kDefaultElementCap;
};

void add_source_options(CLI::App* cmd, TowerSource& s, bool allow_file) {
  auto* preset = cmd->add_option("--preset", s.preset, "Named tower instance (see `presets`)");
  auto* n = cmd->add_option("-n", s.n, "Matrix dimension")->check(CLI::Range(2, 8));
  auto* p = cmd->add_option("-p", s.p, "Prime")->check(CLI::PositiveNumber);
  auto* depth = cmd->add_option("--depth", s.depth, "Deepest level");
  cmd->add_option("--cap", s.cap, "Maximum group order to enumerate")->check(CLI::PositiveNumber);
  for (auto* o : {n, p, depth}) preset->excludes(o);
  if (allow_file) {
    auto* file = cmd->add_option("--tower", s.file, "Tower JSON written by `tower build --out`")
                     ->check(CLI::ExistingFile);
    for (auto* o : {n, p, depth, preset}) file->excludes(o);
  }
}

InverseSystem load_tower(TowerSource& s, const std::string& command, json& params) {
  if (!s.file.empty()) {
    params["tower"] = s.file;
    return io::tower_from_json(io::read_json_file(s.file));
  }
  if (!s.preset.empty()) {
    const Preset* preset = nullptr;
    for (const auto& candidate : presets())
      if (candidate.name == s.preset && candidate.command.rfind("tower ", 0) == 0) preset = &candidate;
    if (!preset) find_preset(s.preset, command);
    for (const auto& [k, v] : preset->parameters) {
      if (k == "n") s.n = std::stoul(v);
      if (k == "p") s.p = std::stoull(v);
      if (k == "depth") s.depth = std::stoul(v);
    }
    params["preset"] = s.preset;
  }
  params["n"] = s.n;
  params["p"] = s.p;
  params["depth"] = s.depth;
  params["cap"] = s.cap;
  return build_congruence_tower(s.n, s.p, s.depth, s.cap);
}

std::size_t leaf_count(const Tree& t) {
  std::size_t leaves = 0;
  for (VertexIndex v = 0; v < t.size(); ++v)
    if (t.degree(v) <= 1) ++leaves;
  return leaves;
}

json level_summary(const InverseSystem& sys, std::size_t a) {
  const Tree& t = sys.levels[a].tree;
  json level;
  level["level"] = a;
  level["vertices"] = t.size();
  level["edges"] = t.edge_count();
  level["leaves"] = leaf_count(t);
  std::size_t max_degree = 0;
  for (VertexIndex v = 0; v < t.size(); ++v) max_degree = std::max(max_degree, t.degree(v));
  level["max_degree"] = max_degree;
  if (a > 0) {
    // Children per vertex of the previous level that gained any.
    std::map<VertexIndex, std::size_t> children;
    const auto& bond = sys.bonds[a - 1];
    for (VertexIndex v = static_cast<VertexIndex>(sys.levels[a - 1].tree.size()); v < t.size(); ++v)
      ++children[bond[v]];
    std::set<std::size_t> counts;
    for (const auto& [parent, count] : children) counts.insert(count);
    level["children_per_parent"] = std::vector<std::size_t>(counts.begin(), counts.end());
  }
  return level;
}

json provenance_json(const InverseSystem& sys) {
  if (!sys.provenance) return nullptr;
  const auto& p = *sys.provenance;
  json out;
  out["n"] = p.n;
  out["p"] = p.p;
  out["depth"] = p.depth;
  out["quotient_modulus"] = p.quotient_modulus;
  out["representative_rule"] = p.representative_rule;
  std::vector<std::size_t> counts;
  for (const auto& level : p.coset_representatives) counts.push_back(level.size());
  out["coset_representative_counts"] = counts;
  return out;
}

std::string dot_name(std::size_t a) { return "level-" + std::to_string(a) + ".dot"; }

}  // namespace

void add_tower_commands(CLI::App& app, Context& ctx) {
  auto* tower = app.add_subcommand("tower", "Congruence towers of coset trees");
  tower->require_subcommand(1);

  {
    auto* cmd = tower->add_subcommand("build", "Build the coset trees of SL_n(Z) modulo p^a");
    auto src = std::make_shared<TowerSource>();
    auto out = std::make_shared<std::string>();
    auto dot_dir = std::make_shared<std::string>();
    add_source_options(cmd, *src, false);
    cmd->add_option("--out", *out, "Write the tower JSON here");
    cmd->add_option("--dot-dir", *dot_dir, "Write one DOT file per level into this directory");
    cmd->callback([&ctx, src, out, dot_dir] {
      ctx.action = [&ctx, src, out, dot_dir] {
        json params = json::object();
        auto sys = load_tower(*src, "tower build", params);
        json report = make_report("tower build", params);
        json levels = json::array();
        std::vector<std::size_t> leaves;
        for (std::size_t a = 0; a < sys.levels.size(); ++a) {
          levels.push_back(level_summary(sys, a));
          leaves.push_back(levels.back()["leaves"].get<std::size_t>());
        }
        std::size_t index = 1;
        for (std::size_t k = 0; k < src->n * src->n - 1; ++k) index *= src->p;
        report["provenance"] = provenance_json(sys);
        report["result"] = {{"levels", levels},
                            {"leaf_counts", leaves},
                            {"subgroup_index_formula", index},
                            {"generators", sys.levels.front().generator_names}};
        if (!out->empty()) io::write_text_file(*out, io::to_json(sys).dump() + "\n");
        if (!dot_dir->empty()) {
          std::filesystem::create_directories(*dot_dir);
          for (std::size_t a = 0; a < sys.levels.size(); ++a)
            io::write_text_file((std::filesystem::path(*dot_dir) / dot_name(a)).string(),
                                to_dot(sys.levels[a].tree, "level" + std::to_string(a)));
        }
        return emit(ctx, std::move(report), kPass);
      };
    });
  }

  {
    auto* cmd = tower->add_subcommand("verify", "Check bonds, trees and the degree profile");
    auto src = std::make_shared<TowerSource>();
    add_source_options(cmd, *src, true);
    cmd->callback([&ctx, src] {
      ctx.action = [&ctx, src] {
        json params = json::object();
        auto sys = load_tower(*src, "tower verify", params);
        json report = make_report("tower verify", params);
        bool pass = true;
        json levels = json::array();
        for (std::size_t a = 0; a < sys.levels.size(); ++a) {
          const auto& level = sys.levels[a];
          auto valid = validate_tree(level.tree);
          bool automorphisms = true;
          for (const auto& g : level.generators) automorphisms = automorphisms && g.preserves(level.tree);
          json entry = level_summary(sys, a);
          entry["valid_tree"] = valid.ok;
          if (!valid.ok) entry["diagnostic"] = valid.diagnostic;
          entry["generators_are_automorphisms"] = automorphisms;
          pass = pass && valid.ok && automorphisms;
          if (a + 1 < sys.levels.size()) {
            auto eq = verify_equivariant_bond(sys, a);
            auto shape = verify_bond_shape(sys, a);
            json violations = json::array();
            for (std::size_t k = 0; k < eq.violations.size() && k < 20; ++k)
              violations.push_back({{"generator", eq.violations[k].generator}, {"vertex", eq.violations[k].vertex}});
            entry["bond"] = {{"equivariant", eq.pass},
                             {"checked", eq.checked},
                             {"violation_count", eq.violations.size()},
                             {"violations", violations},
                             {"surjective", shape.surjective},
                             {"monotone", shape.monotone},
                             {"identity_on_copy", shape.identity_on_copy}};
            pass = pass && eq.pass && shape.pass();
          }
          levels.push_back(std::move(entry));
        }
        auto profile = degree_profile(sys);
        json deg;
        deg["max_degree"] = profile.max_degree;
        deg["stable_degree"] = profile.stable_degree ? json(*profile.stable_degree) : json(nullptr);
        deg["stabilized"] = profile.stabilized;
        pass = pass && profile.stabilized;
        report["provenance"] = provenance_json(sys);
        report["result"] = {{"levels", levels}, {"degree_profile", deg}};
        return emit(ctx, std::move(report), pass ? kPass : kFail);
      };
    });
  }

  {
    auto* cmd = tower->add_subcommand("orbits", "Orbits of the generators on one level");
    auto src = std::make_shared<TowerSource>();
    auto level = std::make_shared<std::optional<std::size_t>>();
    auto vertex = std::make_shared<std::string>();
    auto word_cap = std::make_shared<std::size_t>(static_cast<std::size_t>(-1));
    add_source_options(cmd, *src, true);
    cmd->add_option("--level", *level, "Level (default: deepest)");
    cmd->add_option("--vertex", *vertex, "Report the orbit of this vertex only");
    cmd->add_option("--word-cap", *word_cap, "Maximum word length");
    cmd->callback([&ctx, src, level, vertex, word_cap] {
      ctx.action = [&ctx, src, level, vertex, word_cap] {
        json params = json::object();
        auto sys = load_tower(*src, "tower orbits", params);
        const std::size_t a = level->value_or(sys.depth());
        if (a >= sys.levels.size()) throw Error("level beyond the tower depth");
        params["level"] = a;
        if (*word_cap != static_cast<std::size_t>(-1)) params["word_cap"] = *word_cap;
        const auto& act = sys.levels[a];
        json result;
        if (!vertex->empty()) {
          params["vertex"] = *vertex;
          auto orb = orbit(act, *vertex, *word_cap);
          std::vector<VertexId> sample;
          for (std::size_t k = 0; k < orb.vertices.size() && k < 32; ++k) sample.push_back(act.tree.id(orb.vertices[k]));
          result = {{"size", orb.vertices.size()}, {"closed", orb.closed}, {"first_vertices", sample}};
        } else {
          std::vector<char> seen(act.tree.size(), 0);
          std::map<std::size_t, std::size_t> sizes;
          std::size_t count = 0;
          for (VertexIndex v = 0; v < act.tree.size(); ++v) {
            if (seen[v]) continue;
            auto orb = orbit(act, v, *word_cap);
            for (VertexIndex u : orb.vertices) seen[u] = 1;
            ++sizes[orb.vertices.size()];
            ++count;
          }
          json histogram = json::array();
          for (const auto& [size, times] : sizes) histogram.push_back({{"size", size}, {"orbits", times}});
          result = {{"orbit_count", count}, {"sizes", histogram}};
        }
        json report = make_report("tower orbits", params);
        report["result"] = std::move(result);
        return emit(ctx, std::move(report), kPass);
      };
    });
  }

  {
    auto* cmd = tower->add_subcommand("decorate", "Pendant arcs over a deep orbit and projection orbit growth");
    auto src = std::make_shared<TowerSource>();
    auto seed = std::make_shared<std::string>();
    auto x = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    add_source_options(cmd, *src, true);
    cmd->add_option("--seed", *seed, "Deepest-level leaf carrying the first pendant");
    cmd->add_option("--x", *x, "Pendant vertex to project (default: tip of the first pendant)");
    cmd->add_option("--out", *out, "Write the decorated action JSON here");
    cmd->callback([&ctx, src, seed, x, out] {
      ctx.action = [&ctx, src, seed, x, out] {
        json params = json::object();
        auto sys = load_tower(*src, "tower decorate", params);
        const Tree& deepest = sys.levels.back().tree;
        std::string seed_id = *seed;
        for (VertexIndex v = 0; seed_id.empty() && v < deepest.size(); ++v)
          if (deepest.degree(v) <= 1) seed_id = deepest.id(v);
        auto decorated = attach_decorations(sys, seed_id);
        const std::string x_id = x->empty() ? decorated.pendants.front().tip : *x;
        params["seed"] = seed_id;
        params["x"] = x_id;
        params["length_rule"] = "1/i";
        auto growth = projection_orbit_growth(sys, decorated, x_id);
        bool increasing = true;
        for (std::size_t k = 1; k < growth.size(); ++k) increasing = increasing && growth[k - 1] < growth[k];
        json report = make_report("tower decorate", params);
        report["provenance"] = provenance_json(sys);
        report["result"] = {{"pendants", decorated.pendants.size()},
                            {"decorated_vertices", decorated.action.tree.size()},
                            {"orbit_growth", growth},
                            {"strictly_increasing", increasing}};
        if (!out->empty()) io::write_text_file(*out, io::to_json(decorated.action).dump() + "\n");
        return emit(ctx, std::move(report), increasing ? kPass : kFail);
      };
    });
  }
}

}  // namespace dendra::cli
