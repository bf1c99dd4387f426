#include "presets.hpp"
#include "report.hpp"

#include "dendra/error.hpp"
#include "dendra/tower.hpp"
#include "dendra/tree.hpp"

#include <cstdio>

namespace dendra::cli {

namespace {

std::string shortest(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::map<VertexId, VertexId> load_mapping(const std::string& path) {
  json j = io::read_json_file(path);
  if (!j.is_object()) throw Error("map file must be a JSON object of vertex -> image");
  std::map<VertexId, VertexId> mapping;
  for (const auto& [k, v] : j.items()) mapping.emplace(k, v.get<VertexId>());
  return mapping;
}

}  // namespace

void add_tree_commands(CLI::App& app, Context& ctx) {
  auto* tree = app.add_subcommand("tree", "Finite trees");
  tree->require_subcommand(1);

  {
    auto* cmd = tree->add_subcommand("info", "Validate a tree and summarize its vertices");
    struct Opts {
      std::string file, preset, dot, svg, vertex;
      int arms = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* file = cmd->add_option("--tree", o->file, "Tree JSON")->check(CLI::ExistingFile);
    file->excludes(cmd->add_option("--preset", o->preset, "Named instance (see `presets`)"));
    file->excludes(cmd->add_option("--arms", o->arms, "Star dendrite with 2*arms arms")->check(CLI::Range(1, 10000)));
    cmd->add_option("--vertex", o->vertex, "Also report the order (degree) of this vertex");
    cmd->add_option("--dot", o->dot, "Write a DOT rendering here");
    cmd->add_option("--svg", o->svg, "Write an SVG drawing here (star dendrites)");
    cmd->callback([&ctx, o] {
      ctx.action = [&ctx, o] {
        json params = json::object();
        std::optional<StarDendrite> star;
        Tree t;
        if (!o->preset.empty()) {
          for (const auto& [k, v] : find_preset(o->preset, "tree info").parameters)
            if (k == "arms") o->arms = std::stoi(v);
          params["preset"] = o->preset;
        }
        if (o->arms > 0) {
          star = star_dendrite(o->arms);
          t = star->tree;
          params["arms"] = o->arms;
        } else if (!o->file.empty()) {
          t = io::tree_from_json(io::read_json_file(o->file));
          params["tree"] = o->file;
        } else {
          throw CLI::RequiredError("--tree, --preset or --arms");
        }
        auto valid = validate_tree(t);
        std::size_t leaves = 0, branch_points = 0, max_degree = 0;
        for (VertexIndex v = 0; v < t.size(); ++v) {
          leaves += t.degree(v) == 1;
          branch_points += t.degree(v) >= 3;
          max_degree = std::max(max_degree, t.degree(v));
        }
        json result = {{"valid", valid.ok},
                       {"diagnostic", valid.diagnostic},
                       {"vertices", t.size()},
                       {"edges", t.edge_count()},
                       {"end_points", leaves},
                       {"branch_points", branch_points},
                       {"max_degree", max_degree},
                       {"embedded", t.has_embedding()}};
        if (!o->vertex.empty()) {
          params["vertex"] = o->vertex;
          result["vertex_order"] = point_order(t, o->vertex);
        }
        if (star) {
          json arms = json::array();
          for (const auto& arm : star->arms) {
            const auto& c = *t.embedding()[t.index(arm.vertex)];
            arms.push_back({{"index", arm.index},
                            {"vertex", arm.vertex},
                            {"angle_over_pi", to_fraction_string(arm.angle_over_pi)},
                            {"length", to_fraction_string(arm.length)},
                            {"angle", arm.angle},
                            {"length_value", arm.length_value},
                            {"angle_text", shortest(arm.angle)},
                            {"coordinates_exact", arm.coordinates_exact},
                            {"endpoint", {to_fraction_string(c[0]), to_fraction_string(c[1])}}});
          }
          result["arms"] = std::move(arms);
        }
        if (!o->dot.empty()) io::write_text_file(o->dot, to_dot(t));
        if (!o->svg.empty()) {
          if (!star) throw Error("--svg draws star dendrites only");
          io::write_text_file(o->svg, star_to_svg(*star));
        }
        json report = make_report("tree info", params);
        report["result"] = std::move(result);
        return emit(ctx, std::move(report), valid.ok ? kPass : kFail);
      };
    });
  }

  {
    auto* cmd = tree->add_subcommand("hull", "Smallest subtree containing the given vertices");
    auto file = std::make_shared<std::string>();
    auto vertices = std::make_shared<std::string>();
    cmd->add_option("--tree", *file, "Tree JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("--vertices", *vertices, "Comma-separated vertex ids")->required();
    cmd->callback([&ctx, file, vertices] {
      ctx.action = [&ctx, file, vertices] {
        Tree t = io::tree_from_json(io::read_json_file(*file));
        auto valid = validate_tree(t);
        if (!valid.ok) throw Error("not a tree: " + valid.diagnostic);
        const auto ids = split_list(*vertices);
        auto hull = convex_hull(t, ids);
        json report = make_report("tree hull", {{"tree", *file}, {"vertices", ids}});
        report["result"] = {{"hull", hull}, {"size", hull.size()}};
        return emit(ctx, std::move(report), kPass);
      };
    });
  }

  {
    auto* cmd = tree->add_subcommand("fix", "A second fixed vertex for automorphisms fixing an end point");
    auto file = std::make_shared<std::string>();
    auto maps = std::make_shared<std::vector<std::string>>();
    auto end = std::make_shared<std::string>();
    cmd->add_option("--tree", *file, "Tree JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("--map", *maps, "Automorphism as a JSON object vertex -> image; repeat for several")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--end", *end, "Fixed end point")->required();
    cmd->callback([&ctx, file, maps, end] {
      ctx.action = [&ctx, file, maps, end] {
        Tree t = io::tree_from_json(io::read_json_file(*file));
        auto valid = validate_tree(t);
        if (!valid.ok) throw Error("not a tree: " + valid.diagnostic);
        std::vector<TreeAutomorphism> autos;
        for (const auto& m : *maps) autos.push_back(TreeAutomorphism::from_ids(t, load_mapping(m)));
        const VertexId found = autos.size() == 1 ? second_fixed_point(t, autos[0], *end)
                                                 : common_fixed_point(t, autos, *end);
        const VertexIndex fi = t.index(found);
        bool fixed = found != *end;
        for (const auto& a : autos) fixed = fixed && a(fi) == fi;
        json report = make_report("tree fix", {{"tree", *file}, {"maps", *maps}, {"end", *end}});
        report["result"] = {{"fixed_vertex", found}, {"verified", fixed}};
        return emit(ctx, std::move(report), fixed ? kPass : kFail);
      };
    });
  }
}

}  // namespace dendra::cli
