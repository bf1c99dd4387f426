#include "dendra/io.hpp"

namespace dendra::io {

json to_json(const FiniteMatrixGroup& g, bool with_elements) {
  json out;
  out["n"] = g.dim();
  out["mod"] = g.modulus();
  out["order"] = g.order();
  json gens = json::array();
  for (const auto& m : g.generators()) gens.push_back(to_json(m));
  out["generators"] = std::move(gens);
  out["generator_indices"] = g.generator_indices();
  if (with_elements) {
    json elements = json::array();
    for (std::size_t i = 0; i < g.order(); ++i) {
      auto e = g.entries(i);
      elements.push_back(std::vector<std::uint32_t>(e.begin(), e.end()));
    }
    out["elements"] = std::move(elements);
  }
  return out;
}

json to_json(const FiniteTreeAction& act) {
  json out;
  out["tree"] = to_json(act.tree);
  json gens = json::array();
  for (std::size_t s = 0; s < act.generators.size(); ++s) {
    json g;
    g["name"] = act.generator_names.at(s);
    if (s < act.generator_matrices.size()) g["matrix"] = to_json(act.generator_matrices[s]);
    g["images"] = act.generators[s].images();
    gens.push_back(std::move(g));
  }
  out["generators"] = std::move(gens);
  return out;
}

FiniteTreeAction action_from_json(const json& j) {
  if (!j.is_object() || !j.contains("tree") || !j.contains("generators"))
    throw Error("action needs \"tree\" and \"generators\"");
  FiniteTreeAction act;
  act.tree = tree_from_json(j.at("tree"));
  for (const auto& g : j.at("generators")) {
    act.generator_names.push_back(g.at("name").get<std::string>());
    auto images = g.at("images").get<std::vector<VertexIndex>>();
    if (images.size() != act.tree.size()) throw Error("generator images must cover every vertex");
    act.generators.emplace_back(std::move(images));
    if (g.contains("matrix")) act.generator_matrices.push_back(matrix_from_json(g.at("matrix")));
  }
  if (!act.generator_matrices.empty() && act.generator_matrices.size() != act.generators.size())
    throw Error("either every generator or none carries a matrix");
  return act;
}

json to_json(const TowerProvenance& p) {
  json out;
  out["n"] = p.n;
  out["p"] = p.p;
  out["depth"] = p.depth;
  out["quotient_modulus"] = p.quotient_modulus;
  out["representative_rule"] = p.representative_rule;
  json reps = json::array();
  for (const auto& level : p.coset_representatives) {
    json row = json::array();
    for (const auto& m : level) row.push_back(to_json(m).at("entries"));
    reps.push_back(std::move(row));
  }
  out["coset_representatives"] = std::move(reps);
  return out;
}

json to_json(const InverseSystem& sys) {
  json out;
  json levels = json::array();
  for (const auto& level : sys.levels) levels.push_back(to_json(level));
  out["levels"] = std::move(levels);
  out["bonds"] = sys.bonds;
  if (sys.provenance) out["provenance"] = to_json(*sys.provenance);
  return out;
}

InverseSystem tower_from_json(const json& j) {
  if (!j.is_object() || !j.contains("levels")) throw Error("tower needs \"levels\"");
  InverseSystem sys;
  for (const auto& level : j.at("levels")) sys.levels.push_back(action_from_json(level));
  if (j.contains("bonds")) sys.bonds = j.at("bonds").get<std::vector<std::vector<VertexIndex>>>();
  if (sys.bonds.size() + 1 != sys.levels.size() && !sys.levels.empty())
    throw Error("a tower with k+1 levels needs k bonds");
  for (std::size_t a = 0; a < sys.bonds.size(); ++a) {
    if (sys.bonds[a].size() != sys.levels[a + 1].tree.size()) throw Error("bond size does not match its level");
    for (VertexIndex v : sys.bonds[a])
      if (v >= sys.levels[a].tree.size()) throw Error("bond image out of range");
  }
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    TowerProvenance prov;
    prov.n = p.at("n").get<std::size_t>();
    prov.p = p.at("p").get<std::uint64_t>();
    prov.depth = p.at("depth").get<std::size_t>();
    prov.quotient_modulus = p.at("quotient_modulus").get<std::uint64_t>();
    prov.representative_rule = p.value("representative_rule", "");
    if (p.contains("coset_representatives"))
      for (const auto& row : p.at("coset_representatives")) {
        std::vector<GroupMatrix> mats;
        for (const auto& e : row) {
          json m;
          m["n"] = prov.n;
          m["mod"] = prov.quotient_modulus;
          m["entries"] = e;
          mats.push_back(matrix_from_json(m));
        }
        prov.coset_representatives.push_back(std::move(mats));
      }
    sys.provenance = std::move(prov);
  }
  return sys;
}

}  // namespace dendra::io
