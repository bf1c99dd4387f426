#include "dendra/io.hpp"

namespace dendra::io {

json to_json(const Ball& b) {
  json out;
  json gens = json::array();
  for (const auto& g : b.generators()) gens.push_back(to_json(g));
  out["generators"] = std::move(gens);
  out["generator_names"] = b.generator_names();
  out["radius"] = b.radius();
  json elements = json::array();
  for (std::size_t i = 0; i < b.size(); ++i) {
    json e;
    e["label"] = b.label(i);
    if (b.has_words()) e["word"] = b.word(i);
    e["matrix"] = to_json(b.element(i));
    elements.push_back(std::move(e));
  }
  out["elements"] = std::move(elements);
  out["discovery_order"] = b.discovery_order();
  return out;
}

std::shared_ptr<const Ball> ball_from_json(const json& j) {
  if (!j.is_object() || !j.contains("elements")) throw Error("ball needs \"elements\"");
  std::vector<GroupMatrix> gens;
  if (j.contains("generators"))
    for (const auto& g : j.at("generators")) gens.push_back(matrix_from_json(g));
  auto names = j.value("generator_names", std::vector<std::string>{});
  const auto& raw = j.at("elements");
  std::vector<std::size_t> order;
  if (j.contains("discovery_order")) order = j.at("discovery_order").get<std::vector<std::size_t>>();
  else
    for (std::size_t i = 0; i < raw.size(); ++i) order.push_back(i);
  if (order.size() != raw.size()) throw Error("discovery order must list every element");
  std::vector<GroupMatrix> elements;
  std::vector<std::vector<int>> words;
  const bool with_words = !raw.empty() && raw[0].contains("word");
  for (std::size_t i : order) {
    const auto& e = raw.at(i);
    elements.push_back(matrix_from_json(e.at("matrix")));
    if (with_words) words.push_back(e.at("word").get<std::vector<int>>());
  }
  return std::make_shared<const Ball>(std::move(elements), std::move(gens), std::move(names),
                                      j.value("radius", std::size_t{0}), std::move(words));
}

json to_json(const OrderAssignment& phi) {
  json out;
  out["ball"] = to_json(phi.domain());
  json pairs = json::array();
  for (std::size_t g = 0; g < phi.size(); ++g)
    for (std::size_t h = 0; h < phi.size(); ++h)
      if (g != h && phi.sign(g, h) != 0) pairs.push_back({g, h, phi.sign(g, h)});
  out["pairs"] = std::move(pairs);
  return out;
}

OrderAssignment order_from_json(const json& j) {
  if (!j.is_object() || !j.contains("ball") || !j.contains("pairs")) throw Error("order needs \"ball\" and \"pairs\"");
  OrderAssignment phi(ball_from_json(j.at("ball")));
  for (const auto& t : j.at("pairs")) {
    if (!t.is_array() || t.size() != 3) throw Error("pair entries are [g, h, sign] triples");
    phi.set(t[0].get<std::size_t>(), t[1].get<std::size_t>(), t[2].get<int>());
  }
  return phi;
}

json to_json(const SearchResult& r, const Ball& b2) {
  json out;
  out["outcome"] = to_string(r.outcome);
  out["branches"] = r.branches;
  out["conflicts"] = r.conflicts;
  if (r.witness) {
    out["witness"] = to_json(*r.witness);
    json ascending = json::array();
    for (std::size_t i : r.witness->sorted()) ascending.push_back(b2.label(i));
    out["ascending"] = std::move(ascending);
  }
  json chain = json::array();
  for (const auto& s : r.first_conflict) {
    json step;
    step["g"] = s.g;
    step["h"] = s.h;
    step["g_label"] = b2.label(s.g);
    step["h_label"] = b2.label(s.h);
    step["sign"] = s.sign;
    step["reason"] = s.reason;
    chain.push_back(std::move(step));
  }
  out["forcing_chain"] = std::move(chain);
  return out;
}

}  // namespace dendra::io
