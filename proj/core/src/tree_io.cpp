#include "dendra/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace dendra::io {

json to_json(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw Error("expected an integer, got " + j.dump());
}

json to_json(const GroupMatrix& m) {
  json entries = json::array();
  for (const auto& e : m.entries()) entries.push_back(to_json(e));
  json out;
  out["n"] = m.dim();
  out["mod"] = m.modulus() ? json(*m.modulus()) : json(nullptr);
  out["entries"] = std::move(entries);
  return out;
}

GroupMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries")) throw Error("matrix needs \"n\" and \"entries\"");
  const auto n = j.at("n").get<std::size_t>();
  std::vector<Integer> entries;
  for (const auto& e : j.at("entries")) entries.push_back(integer_from_json(e));
  std::optional<std::uint64_t> modulus;
  if (j.contains("mod") && !j.at("mod").is_null()) modulus = j.at("mod").get<std::uint64_t>();
  return GroupMatrix(n, std::move(entries), modulus);
}

json to_json(const Tree& t) {
  json out;
  out["vertices"] = t.ids();
  json edges = json::array();
  for (const auto& [a, b] : t.edges()) edges.push_back({t.id(a), t.id(b)});
  out["edges"] = std::move(edges);
  if (t.has_embedding()) {
    json emb = json::object();
    for (VertexIndex v = 0; v < t.size(); ++v) {
      const auto& c = t.embedding()[v];
      if (!c) continue;
      json coords = json::array();
      for (const auto& q : *c) coords.push_back(to_fraction_string(q));
      emb[t.id(v)] = std::move(coords);
    }
    out["embedding"] = std::move(emb);
  }
  return out;
}

Tree tree_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw Error("tree needs \"vertices\" and \"edges\"");
  std::vector<VertexId> vertices = j.at("vertices").get<std::vector<VertexId>>();
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw Error("edge must be a pair of vertex ids");
    edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
  }
  std::map<VertexId, Coordinates> embedding;
  if (j.contains("embedding"))
    for (const auto& [id, coords] : j.at("embedding").items()) {
      Coordinates c;
      for (const auto& q : coords) c.push_back(q.is_string() ? parse_rational(q.get<std::string>())
                                                             : Rational(integer_from_json(q)));
      embedding.emplace(id, std::move(c));
    }
  return Tree(std::move(vertices), std::move(edges), std::move(embedding));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

}  // namespace dendra::io
