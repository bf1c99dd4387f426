#pragma once

#include "dendra/matgrp.hpp"
#include "dendra/matrix.hpp"
#include "dendra/ordering.hpp"
#include "dendra/tower.hpp"
#include "dendra/tree.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <string>

namespace dendra::io {

using json = nlohmann::ordered_json;

/// Integers that fit in 64 bits are written as numbers, others as decimal strings.
json to_json(const Integer& z);
Integer integer_from_json(const json& j);

/// {"n", "mod" (null when integral), "entries" row-major}.
json to_json(const GroupMatrix& m);
GroupMatrix matrix_from_json(const json& j);

/// {"vertices", "edges" as id pairs, optional "embedding" of "p/q" strings}.
json to_json(const Tree& t);
Tree tree_from_json(const json& j);

/// {"n", "mod", "order", "generators", "generator_indices"}, plus canonical
/// "elements" when requested.
json to_json(const FiniteMatrixGroup& g, bool with_elements = false);

/// {"tree", "generators": [{"name", "matrix"?, "images"}]} with images as vertex indices.
json to_json(const FiniteTreeAction& act);
FiniteTreeAction action_from_json(const json& j);

json to_json(const TowerProvenance& p);
/// {"levels", "bonds", "provenance"?}.
json to_json(const InverseSystem& sys);
InverseSystem tower_from_json(const json& j);

/// Canonical elements with words, generators, radius and discovery order.
json to_json(const Ball& b);
std::shared_ptr<const Ball> ball_from_json(const json& j);

/// {"ball", "pairs": [[g, h, sign], ...]} over every assigned ordered pair.
json to_json(const OrderAssignment& phi);
OrderAssignment order_from_json(const json& j);

json to_json(const SearchResult& r, const Ball& b2);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace dendra::io
