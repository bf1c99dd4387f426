#pragma once

#include "dendra/error.hpp"
#include "dendra/ordering.hpp"
#include "dendra/pl_homeo.hpp"
#include "dendra/tree.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace dendra {

/// Order-compatible map t from an enumerated finite ball into Q.
struct RealizationMap {
  std::vector<GroupMatrix> enumeration;
  std::vector<std::string> labels;  // parallel to enumeration
  std::vector<Rational> t;          // parallel to enumeration; t[0] = 0

  std::optional<Rational> t_of(const GroupMatrix& g) const;
  std::optional<std::size_t> position(const GroupMatrix& g) const;

 private:
  friend RealizationMap realize(std::span<const std::size_t>, const OrderAssignment&);
  std::unordered_map<GroupMatrix, std::size_t, GroupMatrixHash> index_;
};

/// Builds t along the enumeration (indices into the order's domain): the first
/// element goes to 0, a new maximum to max+1, a new minimum to min-1, anything
/// else to the midpoint of its already-placed neighbours.
/// Throws "order not total on the enumeration" when comparisons are missing or
/// inconsistent.
RealizationMap realize(std::span<const std::size_t> enumeration, const OrderAssignment& order);

struct GeneratorMap {
  LabeledMap map;
  std::vector<GroupMatrix> realizable;  // g' with g' and g g' both realized
};

/// Breakpoints (t(g'), t(g g')) over the realizable part of `closure`.
/// Throws "empty realizable sub-ball" when nothing qualifies.
GeneratorMap generator_pl_map(const RealizationMap& rm, const GroupMatrix& g, const std::string& label,
                              const Ball& closure);

struct RealizationReport {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<std::string> violations;
};

/// Monotonicity of each map, g.t(g') = t(g g') on the sample, and
/// map(g) o map(h) = map(gh) on common breakpoints.
RealizationReport verify_realization(const RealizationMap& rm, std::span<const LabeledMap> maps, const Ball& sample);

struct FixedInterval {
  std::string label;
  Rational lo;
  Rational hi;
};

struct AlmostFreeReport {
  bool almost_free = true;
  std::vector<FixedInterval> witnesses;
};

/// Nondegenerate interior fixed intervals of the non-identity maps.
AlmostFreeReport almost_free_report(std::span<const LabeledMap> maps);

/// The arc -inf, t-values in increasing order, +inf, as a path tree whose
/// vertex identifiers are the "p/q" forms of the t-values.
Tree subdivided_arc(const RealizationMap& rm);

/// Realized maps for every element of b whose realizable sub-ball is nonempty.
ArcAction realized_arc_action(const RealizationMap& rm, const Ball& b);

std::string to_csv(const RealizationMap& rm);  // "word,t" rows with a header
std::string to_svg(const PLHomeo& m, const std::string& title, double size_px = 320.0);

}  // namespace dendra
