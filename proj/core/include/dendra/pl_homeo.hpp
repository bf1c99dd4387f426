#pragma once

#include "dendra/error.hpp"
#include "dendra/matrix.hpp"
#include "dendra/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dendra {

/// A point of the two-point compactification {-inf} u R u {+inf}.
struct ArcPoint {
  enum class Kind { minus_infinity, finite, plus_infinity };
  Kind kind = Kind::finite;
  Rational value;  // meaningful only when finite

  static ArcPoint minus_infinity() { return {Kind::minus_infinity, Rational(0)}; }
  static ArcPoint plus_infinity() { return {Kind::plus_infinity, Rational(0)}; }
  static ArcPoint at(Rational v) { return {Kind::finite, std::move(v)}; }

  bool is_finite() const noexcept { return kind == Kind::finite; }
  std::string to_string() const;  // "-inf", "+inf" or "p/q"

  friend bool operator==(const ArcPoint& a, const ArcPoint& b);
  friend bool operator<(const ArcPoint& a, const ArcPoint& b);
};

/// Orientation-preserving piecewise-linear map, affine between breakpoints
/// and undefined outside their input hull. The formal endpoints are fixed.
class PLHomeo {
 public:
  using Breakpoint = std::pair<Rational, Rational>;

  PLHomeo() = default;
  /// Sorts by input; throws unless both coordinates strictly increase.
  explicit PLHomeo(std::vector<Breakpoint> breakpoints);
  /// Keeps the breakpoints as given (sorted by input); used to inspect broken maps.
  static PLHomeo unchecked(std::vector<Breakpoint> breakpoints);
  static PLHomeo identity(std::span<const Rational> points);

  const std::vector<Breakpoint>& breakpoints() const noexcept { return breakpoints_; }
  bool empty() const noexcept { return breakpoints_.empty(); }
  const Rational& lo() const { return breakpoints_.front().first; }
  const Rational& hi() const { return breakpoints_.back().first; }
  bool in_domain(const Rational& x) const;

  std::optional<Rational> evaluate(const Rational& x) const;
  std::optional<ArcPoint> evaluate(const ArcPoint& x) const;
  PLHomeo inverse() const;

  bool is_strictly_increasing() const;

  friend bool operator==(const PLHomeo&, const PLHomeo&) = default;

 private:
  std::vector<Breakpoint> breakpoints_;
};

struct FixedSet {
  std::vector<Rational> points;  // isolated fixed points, ascending
  std::vector<std::pair<Rational, Rational>> intervals;  // maximal closed fixed intervals
  bool ends_fixed = true;  // -inf and +inf, by construction

  bool empty_interior() const noexcept { return points.empty() && intervals.empty(); }
};

/// {x : m(x) = x} inside the input hull of m.
FixedSet fixed_set(const PLHomeo& m);

/// A map tagged with the group element it realizes.
struct LabeledMap {
  GroupMatrix element;
  std::string label;
  PLHomeo map;
};

/// Realized maps of ball elements on the arc with end point -inf.
struct ArcAction {
  std::vector<LabeledMap> maps;
};

std::string to_csv(const PLHomeo& m);  // "input,output" rows with a header
PLHomeo pl_from_csv(const std::string& text);

}  // namespace dendra
