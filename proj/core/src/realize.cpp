#include "dendra/realize.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dendra {

std::optional<std::size_t> RealizationMap::position(const GroupMatrix& g) const {
  if (index_.empty())
    for (std::size_t i = 0; i < enumeration.size(); ++i)
      if (enumeration[i] == g) return i;
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Rational> RealizationMap::t_of(const GroupMatrix& g) const {
  auto i = position(g);
  if (!i) return std::nullopt;
  return t.at(*i);
}

RealizationMap realize(std::span<const std::size_t> enumeration, const OrderAssignment& order) {
  const Ball& ball = order.domain();
  RealizationMap rm;
  if (enumeration.empty()) throw Error("empty enumeration");
  for (std::size_t i : enumeration) {
    if (i >= ball.size()) throw Error("enumeration index outside the ordered ball");
    if (!rm.index_.emplace(ball.element(i), rm.enumeration.size()).second)
      throw Error("enumeration repeats an element");
    rm.enumeration.push_back(ball.element(i));
    rm.labels.push_back(ball.label(i));
  }
  for (std::size_t a : enumeration)
    for (std::size_t b : enumeration)
      if (a != b && (order.sign(a, b) == 0 || order.sign(a, b) != -order.sign(b, a)))
        throw Error("order not total on the enumeration");

  // placed: enumeration positions sorted by t, hence by the order.
  std::vector<std::size_t> placed;
  rm.t.resize(enumeration.size());
  for (std::size_t k = 0; k < enumeration.size(); ++k) {
    auto it = std::partition_point(placed.begin(), placed.end(),
                                   [&](std::size_t p) { return order.less(enumeration[p], enumeration[k]); });
    if (placed.empty())
      rm.t[k] = 0;
    else if (it == placed.end())
      rm.t[k] = rm.t[placed.back()] + 1;
    else if (it == placed.begin())
      rm.t[k] = rm.t[placed.front()] - 1;
    else
      rm.t[k] = (rm.t[*(it - 1)] + rm.t[*it]) / 2;
    placed.insert(it, k);
  }

  for (std::size_t a = 0; a < enumeration.size(); ++a) {
    if (!has_dyadic_denominator(rm.t[a])) throw Error("t-value with non-dyadic denominator");
    for (std::size_t b = 0; b < enumeration.size(); ++b)
      if (a != b && order.less(enumeration[a], enumeration[b]) != (rm.t[a] < rm.t[b]))
        throw Error("order not total on the enumeration");
  }
  return rm;
}

GeneratorMap generator_pl_map(const RealizationMap& rm, const GroupMatrix& g, const std::string& label,
                              const Ball& closure) {
  GeneratorMap out;
  std::vector<PLHomeo::Breakpoint> bps;
  for (const auto& x : closure.elements()) {
    auto tx = rm.t_of(x);
    if (!tx) continue;
    auto tgx = rm.t_of(g * x);
    if (!tgx) continue;
    bps.emplace_back(*tx, *tgx);
    out.realizable.push_back(x);
  }
  if (bps.empty()) throw Error("empty realizable sub-ball");
  auto map = PLHomeo::unchecked(std::move(bps));
  if (!map.is_strictly_increasing())
    throw Error("realized map of " + label + " is not increasing (order not left-invariant on the sub-ball)");
  out.map = {g, label, std::move(map)};
  return out;
}

RealizationReport verify_realization(const RealizationMap& rm, std::span<const LabeledMap> maps, const Ball& sample) {
  RealizationReport report;
  auto fail = [&](std::string what) {
    report.pass = false;
    report.violations.push_back(std::move(what));
  };
  std::unordered_map<GroupMatrix, const LabeledMap*, GroupMatrixHash> by_element;
  for (const auto& m : maps) by_element.emplace(m.element, &m);

  for (const auto& m : maps) {
    ++report.checked;
    if (!m.map.is_strictly_increasing()) fail(m.label + ": not strictly increasing");
    for (const auto& x : sample.elements()) {
      auto tx = rm.t_of(x);
      auto tgx = rm.t_of(m.element * x);
      if (!tx || !tgx || !m.map.in_domain(*tx)) continue;
      ++report.checked;
      auto y = m.map.evaluate(*tx);
      if (*y != *tgx)
        fail(m.label + ": sends " + to_fraction_string(*tx) + " to " + to_fraction_string(*y) + ", expected " +
             to_fraction_string(*tgx));
    }
  }
  for (const auto& g : maps)
    for (const auto& h : maps) {
      auto it = by_element.find(g.element * h.element);
      if (it == by_element.end()) continue;
      const PLHomeo& gh = it->second->map;
      for (const auto& [x, hx] : h.map.breakpoints()) {
        if (!gh.in_domain(x) || !g.map.in_domain(hx)) continue;
        bool common = std::any_of(gh.breakpoints().begin(), gh.breakpoints().end(),
                                  [&](const auto& bp) { return bp.first == x; });
        if (!common) continue;
        ++report.checked;
        if (*g.map.evaluate(hx) != *gh.evaluate(x))
          fail(g.label + " o " + h.label + " differs from " + it->second->label + " at " + to_fraction_string(x));
      }
    }
  return report;
}

AlmostFreeReport almost_free_report(std::span<const LabeledMap> maps) {
  AlmostFreeReport report;
  for (const auto& m : maps) {
    if (m.element.is_identity()) continue;
    for (const auto& [lo, hi] : fixed_set(m.map).intervals)
      if (lo < hi) {
        report.almost_free = false;
        report.witnesses.push_back({m.label, lo, hi});
      }
  }
  return report;
}

Tree subdivided_arc(const RealizationMap& rm) {
  std::vector<Rational> values = rm.t;
  std::sort(values.begin(), values.end());
  std::vector<VertexId> ids{"-inf"};
  for (const auto& v : values) ids.push_back(to_fraction_string(v));
  ids.push_back("+inf");
  std::vector<Tree::Edge> edges;
  for (VertexIndex i = 0; i + 1 < ids.size(); ++i) edges.emplace_back(i, i + 1);
  return Tree(std::move(ids), std::move(edges));
}

ArcAction realized_arc_action(const RealizationMap& rm, const Ball& b) {
  ArcAction act;
  for (std::size_t i = 0; i < b.size(); ++i) {
    try {
      act.maps.push_back(generator_pl_map(rm, b.element(i), b.label(i), b).map);
    } catch (const Error&) {
      // Elements with nothing realizable carry no map.
    }
  }
  return act;
}

std::string to_csv(const RealizationMap& rm) {
  std::string out = "word,t\n";
  for (std::size_t i = 0; i < rm.enumeration.size(); ++i)
    out += rm.labels[i] + "," + to_fraction_string(rm.t[i]) + "\n";
  return out;
}

std::string to_svg(const PLHomeo& m, const std::string& title, double size_px) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\"" << size_px
      << "\" viewBox=\"0 0 " << size_px << ' ' << size_px << "\">\n  <title>" << title << "</title>\n";
  if (!m.empty()) {
    double lo = std::min(m.lo().get_d(), m.breakpoints().front().second.get_d());
    double hi = std::max(m.hi().get_d(), m.breakpoints().back().second.get_d());
    if (hi <= lo) hi = lo + 1.0;
    const double pad = size_px * 0.05;
    auto sx = [&](double v) { return pad + (v - lo) / (hi - lo) * (size_px - 2 * pad); };
    auto sy = [&](double v) { return size_px - sx(v); };
    out << "  <line x1=\"" << sx(lo) << "\" y1=\"" << sy(lo) << "\" x2=\"" << sx(hi) << "\" y2=\"" << sy(hi)
        << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4\"/>\n  <polyline fill=\"none\" stroke=\"black\" points=\"";
    for (std::size_t i = 0; i < m.breakpoints().size(); ++i) {
      const auto& [x, y] = m.breakpoints()[i];
      out << (i ? " " : "") << sx(x.get_d()) << ',' << sy(y.get_d());
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace dendra
