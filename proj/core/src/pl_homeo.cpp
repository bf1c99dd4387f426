#include "dendra/pl_homeo.hpp"

#include <algorithm>
#include <sstream>

namespace dendra {

std::string ArcPoint::to_string() const {
  switch (kind) {
    case Kind::minus_infinity: return "-inf";
    case Kind::plus_infinity: return "+inf";
    case Kind::finite: break;
  }
  return to_fraction_string(value);
}

bool operator==(const ArcPoint& a, const ArcPoint& b) {
  return a.kind == b.kind && (a.kind != ArcPoint::Kind::finite || a.value == b.value);
}

bool operator<(const ArcPoint& a, const ArcPoint& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  return a.kind == ArcPoint::Kind::finite && a.value < b.value;
}

PLHomeo PLHomeo::unchecked(std::vector<Breakpoint> breakpoints) {
  PLHomeo m;
  std::stable_sort(breakpoints.begin(), breakpoints.end(),
                   [](const Breakpoint& a, const Breakpoint& b) { return a.first < b.first; });
  m.breakpoints_ = std::move(breakpoints);
  return m;
}

PLHomeo::PLHomeo(std::vector<Breakpoint> breakpoints) {
  *this = unchecked(std::move(breakpoints));
  if (!is_strictly_increasing()) throw Error("breakpoints must be strictly increasing in both coordinates");
}

PLHomeo PLHomeo::identity(std::span<const Rational> points) {
  std::vector<Breakpoint> bps;
  for (const auto& x : points) bps.emplace_back(x, x);
  return PLHomeo(std::move(bps));
}

bool PLHomeo::is_strictly_increasing() const {
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (!(breakpoints_[i - 1].first < breakpoints_[i].first) || !(breakpoints_[i - 1].second < breakpoints_[i].second))
      return false;
  return true;
}

bool PLHomeo::in_domain(const Rational& x) const {
  return !breakpoints_.empty() && lo() <= x && x <= hi();
}

std::optional<Rational> PLHomeo::evaluate(const Rational& x) const {
  if (!in_domain(x)) return std::nullopt;
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x,
                             [](const Breakpoint& b, const Rational& v) { return b.first < v; });
  if (it->first == x) return it->second;
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  return Rational(y0 + (y1 - y0) * (x - x0) / (x1 - x0));
}

std::optional<ArcPoint> PLHomeo::evaluate(const ArcPoint& x) const {
  if (!x.is_finite()) return x;
  auto y = evaluate(x.value);
  if (!y) return std::nullopt;
  return ArcPoint::at(std::move(*y));
}

PLHomeo PLHomeo::inverse() const {
  std::vector<Breakpoint> bps;
  bps.reserve(breakpoints_.size());
  for (const auto& [x, y] : breakpoints_) bps.emplace_back(y, x);
  return unchecked(std::move(bps));
}

FixedSet fixed_set(const PLHomeo& m) {
  FixedSet out;
  const auto& bps = m.breakpoints();
  std::vector<Rational> candidates;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const Rational d0 = bps[i].second - bps[i].first;
    if (d0 == 0) {
      candidates.push_back(bps[i].first);
      if (i + 1 < bps.size() && bps[i + 1].second == bps[i + 1].first) {
        if (!out.intervals.empty() && out.intervals.back().second == bps[i].first)
          out.intervals.back().second = bps[i + 1].first;
        else
          out.intervals.emplace_back(bps[i].first, bps[i + 1].first);
      }
    }
    if (i + 1 < bps.size()) {
      const Rational d1 = bps[i + 1].second - bps[i + 1].first;
      if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0))
        candidates.push_back(bps[i].first + d0 * (bps[i + 1].first - bps[i].first) / (d0 - d1));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (auto& p : candidates) {
    const bool covered = std::any_of(out.intervals.begin(), out.intervals.end(),
                                     [&](const auto& iv) { return iv.first <= p && p <= iv.second; });
    if (!covered) out.points.push_back(std::move(p));
  }
  return out;
}

std::string to_csv(const PLHomeo& m) {
  std::string out = "input,output\n";
  for (const auto& [x, y] : m.breakpoints()) out += to_fraction_string(x) + "," + to_fraction_string(y) + "\n";
  return out;
}

PLHomeo pl_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<PLHomeo::Breakpoint> bps;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line == "input,output") continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) throw Error("malformed breakpoint row: " + line);
    bps.emplace_back(parse_rational(line.substr(0, comma)), parse_rational(line.substr(comma + 1)));
  }
  return PLHomeo::unchecked(std::move(bps));
}

}  // namespace dendra
