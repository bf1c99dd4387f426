#include "dendra/ordering.hpp"

#include "dendra/matgrp.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <unordered_set>

namespace dendra {

Ball::Ball(std::vector<GroupMatrix> elements, std::vector<GroupMatrix> generators,
           std::vector<std::string> generator_names, std::size_t radius, std::vector<std::vector<int>> words)
    : generators_(std::move(generators)), generator_names_(std::move(generator_names)), radius_(radius) {
  if (!words.empty() && words.size() != elements.size()) throw Error("words must parallel elements");
  if (generator_names_.empty())
    for (std::size_t k = 0; k < generators_.size(); ++k) generator_names_.push_back("g" + std::to_string(k + 1));
  if (generator_names_.size() != generators_.size()) throw Error("one name per generator required");
  for (std::size_t i = 1; i < elements.size(); ++i)
    if (elements[i].dim() != elements[0].dim() || !elements[i].same_domain(elements[0]))
      throw Error("ball elements must share dimension and coefficient domain");

  // First occurrence wins; discovery order is the input order.
  std::unordered_map<GroupMatrix, std::size_t, GroupMatrixHash> first;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (first.emplace(elements[i], i).second) kept.push_back(i);
  std::vector<std::size_t> order = kept;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return elements[a] < elements[b]; });
  std::unordered_map<std::size_t, std::size_t> new_index;
  for (std::size_t k = 0; k < order.size(); ++k) {
    new_index[order[k]] = k;
    elements_.push_back(elements[order[k]]);
    if (!words.empty()) words_.push_back(words[order[k]]);
  }
  for (std::size_t i : kept) discovery_.push_back(words.empty() ? discovery_.size() : new_index[i]);
  if (words.empty()) std::iota(discovery_.begin(), discovery_.end(), 0);
  for (std::size_t k = 0; k < elements_.size(); ++k) index_.emplace(elements_[k], k);
}

std::optional<std::size_t> Ball::find(const GroupMatrix& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Ball::index(const GroupMatrix& g) const {
  auto i = find(g);
  if (!i) throw Error("element not in ball");
  return *i;
}

std::optional<std::size_t> Ball::identity_index() const {
  if (elements_.empty()) return std::nullopt;
  const auto& e0 = elements_.front();
  return find(GroupMatrix::identity(e0.dim(), e0.modulus()));
}

std::string Ball::label(std::size_t i) const {
  if (words_.empty()) return "#" + std::to_string(i);
  const auto& w = words_.at(i);
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t a = 0; a < w.size();) {
    std::size_t b = a;
    while (b < w.size() && w[b] == w[a]) ++b;
    const long power = static_cast<long>(b - a) * (w[a] > 0 ? 1 : -1);
    if (!out.empty()) out += "*";
    out += generator_names_.at(static_cast<std::size_t>(std::abs(w[a]) - 1));
    if (power != 1) out += "^" + std::to_string(power);
    a = b;
  }
  return out;
}

GroupMatrix evaluate_word(std::span<const GroupMatrix> gens, const std::vector<int>& word) {
  if (gens.empty()) throw Error("no generators");
  GroupMatrix out = GroupMatrix::identity(gens[0].dim(), gens[0].modulus());
  for (int letter : word) {
    if (letter == 0 || static_cast<std::size_t>(std::abs(letter)) > gens.size())
      throw Error("word letter out of range");
    const auto& g = gens[static_cast<std::size_t>(std::abs(letter) - 1)];
    out = out * (letter > 0 ? g : g.inverse());
  }
  return out;
}

Ball ball_generate(std::span<const GroupMatrix> gens, std::size_t radius, std::vector<std::string> names,
                   std::size_t cap) {
  if (gens.empty()) throw Error("ball needs at least one generator");
  std::vector<GroupMatrix> moves;
  std::vector<int> letters;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    moves.push_back(gens[k]);
    letters.push_back(static_cast<int>(k + 1));
    moves.push_back(gens[k].inverse());
    letters.push_back(-static_cast<int>(k + 1));
  }
  std::vector<GroupMatrix> elements{GroupMatrix::identity(gens[0].dim(), gens[0].modulus())};
  std::vector<std::vector<int>> words{{}};
  std::unordered_set<GroupMatrix, GroupMatrixHash> seen{elements.front()};
  std::size_t layer_begin = 0;
  for (std::size_t r = 0; r < radius; ++r) {
    const std::size_t layer_end = elements.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (std::size_t s = 0; s < moves.size(); ++s) {
        GroupMatrix next = elements[i] * moves[s];
        if (!seen.insert(next).second) continue;
        if (elements.size() >= cap) throw CapExceeded("ball exceeds cap");
        auto w = words[i];
        w.push_back(letters[s]);
        elements.push_back(std::move(next));
        words.push_back(std::move(w));
      }
    }
    layer_begin = layer_end;
  }
  return Ball(std::move(elements), std::vector<GroupMatrix>(gens.begin(), gens.end()), std::move(names), radius,
              std::move(words));
}

OrderAssignment::OrderAssignment(std::shared_ptr<const Ball> domain)
    : domain_(std::move(domain)), n_(domain_ ? domain_->size() : 0), signs_(n_ * n_, 0) {
  if (!domain_) throw Error("order assignment needs a domain");
}

void OrderAssignment::set(std::size_t g, std::size_t h, int sign) {
  if (g >= n_ || h >= n_ || g == h) throw Error("pair outside domain");
  if (sign != -1 && sign != 1 && sign != 0) throw Error("sign must be -1 or +1");
  signs_[g * n_ + h] = static_cast<std::int8_t>(sign);
}

void OrderAssignment::set_pair(std::size_t g, std::size_t h, int sign) {
  set(g, h, sign);
  set(h, g, -sign);
}

bool OrderAssignment::complete() const {
  for (std::size_t g = 0; g < n_; ++g)
    for (std::size_t h = 0; h < n_; ++h)
      if (g != h && signs_[g * n_ + h] == 0) return false;
  return true;
}

std::vector<std::size_t> OrderAssignment::sorted() const {
  std::vector<std::size_t> position(n_, 0);
  for (std::size_t g = 0; g < n_; ++g)
    for (std::size_t h = 0; h < n_; ++h)
      if (g != h && sign(g, h) == 1) ++position[g];
  std::vector<std::size_t> out(n_, n_);
  for (std::size_t g = 0; g < n_; ++g) {
    if (out[position[g]] != n_) throw Error("not a total order");
    out[position[g]] = g;
  }
  return out;
}

OrderAssignment OrderAssignment::from_ranks(std::shared_ptr<const Ball> domain, std::span<const long long> rank) {
  OrderAssignment phi(std::move(domain));
  if (rank.size() != phi.size()) throw Error("one rank per element required");
  for (std::size_t g = 0; g < phi.size(); ++g)
    for (std::size_t h = g + 1; h < phi.size(); ++h) {
      if (rank[g] == rank[h]) throw Error("ranks must be distinct");
      phi.set_pair(g, h, rank[g] < rank[h] ? -1 : 1);
    }
  return phi;
}

namespace {

constexpr std::size_t kMaxListedViolations = 1000;

std::vector<std::size_t> map_into(const Ball& from, const Ball& into, const char* error) {
  std::vector<std::size_t> out;
  out.reserve(from.size());
  for (const auto& g : from.elements()) {
    auto i = into.find(g);
    if (!i) throw Error(error);
    out.push_back(*i);
  }
  return out;
}

}  // namespace

AxiomReport check_axioms(const OrderAssignment& phi, const Ball& b) {
  const auto idx = map_into(b, phi.domain(), "incomplete assignment");
  const std::size_t n = idx.size();
  AxiomReport report;
  auto add = [&](AxiomViolation v) {
    report.pass = false;
    if (report.violations.size() < kMaxListedViolations) report.violations.push_back(std::move(v));
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c)
      if (a != c && phi.sign(idx[a], idx[c]) == 0) throw Error("incomplete assignment");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = a + 1; c < n; ++c)
      if (phi.sign(idx[a], idx[c]) != -phi.sign(idx[c], idx[a]))
        add({AxiomViolation::Kind::reflexivity, {a, c}});
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g) {
      if (g == f || phi.sign(idx[f], idx[g]) != 1) continue;
      for (std::size_t h = 0; h < n; ++h) {
        if (h == f || h == g) continue;
        if (phi.sign(idx[g], idx[h]) == 1 && phi.sign(idx[f], idx[h]) != 1)
          add({AxiomViolation::Kind::transitivity, {f, g, h}});
      }
    }
  return report;
}

InvarianceReport check_invariance(const OrderAssignment& phi, std::span<const GroupMatrix> f, const Ball& b,
                                  const Ball& b2) {
  const auto in_b2 = map_into(b, b2, "ball containment violated");
  const auto to_phi = map_into(b2, phi.domain(), "incomplete assignment");
  InvarianceReport report;
  for (const auto& x : f) {
    std::vector<std::size_t> moved;
    moved.reserve(b.size());
    for (const auto& g : b.elements()) {
      auto i = b2.find(x * g);
      if (!i) throw Error("ball containment violated");
      moved.push_back(*i);
    }
    for (std::size_t g = 0; g < b.size(); ++g)
      for (std::size_t h = 0; h < b.size(); ++h) {
        if (g == h) continue;
        ++report.checked;
        const int before = phi.sign(to_phi[in_b2[g]], to_phi[in_b2[h]]);
        const int after = phi.sign(to_phi[moved[g]], to_phi[moved[h]]);
        if (before == 0 || after == 0) throw Error("incomplete assignment");
        if (before != after) {
          report.pass = false;
          if (report.violations.size() < kMaxListedViolations) report.violations.push_back({x, g, h});
        }
      }
  }
  return report;
}

std::string to_string(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::sat: return "sat";
    case SearchOutcome::unsat: return "unsat";
    case SearchOutcome::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

namespace {

// Backtracking over the pairs of b2. A literal (x, y) states x below y.
// Invariance links are pre-merged into classes of literals that must share a
// truth value, so one propagation step sets a whole class.
class InvariantSearch {
 public:
  InvariantSearch(std::span<const GroupMatrix> f, const Ball& b, std::shared_ptr<const Ball> b2,
                  const SearchOptions& options)
      : b2_(std::move(b2)), n_(b2_->size()), options_(options) {
    const auto in_b2 = map_into(b, *b2_, "ball containment violated");
    parent_.resize(n_ * n_);
    std::iota(parent_.begin(), parent_.end(), 0);
    flip_.assign(n_ * n_, 0);
    for (const auto& x : f) {
      std::vector<std::size_t> moved;
      for (const auto& g : b.elements()) {
        auto i = b2_->find(x * g);
        if (!i) throw Error("ball containment violated");
        moved.push_back(*i);
      }
      for (std::size_t g = 0; g < in_b2.size(); ++g)
        for (std::size_t h = g + 1; h < in_b2.size(); ++h)
          if (!link(in_b2[g], in_b2[h], moved[g], moved[h]) && !link_conflict_) {
            link_conflict_ = true;
            link_witness_ = {in_b2[g], in_b2[h], moved[g], moved[h]};
            link_f_ = x;
          }
    }
    members_.resize(n_ * n_);
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = x + 1; y < n_; ++y) {
        const std::size_t node = x * n_ + y;
        auto [root, parity] = find(node);
        members_[root].emplace_back(node, parity);
      }
    rel_.assign(n_ * n_, 0);
    reason_.resize(n_ * n_);
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    if (options_.shuffle_seed) {
      std::mt19937_64 rng(*options_.shuffle_seed);
      for (std::size_t i = n_; i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(order_[i - 1], order_[j]);
      }
    }
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t c = a + 1; c < n_; ++c) decisions_.emplace_back(order_[a], order_[c]);
  }

  SearchResult run(std::span<const GroupMatrix> f, const Ball& b) {
    SearchResult result;
    if (link_conflict_) {
      const auto [g, h, fg, fh] = link_witness_;
      result.outcome = SearchOutcome::unsat;
      result.conflicts = 1;
      result.first_conflict.push_back({g, h, -1, "assumed " + name(g) + " below " + name(h)});
      result.first_conflict.push_back(
          {fg, fh, -1, "invariance under " + link_f_.to_string() + " with the constraints already linked"});
      result.first_conflict.push_back({g, h, 1, "conflict: the invariance constraints force both signs"});
      return result;
    }

    struct Frame {
      std::size_t pos;
      int alternative;
      std::size_t mark;
    };
    std::vector<Frame> frames;
    std::size_t scan = 0;
    while (true) {
      while (scan < decisions_.size() && rel(decisions_[scan].first, decisions_[scan].second) != 0) ++scan;
      if (scan == decisions_.size()) break;
      frames.push_back({scan, 0, trail_.size()});
      bool ok = false;
      while (!frames.empty()) {
        Frame& top = frames.back();
        if (top.alternative == 2) {
          undo(top.mark);
          frames.pop_back();
          continue;
        }
        if (++result.branches > options_.budget) {
          result.outcome = SearchOutcome::budget_exhausted;
          return result;
        }
        auto [x, y] = decisions_[top.pos];
        if (top.alternative == 1) std::swap(x, y);
        ++top.alternative;
        undo(top.mark);
        if (assign(x, y, {Reason::Kind::decision, {}}) && propagate()) {
          ok = true;
          break;
        }
        ++result.conflicts;
        if (result.first_conflict.empty()) result.first_conflict = conflict_chain();
        queue_.clear();
      }
      if (!ok) {
        result.outcome = SearchOutcome::unsat;
        return result;
      }
      scan = frames.back().pos + 1;
    }

    OrderAssignment phi(b2_);
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        if (x != y) phi.set(x, y, rel(x, y));
    if (!check_axioms(phi, *b2_).pass || !check_invariance(phi, f, b, *b2_).pass)
      throw Error("search witness failed verification");
    result.outcome = SearchOutcome::sat;
    result.witness = std::move(phi);
    return result;
  }

 private:
  struct Reason {
    enum class Kind { decision, invariance, transitivity } kind = Kind::decision;
    std::vector<std::pair<std::size_t, std::size_t>> antecedents;
  };

  // -1 when x is below y, which is also phi(x, y).
  int rel(std::size_t x, std::size_t y) const { return rel_[x * n_ + y]; }

  std::pair<std::size_t, int> find(std::size_t node) {
    int parity = 0;
    std::size_t v = node;
    while (parent_[v] != v) {
      parity ^= flip_[v];
      v = parent_[v];
    }
    // Path compression with parity bookkeeping.
    std::size_t u = node;
    int acc = parity;
    while (parent_[u] != u) {
      std::size_t next = parent_[u];
      int here = flip_[u];
      parent_[u] = v;
      flip_[u] = static_cast<std::int8_t>(acc);
      acc ^= here;
      u = next;
    }
    return {v, parity};
  }

  // Literal x below y as (node, parity): parity 0 means min below max.
  std::pair<std::size_t, int> literal(std::size_t x, std::size_t y) const {
    return x < y ? std::pair{x * n_ + y, 0} : std::pair{y * n_ + x, 1};
  }

  bool link(std::size_t g, std::size_t h, std::size_t fg, std::size_t fh) {
    auto [na, pa] = literal(g, h);
    auto [nb, pb] = literal(fg, fh);
    auto [ra, qa] = find(na);
    auto [rb, qb] = find(nb);
    if (ra == rb) return (pa ^ qa) == (pb ^ qb);
    parent_[ra] = rb;
    flip_[ra] = static_cast<std::int8_t>(pa ^ qa ^ pb ^ qb);
    return true;
  }

  bool assign(std::size_t x, std::size_t y, Reason reason) {
    const int current = rel(x, y);
    if (current == -1) return true;
    if (current == 1) {
      conflict_ = {x, y};
      conflict_reason_ = std::move(reason);
      return false;
    }
    rel_[x * n_ + y] = -1;
    rel_[y * n_ + x] = 1;
    reason_[x * n_ + y] = std::move(reason);
    trail_.emplace_back(x, y);
    queue_.emplace_back(x, y);
    return true;
  }

  bool propagate() {
    std::vector<std::size_t> below, above;
    while (!queue_.empty()) {
      auto [a, b] = queue_.back();
      queue_.pop_back();

      auto [node, parity] = literal(a, b);
      auto [root, to_root] = find(node);
      const bool root_value = (parity == 0) != (to_root == 1);
      for (const auto& [member, member_parity] : members_[root]) {
        const bool min_below_max = root_value != (member_parity == 1);
        const std::size_t lo = member / n_, hi = member % n_;
        const auto [x, y] = min_below_max ? std::pair{lo, hi} : std::pair{hi, lo};
        if (!assign(x, y, {Reason::Kind::invariance, {{a, b}}})) return false;
      }

      below.assign(1, a);
      above.assign(1, b);
      for (std::size_t v = 0; v < n_; ++v) {
        if (rel(v, a) == -1) below.push_back(v);
        if (rel(b, v) == -1) above.push_back(v);
      }
      for (std::size_t x : below)
        for (std::size_t y : above) {
          if (x == a && y == b) continue;
          Reason r{Reason::Kind::transitivity, {}};
          if (x != a) r.antecedents.emplace_back(x, a);
          r.antecedents.emplace_back(a, b);
          if (y != b) r.antecedents.emplace_back(b, y);
          if (!assign(x, y, std::move(r))) return false;
        }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [x, y] = trail_.back();
      trail_.pop_back();
      rel_[x * n_ + y] = 0;
      rel_[y * n_ + x] = 0;
      reason_[x * n_ + y] = {};
    }
  }

  std::string name(std::size_t i) const { return b2_->label(i); }

  std::string describe(const Reason& r) const {
    switch (r.kind) {
      case Reason::Kind::decision: return "decision";
      case Reason::Kind::invariance:
        return "invariance class of " + name(r.antecedents[0].first) + " below " + name(r.antecedents[0].second);
      case Reason::Kind::transitivity: {
        std::string out = "transitivity via";
        for (const auto& [x, y] : r.antecedents) out += " " + name(x) + "<" + name(y);
        return out;
      }
    }
    return {};
  }

  std::vector<ForcingStep> conflict_chain() const {
    constexpr std::size_t kMaxSteps = 100;
    std::vector<std::pair<std::size_t, std::size_t>> stack = conflict_reason_.antecedents;
    stack.emplace_back(conflict_.second, conflict_.first);
    std::unordered_set<std::size_t> seen;
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      stack.pop_back();
      if (!seen.insert(x * n_ + y).second) continue;
      for (const auto& ante : reason_[x * n_ + y].antecedents) stack.push_back(ante);
    }
    std::vector<ForcingStep> steps;
    for (const auto& [x, y] : trail_)
      if (seen.count(x * n_ + y)) steps.push_back({x, y, -1, describe(reason_[x * n_ + y])});
    if (steps.size() > kMaxSteps) steps.erase(steps.begin(), steps.end() - static_cast<std::ptrdiff_t>(kMaxSteps));
    steps.push_back({conflict_.first, conflict_.second, -1,
                     "conflict: " + describe(conflict_reason_) + " contradicts " + name(conflict_.second) +
                         " below " + name(conflict_.first)});
    return steps;
  }

  std::shared_ptr<const Ball> b2_;
  std::size_t n_;
  SearchOptions options_;
  std::vector<std::size_t> parent_;
  std::vector<std::int8_t> flip_;
  std::vector<std::vector<std::pair<std::size_t, int>>> members_;
  bool link_conflict_ = false;
  std::array<std::size_t, 4> link_witness_{};
  GroupMatrix link_f_;
  std::vector<std::int8_t> rel_;
  std::vector<Reason> reason_;
  std::vector<std::pair<std::size_t, std::size_t>> trail_;
  std::vector<std::pair<std::size_t, std::size_t>> queue_;
  std::vector<std::size_t> order_;
  std::vector<std::pair<std::size_t, std::size_t>> decisions_;
  std::pair<std::size_t, std::size_t> conflict_{};
  Reason conflict_reason_;
};

}  // namespace

SearchResult search_invariant(std::span<const GroupMatrix> f, const Ball& b, std::shared_ptr<const Ball> b2,
                              const SearchOptions& options) {
  if (!b2) throw Error("search needs a superset ball");
  InvariantSearch search(f, b, b2, options);
  return search.run(f, b);
}

CompactnessResult compactness_extract(std::span<const OrderAssignment> chain, std::shared_ptr<const Ball> target,
                                      std::size_t min_support) {
  if (!target) throw Error("compactness extraction needs a target ball");
  const std::size_t n = target->size();
  std::map<std::vector<std::int8_t>, std::vector<std::size_t>> restrictions;
  for (std::size_t c = 0; c < chain.size(); ++c) {
    const Ball& dom = chain[c].domain();
    std::vector<std::size_t> idx;
    bool covers = true;
    for (const auto& g : target->elements()) {
      auto i = dom.find(g);
      if (!i) {
        covers = false;
        break;
      }
      idx.push_back(*i);
    }
    if (!covers) continue;
    std::vector<std::int8_t> key;
    key.reserve(n * (n - 1) / 2);
    for (std::size_t a = 0; a < n && covers; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const int s = chain[c].sign(idx[a], idx[b]);
        if (s == 0) {
          covers = false;
          break;
        }
        key.push_back(static_cast<std::int8_t>(s));
      }
    if (covers) restrictions[std::move(key)].push_back(c);
  }
  const std::vector<std::int8_t>* best = nullptr;
  const std::vector<std::size_t>* supporters = nullptr;
  for (const auto& [key, who] : restrictions)
    if (!supporters || who.size() > supporters->size()) {
      best = &key;
      supporters = &who;
    }
  if (!best || supporters->size() < std::max<std::size_t>(min_support, 1)) throw Error("insufficient chain");
  OrderAssignment order(target);
  std::size_t k = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) order.set_pair(a, b, (*best)[k++]);
  return {std::move(order), *supporters};
}

namespace {

// compare(i, j, probe) returns -1, 0 or +1 for the images of probe under i and j.
template <typename Compare>
OrderAssignment order_by_first_disagreement(std::shared_ptr<const Ball> b, std::size_t probe_count,
                                            Compare compare) {
  OrderAssignment phi(b);
  for (std::size_t i = 0; i < b->size(); ++i)
    for (std::size_t j = i + 1; j < b->size(); ++j) {
      int s = 0;
      for (std::size_t p = 0; p < probe_count && s == 0; ++p) s = compare(i, j, p);
      if (s == 0) throw Error("probes insufficient (action not almost free at this scale)");
      phi.set_pair(i, j, s);
    }
  return phi;
}

// Every construction is checked against (L_{F,B}) for F the generators and
// their inverses and B the elements whose F-translates stay in b.
void require_invariant(const OrderAssignment& phi, const Ball& b) {
  if (b.size() < 2 || b.generators().empty()) return;
  std::vector<GroupMatrix> f;
  for (const auto& g : b.generators()) {
    f.push_back(g);
    f.push_back(g.inverse());
  }
  std::vector<GroupMatrix> inner;
  for (const auto& x : b.elements())
    if (std::all_of(f.begin(), f.end(), [&](const GroupMatrix& s) { return b.contains(s * x); }))
      inner.push_back(x);
  if (inner.size() < 2) return;
  Ball core(std::move(inner), b.generators(), b.generator_names(), b.radius());
  if (!check_invariance(phi, f, core, b).pass) throw Error("constructed order is not (F,B)-invariant");
}

}  // namespace

OrderAssignment order_from_keys(std::shared_ptr<const Ball> b, const std::vector<std::vector<Rational>>& keys) {
  if (!b) throw Error("order needs a ball");
  if (keys.size() != b->size()) throw Error("one key list per element required");
  const std::size_t probes = keys.empty() ? 0 : keys.front().size();
  for (const auto& k : keys)
    if (k.size() != probes) throw Error("key lists must have equal length");
  return order_by_first_disagreement(b, probes, [&](std::size_t i, std::size_t j, std::size_t p) {
    return keys[i][p] < keys[j][p] ? -1 : keys[j][p] < keys[i][p] ? 1 : 0;
  });
}

OrderAssignment order_from_action(const FiniteTreeAction& act, const VertexId& z, std::span<const VertexId> probes,
                                  std::shared_ptr<const Ball> b) {
  if (!b) throw Error("order needs a ball");
  const Tree& tree = act.tree;
  const VertexIndex zi = tree.index(z);
  if (tree.degree(zi) > 1) throw Error("z must be a leaf");
  for (std::size_t s = 0; s < act.generators.size(); ++s)
    if (act.generators[s](zi) != zi) throw Error("generator " + act.generator_names.at(s) + " moves z");
  if (b->size() <= 1) return OrderAssignment(b);
  if (probes.empty()) throw Error("probes insufficient (action not almost free at this scale)");

  // Position along the arc from z through the farthest probe.
  std::vector<VertexIndex> probe_index;
  for (const auto& p : probes) probe_index.push_back(tree.index(p));
  const auto dist = distances_from(tree, zi);
  VertexIndex far = probe_index.front();
  for (VertexIndex p : probe_index)
    if (dist[p] > dist[far]) far = p;
  const auto arc = path(tree, zi, far);
  std::vector<std::optional<std::size_t>> position(tree.size());
  for (std::size_t k = 0; k < arc.size(); ++k) position[arc[k]] = k;
  for (std::size_t k = 0; k < probe_index.size(); ++k) {
    if (!position[probe_index[k]] || probe_index[k] == zi) throw Error("probes must lie on one arc from z");
    if (k > 0 && *position[probe_index[k]] <= *position[probe_index[k - 1]])
      throw Error("probes must be ordered away from z");
  }

  // Ball generator k acts as the tree generator carrying the same matrix.
  if (!b->has_words()) throw Error("ball elements need words to act");
  std::vector<int> generator_map;
  for (const auto& g : b->generators()) {
    if (act.generator_matrices.empty()) {
      if (b->generators().size() != act.generators.size())
        throw Error("ball generators do not match the action generators");
      generator_map.push_back(static_cast<int>(generator_map.size()) + 1);
      continue;
    }
    auto it = std::find(act.generator_matrices.begin(), act.generator_matrices.end(), g);
    if (it == act.generator_matrices.end()) throw Error("ball generator has no action: " + g.to_string());
    generator_map.push_back(static_cast<int>(it - act.generator_matrices.begin()) + 1);
  }
  std::vector<std::vector<VertexIndex>> images(b->size());
  for (std::size_t i = 0; i < b->size(); ++i) {
    std::vector<int> word;
    for (int letter : b->word(i))
      word.push_back(letter > 0 ? generator_map[static_cast<std::size_t>(letter - 1)]
                                : -generator_map[static_cast<std::size_t>(-letter - 1)]);
    for (VertexIndex p : probe_index) images[i].push_back(act.apply_word(word, p));
  }
  auto phi = order_by_first_disagreement(b, probe_index.size(), [&](std::size_t i, std::size_t j, std::size_t p) {
    const VertexIndex u = images[i][p], v = images[j][p];
    if (u == v) return 0;
    if (!position[u] || !position[v]) throw Error("probe images are not comparable along the arc");
    return *position[u] < *position[v] ? -1 : 1;
  });
  require_invariant(phi, *b);
  return phi;
}

OrderAssignment order_from_action(const ArcAction& act, std::span<const Rational> probes,
                                  std::shared_ptr<const Ball> b) {
  if (!b) throw Error("order needs a ball");
  if (b->size() <= 1) return OrderAssignment(b);
  if (probes.empty()) throw Error("probes insufficient (action not almost free at this scale)");
  for (std::size_t k = 1; k < probes.size(); ++k)
    if (!(probes[k - 1] < probes[k])) throw Error("probes must be ordered away from the end point");
  std::unordered_map<GroupMatrix, const PLHomeo*, GroupMatrixHash> by_element;
  for (const auto& m : act.maps) by_element.emplace(m.element, &m.map);
  std::vector<const PLHomeo*> maps;
  for (std::size_t i = 0; i < b->size(); ++i) {
    auto it = by_element.find(b->element(i));
    if (it == by_element.end()) throw Error("no realized map for " + b->label(i));
    maps.push_back(it->second);
  }
  auto phi = order_by_first_disagreement(b, probes.size(), [&](std::size_t i, std::size_t j, std::size_t p) {
    auto u = maps[i]->evaluate(probes[p]);
    auto v = maps[j]->evaluate(probes[p]);
    if (!u || !v) throw Error("probe outside the realized range");
    return *u < *v ? -1 : *v < *u ? 1 : 0;
  });
  require_invariant(phi, *b);
  return phi;
}

namespace {

std::optional<Rational> apply_power(const PLHomeo& m, const PLHomeo& inverse, int power, Rational x) {
  const PLHomeo& step = power >= 0 ? m : inverse;
  for (int k = 0; k < std::abs(power); ++k) {
    auto y = step.evaluate(x);
    if (!y) return std::nullopt;
    x = std::move(*y);
  }
  return x;
}

}  // namespace

std::optional<bool> QuasiOrderSample::less_equal(const PLHomeo& a, int a_power, const PLHomeo& b,
                                                 int b_power) const {
  const PLHomeo a_inv = a.inverse(), b_inv = b.inverse();
  for (const auto& x : probes) {
    auto u = apply_power(a, a_inv, a_power, x);
    auto v = apply_power(b, b_inv, b_power, x);
    if (!u || !v) return std::nullopt;
    if (*u < *v) return true;
    if (*v < *u) return false;
  }
  return true;
}

std::string to_string(LLVerdict verdict) {
  switch (verdict) {
    case LLVerdict::holds_up_to_k: return "holds-up-to-k";
    case LLVerdict::fails: return "fails";
    case LLVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

LLResult ll_test(const QuasiOrderSample& sample, const PLHomeo& g, const PLHomeo& h, std::size_t power_cap) {
  if (power_cap < 1) throw Error("power cap must be at least 1");
  LLResult result;
  result.power_cap = power_cap;
  bool up_undefined = false, down_undefined = false;
  std::vector<long> ks{0};
  for (long k = 1; k <= static_cast<long>(power_cap); ++k) {
    ks.push_back(k);
    ks.push_back(-k);
  }
  for (long k : ks) {
    const int kk = static_cast<int>(k);
    if (!result.refutes_up) {
      auto up = sample.less_equal(g, kk, h, 1);
      if (!up) up_undefined = true;
      else if (!*up) result.refutes_up = k;
    }
    if (!result.refutes_down) {
      auto down = sample.less_equal(g, kk, h, -1);
      if (!down) down_undefined = true;
      else if (!*down) result.refutes_down = k;
    }
    if (result.refutes_up && result.refutes_down) {
      result.k0 = k;
      result.verdict = LLVerdict::fails;
      return result;
    }
  }
  if (!result.refutes_up && !up_undefined) {
    result.verdict = LLVerdict::holds_up_to_k;
    result.surviving = 1;
  } else if (!result.refutes_down && !down_undefined) {
    result.verdict = LLVerdict::holds_up_to_k;
    result.surviving = -1;
  }
  return result;
}

std::vector<OrderPreset> order_presets() {
  auto m2 = [](long a, long b, long c, long d) {
    return GroupMatrix(2, {Integer(a), Integer(b), Integer(c), Integer(d)});
  };
  return {
      {"z-ball-3", "infinite cyclic group generated by u1,2 in SL_2(Z)", {elementary(2, 1, 2, 1)}, {"t"}, 3},
      {"z2-ball-1", "free abelian group of rank 2 generated by u1,3 and u2,3 in SL_3(Z)",
       {elementary(3, 1, 3, 1), elementary(3, 2, 3, 1)}, {"a", "b"}, 1},
      {"heisenberg-ball-2", "integral Heisenberg group generated by u1,2 and u2,3 in SL_3(Z)",
       {elementary(3, 1, 2, 1), elementary(3, 2, 3, 1)}, {"x", "y"}, 2},
      {"torsion-z2", "cyclic group of order 2 generated by -I in SL_2(Z)", {m2(-1, 0, 0, -1)}, {"g"}, 1},
      {"torsion-z3", "cyclic group of order 3 in SL_2(Z)", {m2(0, -1, 1, -1)}, {"g"}, 2},
      {"torsion-z4", "cyclic group of order 4 in SL_2(Z)", {m2(0, -1, 1, 0)}, {"g"}, 2},
  };
}

OrderPreset order_preset(const std::string& name) {
  for (auto& p : order_presets())
    if (p.name == name) return p;
  throw Error("unknown preset: " + name);
}

}  // namespace dendra
