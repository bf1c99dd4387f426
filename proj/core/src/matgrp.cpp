#include "dendra/matgrp.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace dendra {

GroupMatrix elementary(std::size_t n, std::size_t i, std::size_t j, const Integer& v,
                       std::optional<std::uint64_t> modulus) {
  if (i == j) throw Error("elementary matrix requires i != j");
  if (i < 1 || j < 1 || i > n || j > n) throw Error("elementary matrix index out of range");
  std::vector<Integer> e(n * n);
  for (std::size_t k = 0; k < n; ++k) e[k * n + k] = 1;
  e[(i - 1) * n + (j - 1)] = v;
  return GroupMatrix(n, std::move(e), modulus);
}

GroupMatrix commutator(const GroupMatrix& a, const GroupMatrix& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch");
  if (!a.same_domain(b)) throw Error("coefficient domain mismatch");
  return a.inverse() * b.inverse() * a * b;
}

std::array<GroupMatrix, 6> six_generators(const Integer& r) {
  if (r < 1) throw Error("six_generators requires r >= 1");
  return {elementary(3, 1, 2, r), elementary(3, 1, 3, r), elementary(3, 2, 3, r),
          elementary(3, 2, 1, r), elementary(3, 3, 1, r), elementary(3, 3, 2, r)};
}

std::array<GroupMatrix, 6> six_generators_embedded(std::size_t n, std::size_t i, std::size_t j,
                                                   const Integer& l) {
  if (n < 3) throw Error("embedded hexagon requires n >= 3");
  if (!(1 <= i && i < j && j <= n - 1)) throw Error("embedded hexagon requires 1 <= i < j <= n-1");
  if (l < 1) throw Error("embedded hexagon requires l >= 1");
  return {elementary(n, i, j, l),     elementary(n, i, j + 1, l), elementary(n, j, j + 1, l),
          elementary(n, j, i, l),     elementary(n, j + 1, i, l), elementary(n, j + 1, j, l)};
}

HexagonReport verify_hexagon_relations(std::span<const GroupMatrix> gens, const Integer& r) {
  if (gens.size() != 6) throw Error("hexagon relations need exactly six matrices");
  if (!r.fits_slong_p()) throw Error("hexagon exponent out of range");
  const long exponent = r.get_si();
  HexagonReport report;
  report.pass = true;
  auto at = [&](int i) -> const GroupMatrix& { return gens[static_cast<std::size_t>(((i % 6) + 6) % 6)]; };
  for (int i = 0; i < 6; ++i) {
    HexagonCheck check;
    check.index = i + 1;
    check.commutes = commutator(at(i), at(i + 1)).is_identity();
    GroupMatrix c = commutator(at(i - 1), at(i + 1));
    if (c == at(i).pow(exponent)) {
      check.power_relation = true;
      check.sign = 1;
    } else if (c == at(i).pow(-exponent)) {
      check.power_relation = true;
      check.sign = -1;
    }
    if (!(check.commutes && check.power_relation)) {
      report.pass = false;
      if (!report.first_failure) report.first_failure = check.index;
    }
    report.checks.push_back(check);
  }
  return report;
}

bool verify_ll_identity(const GroupMatrix& a, const GroupMatrix& b, const GroupMatrix& c, long r,
                        long p, long q, long m) {
  if (!a.same_domain(b) || !a.same_domain(c)) throw Error("dimension mismatch");
  if (commutator(a, b) != c.pow(r) || a * c != c * a || b * c != c * b)
    throw Error("hypotheses of the commutator lemma violated: need [a,b] = c^r with c central in <a,b,c>");
  const GroupMatrix lhs = (b.inverse() * c.pow(q)).pow(m) * (a.inverse() * c.pow(p)).pow(m) * b.pow(m) * a.pow(m);
  const GroupMatrix middle = commutator(b.pow(m), a.pow(m)) * c.pow(m * (p + q));
  return lhs == middle && middle == c.pow(-m * m * r + m * (p + q));
}

bool congruence_membership(const GroupMatrix& a, std::uint64_t k) {
  if (a.is_modular()) throw Error("congruence membership needs an integral matrix");
  if (k < 2) throw Error("congruence level must be at least 2");
  if (a.determinant() != 1) throw Error("determinant is not 1");
  return a.reduced(k).is_identity();
}

std::vector<std::uint64_t> congruence_levels(const GroupMatrix& a, std::uint64_t max_level) {
  std::vector<std::uint64_t> levels;
  for (std::uint64_t k = 2; k <= max_level; ++k)
    if (congruence_membership(a, k)) levels.push_back(k);
  return levels;
}

// --- FiniteMatrixGroup -----------------------------------------------------

std::string FiniteMatrixGroup::key(std::span<const std::uint32_t> entries) const {
  // Fixed-width big-endian bytes so that byte order equals numeric
  // lexicographic order of the entries.
  const int width = m_ <= 0x100 ? 1 : (m_ <= 0x10000 ? 2 : 4);
  std::string k;
  k.reserve(entries.size() * static_cast<std::size_t>(width));
  for (std::uint32_t e : entries)
    for (int b = width - 1; b >= 0; --b) k.push_back(static_cast<char>((e >> (8 * b)) & 0xffu));
  return k;
}

GroupMatrix FiniteMatrixGroup::element(Index i) const {
  auto e = entries(i);
  std::vector<Integer> v(e.begin(), e.end());
  return GroupMatrix(n_, std::move(v), m_);
}

std::optional<FiniteMatrixGroup::Index> FiniteMatrixGroup::find(std::span<const std::uint32_t> entries) const {
  auto it = index_.find(key(entries));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<FiniteMatrixGroup::Index> FiniteMatrixGroup::find(const GroupMatrix& g) const {
  if (g.dim() != n_ || g.modulus() != m_) return std::nullopt;
  std::vector<std::uint32_t> packed;
  packed.reserve(n_ * n_);
  for (const auto& e : g.entries()) packed.push_back(static_cast<std::uint32_t>(e.get_ui()));
  return find(packed);
}

void FiniteMatrixGroup::multiply_into(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                      std::span<std::uint32_t> out) const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < n_; ++k)
        acc = (acc + static_cast<std::uint64_t>(a[i * n_ + k]) * b[k * n_ + j] % m_) % m_;
      out[i * n_ + j] = static_cast<std::uint32_t>(acc);
    }
  }
}

FiniteMatrixGroup::Index FiniteMatrixGroup::multiply(Index a, Index b) const {
  std::vector<std::uint32_t> out(n_ * n_);
  multiply_into(entries(a), entries(b), out);
  auto idx = find(out);
  if (!idx) throw Error("product left the group");
  return *idx;
}

FiniteMatrixGroup::Index FiniteMatrixGroup::inverse(Index a) const {
  auto idx = find(element(a).inverse());
  if (!idx) throw Error("inverse left the group");
  return *idx;
}

FiniteMatrixGroup enumerate_group(std::size_t n, std::uint64_t m, std::span<const GroupMatrix> gens,
                                  std::size_t cap) {
  if (m < 2 || m > 0xffffffffULL) throw Error("modulus must lie in [2, 2^32)");
  if (cap == 0) throw Error("element cap must be positive");
  FiniteMatrixGroup g;
  g.n_ = n;
  g.m_ = m;
  const std::size_t nn = n * n;

  std::vector<std::vector<std::uint32_t>> steps;
  auto pack = [&](const GroupMatrix& x) {
    if (x.dim() != n || x.modulus() != m) throw Error("generator is not an n x n matrix mod m");
    std::vector<std::uint32_t> packed;
    for (const auto& e : x.entries()) packed.push_back(static_cast<std::uint32_t>(e.get_ui()));
    return packed;
  };
  for (const auto& s : gens) {
    g.generators_.push_back(s);
    steps.push_back(pack(s));
    steps.push_back(pack(s.inverse()));
  }

  std::vector<std::uint32_t> data;
  std::unordered_map<std::string, std::size_t> seen;
  auto add = [&](std::span<const std::uint32_t> x) -> bool {
    auto [it, inserted] = seen.emplace(g.key(x), seen.size());
    if (!inserted) return false;
    if (seen.size() > cap) throw CapExceeded("group too large for cap");
    data.insert(data.end(), x.begin(), x.end());
    return true;
  };
  add(pack(GroupMatrix::identity(n, m)));
  std::vector<std::uint32_t> product(nn);
  for (std::size_t head = 0; head < seen.size(); ++head) {
    for (const auto& s : steps) {
      std::span<const std::uint32_t> x(data.data() + head * nn, nn);
      g.multiply_into(x, s, product);
      add(product);
    }
  }

  // Canonical order restores determinism independent of discovery order.
  const std::size_t count = seen.size();
  std::vector<std::pair<std::string, std::size_t>> order;
  order.reserve(count);
  for (auto& [k, idx] : seen) order.emplace_back(k, idx);
  std::sort(order.begin(), order.end());
  g.data_.resize(count * nn);
  g.count_ = count;
  for (std::size_t i = 0; i < count; ++i) {
    std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(order[i].second * nn), nn,
                g.data_.begin() + static_cast<std::ptrdiff_t>(i * nn));
    g.index_.emplace(std::move(order[i].first), i);
  }
  g.identity_ = *g.find(pack(GroupMatrix::identity(n, m)));
  for (const auto& s : g.generators_) g.generator_indices_.push_back(*g.find(s));
  return g;
}

namespace {

using Index = FiniteMatrixGroup::Index;

std::vector<char> membership(const FiniteMatrixGroup& g, std::span<const Index> subset) {
  std::vector<char> in(g.order(), 0);
  for (Index i : subset) {
    if (i >= g.order()) throw Error("subset index out of range");
    in[i] = 1;
  }
  return in;
}

}  // namespace

bool is_subgroup(const FiniteMatrixGroup& g, std::span<const Index> subset) {
  auto in = membership(g, subset);
  if (!in[g.identity_index()]) return false;
  // Grow <gens> one generator at a time; the subset is a subgroup iff the
  // closure never leaves it and finally covers it.
  std::vector<char> closure(g.order(), 0);
  std::vector<Index> members{g.identity_index()};
  closure[g.identity_index()] = 1;
  std::vector<Index> gens;
  for (Index x : subset) {
    if (closure[x]) continue;
    gens.push_back(x);
    // Re-close: every member times every generator.
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (Index s : gens) {
        Index y = g.multiply(members[head], s);
        if (!in[y]) return false;
        if (!closure[y]) {
          closure[y] = 1;
          members.push_back(y);
        }
      }
    }
  }
  std::size_t distinct = 0;
  for (char c : in) distinct += c ? 1 : 0;
  return members.size() == distinct;
}

std::vector<Index> normal_core(const FiniteMatrixGroup& g, std::span<const Index> h) {
  if (!is_subgroup(g, h)) throw Error("subset is not a subgroup");
  auto in = membership(g, h);
  std::vector<Index> sub;
  for (Index i = 0; i < g.order(); ++i)
    if (in[i]) sub.push_back(i);

  // Left coset representatives x_1..x_k of g/h.
  std::vector<char> covered(g.order(), 0);
  std::vector<Index> reps;
  for (Index x = 0; x < g.order(); ++x) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (Index s : sub) covered[g.multiply(x, s)] = 1;
  }
  std::vector<Index> rep_inverse;
  for (Index x : reps) rep_inverse.push_back(g.inverse(x));

  // k fixes every coset x h  <=>  x^{-1} k x in h for all representatives.
  std::vector<Index> core;
  for (Index k : sub) {
    bool fixes_all = true;
    for (std::size_t r = 0; r < reps.size() && fixes_all; ++r)
      fixes_all = in[g.multiply(g.multiply(rep_inverse[r], k), reps[r])] != 0;
    if (fixes_all) core.push_back(k);
  }
  return core;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Integer special_linear_order(std::size_t n, std::uint64_t p, std::size_t k) {
  if (k == 0) return 1;
  Integer pz(static_cast<unsigned long>(p));
  Integer order;
  mpz_pow_ui(order.get_mpz_t(), pz.get_mpz_t(), n * (n - 1) / 2);
  for (std::size_t i = 2; i <= n; ++i) {
    Integer pk;
    mpz_pow_ui(pk.get_mpz_t(), pz.get_mpz_t(), i);
    order *= pk - 1;
  }
  Integer lift;
  mpz_pow_ui(lift.get_mpz_t(), pz.get_mpz_t(), (k - 1) * (n * n - 1));
  return order * lift;
}

}  // namespace dendra
