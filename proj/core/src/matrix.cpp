#include "dendra/matrix.hpp"

#include "dendra/error.hpp"

#include <sstream>
#include <utility>

namespace dendra {

namespace {

void reduce_entries(std::vector<Integer>& entries, std::uint64_t m) {
  Integer mod(static_cast<unsigned long>(m));
  for (auto& e : entries) {
    mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  }
}

// Fraction-free Gaussian elimination; exact over Z.
Integer bareiss_determinant(std::vector<Integer> a, std::size_t n) {
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row * n + k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[swap_row * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i * n + j] = std::move(v);
      }
    }
    prev = a[k * n + k];
  }
  Integer det = a[(n - 1) * n + (n - 1)];
  return sign < 0 ? Integer(-det) : det;
}

// adj(A) = det(A) * A^{-1}, computed over Q and returned over Z.
std::vector<Integer> adjugate(const std::vector<Integer>& a, std::size_t n, const Integer& det) {
  if (det == 0) throw Error("matrix is singular");
  std::vector<Rational> m(n * 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i * 2 * n + j] = a[i * n + j];
    m[i * 2 * n + n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (m[pivot * 2 * n + col] == 0) ++pivot;
    if (pivot != col)
      for (std::size_t c = 0; c < 2 * n; ++c) std::swap(m[pivot * 2 * n + c], m[col * 2 * n + c]);
    Rational inv = 1 / m[col * 2 * n + col];
    for (std::size_t c = 0; c < 2 * n; ++c) m[col * 2 * n + c] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r * 2 * n + col] == 0) continue;
      Rational f = m[r * 2 * n + col];
      for (std::size_t c = 0; c < 2 * n; ++c) m[r * 2 * n + c] -= f * m[col * 2 * n + c];
    }
  }
  std::vector<Integer> adj(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = m[i * 2 * n + n + j] * det;
      v.canonicalize();
      adj[i * n + j] = v.get_num();
    }
  }
  return adj;
}

}  // namespace

GroupMatrix::GroupMatrix(std::size_t n, std::vector<Integer> entries, std::optional<std::uint64_t> modulus)
    : n_(n), modulus_(modulus), entries_(std::move(entries)) {
  if (n == 0) throw Error("matrix dimension must be positive");
  if (entries_.size() != n * n) throw Error("matrix entry count does not match dimension");
  if (modulus_) {
    if (*modulus_ < 2) throw Error("modulus must be at least 2");
    reduce_entries(entries_, *modulus_);
  }
}

GroupMatrix GroupMatrix::identity(std::size_t n, std::optional<std::uint64_t> modulus) {
  std::vector<Integer> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return GroupMatrix(n, std::move(e), modulus);
}

GroupMatrix GroupMatrix::reduced(std::uint64_t m) const {
  if (modulus_ && *modulus_ % m != 0) throw Error("reduction modulus must divide the current modulus");
  return GroupMatrix(n_, entries_, m);
}

Integer GroupMatrix::determinant() const {
  Integer d = bareiss_determinant(entries_, n_);
  if (modulus_) {
    Integer mod(static_cast<unsigned long>(*modulus_));
    mpz_fdiv_r(d.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
  }
  return d;
}

GroupMatrix GroupMatrix::inverse() const {
  Integer det = bareiss_determinant(entries_, n_);
  if (!modulus_) {
    if (det != 1 && det != -1) throw Error("integral matrix is not invertible over Z");
    auto adj = adjugate(entries_, n_, det);
    if (det == -1)
      for (auto& e : adj) e = -e;
    return GroupMatrix(n_, std::move(adj));
  }
  Integer mod(static_cast<unsigned long>(*modulus_));
  Integer det_inv;
  if (mpz_invert(det_inv.get_mpz_t(), det.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw Error("determinant is not a unit modulo " + mod.get_str());
  auto adj = adjugate(entries_, n_, det);
  for (auto& e : adj) e *= det_inv;
  return GroupMatrix(n_, std::move(adj), modulus_);
}

GroupMatrix GroupMatrix::pow(long long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  GroupMatrix result = identity(n_, modulus_);
  GroupMatrix base = *this;
  auto e = static_cast<unsigned long long>(exponent);
  while (e != 0) {
    if (e & 1ULL) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

bool GroupMatrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (entries_[i * n_ + j] != (i == j ? 1 : 0)) return false;
  return true;
}

std::size_t GroupMatrix::hash() const noexcept {
  std::size_t h = n_ * 1315423911u + (modulus_ ? static_cast<std::size_t>(*modulus_) : 0);
  for (const auto& e : entries_) h ^= hash_integer(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string GroupMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < n_; ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < n_; ++j) out << (j ? "," : "") << entries_[i * n_ + j].get_str();
    out << ']';
  }
  out << ']';
  if (modulus_) out << " mod " << *modulus_;
  return out.str();
}

GroupMatrix operator*(const GroupMatrix& a, const GroupMatrix& b) {
  if (a.n_ != b.n_) throw Error("dimension mismatch");
  if (a.modulus_ != b.modulus_) throw Error("coefficient domain mismatch");
  const std::size_t n = a.n_;
  std::vector<Integer> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Integer& aik = a.entries_[i * n + k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Integer& bkj = b.entries_[k * n + j];
        if (bkj != 0) mpz_addmul(out[i * n + j].get_mpz_t(), aik.get_mpz_t(), bkj.get_mpz_t());
      }
    }
  }
  return GroupMatrix(n, std::move(out), a.modulus_);
}

bool operator==(const GroupMatrix& a, const GroupMatrix& b) {
  return a.n_ == b.n_ && a.modulus_ == b.modulus_ && a.entries_ == b.entries_;
}

bool operator<(const GroupMatrix& a, const GroupMatrix& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  if (a.modulus_ != b.modulus_) return a.modulus_ < b.modulus_;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    int c = cmp(a.entries_[i], b.entries_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace dendra
