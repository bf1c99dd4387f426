#pragma once

#include "dendra/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dendra {

/// Square matrix over Z (unbounded entries) or over Z/mZ.
///
/// Modular matrices keep their entries canonically reduced to [0, m), so
/// equality of two elements is entrywise equality. Integral and modular
/// matrices never mix: arithmetic across coefficient domains throws.
class GroupMatrix {
 public:
  GroupMatrix() = default;
  GroupMatrix(std::size_t n, std::vector<Integer> entries,
              std::optional<std::uint64_t> modulus = std::nullopt);

  static GroupMatrix identity(std::size_t n, std::optional<std::uint64_t> modulus = std::nullopt);

  std::size_t dim() const noexcept { return n_; }
  bool is_modular() const noexcept { return modulus_.has_value(); }
  std::optional<std::uint64_t> modulus() const noexcept { return modulus_; }

  /// 0-based access.
  const Integer& operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  std::span<const Integer> entries() const noexcept { return entries_; }

  /// Reduction of an integral matrix (or a coarser reduction of a modular one,
  /// when m divides the current modulus).
  GroupMatrix reduced(std::uint64_t m) const;

  /// Exact determinant; for modular matrices the canonical residue.
  Integer determinant() const;

  /// Throws unless the determinant is a unit of the coefficient ring.
  GroupMatrix inverse() const;

  GroupMatrix pow(long long exponent) const;

  bool is_identity() const;
  bool same_domain(const GroupMatrix& other) const noexcept {
    return n_ == other.n_ && modulus_ == other.modulus_;
  }

  std::size_t hash() const noexcept;
  std::string to_string() const;

  friend GroupMatrix operator*(const GroupMatrix& a, const GroupMatrix& b);
  friend bool operator==(const GroupMatrix& a, const GroupMatrix& b);

  /// Canonical order: dimension, then modulus, then row-major entries.
  friend bool operator<(const GroupMatrix& a, const GroupMatrix& b);

 private:
  std::size_t n_ = 0;
  std::optional<std::uint64_t> modulus_;
  std::vector<Integer> entries_;
};

struct GroupMatrixHash {
  std::size_t operator()(const GroupMatrix& m) const noexcept { return m.hash(); }
};

}  // namespace dendra
