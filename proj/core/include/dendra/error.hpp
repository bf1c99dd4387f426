#pragma once

#include <stdexcept>
#include <string>

namespace dendra {

// All library failures are reported through this type; the message is the
// stable, user-facing diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an enumeration would exceed its element cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kDefaultElementCap = 1'000'000;

}  // namespace dendra
