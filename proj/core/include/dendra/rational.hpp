#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace dendra {

using Integer = mpz_class;
using Rational = mpq_class;

// Always "p/q" with q > 0, including integers ("3/1").
std::string to_fraction_string(const Rational& q);

// Accepts "p", "p/q", "-p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

// True iff the reduced denominator is a power of two (including 1).
bool has_dyadic_denominator(const Rational& q);

std::size_t hash_integer(const Integer& z) noexcept;

}  // namespace dendra
