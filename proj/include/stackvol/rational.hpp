#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stackvol {

/// Arbitrary precision rational; all finite-groupoid quantities are exact.
using Rational = mpq_class;

/// Parses "p/q", "p" or a plain integer literal. Throws InputError.
Rational parse_rational(std::string_view text);

/// Always "p/q" in lowest terms, including q = 1.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace stackvol
