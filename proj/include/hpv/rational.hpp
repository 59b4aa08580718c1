#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hpv {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Input that fails validation (malformed tables, broken invariants).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem or construction was asked for outside its assumptions.
class NotApplicableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant broke; indicates a bug, not bad input.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts "p/q", plain integers, and decimal literals ("0.25" -> 1/4).
std::optional<Rat> parse_rational(std::string_view text);

// "p/q" when the denominator is not 1, otherwise just "p".
std::string format_rational(const Rat& r);

inline double to_double(const Rat& r) { return static_cast<double>(r); }

}  // namespace hpv
