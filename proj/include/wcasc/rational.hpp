#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace wcasc {

// Exact rational scalar used for every cost, weight and utility value in the
// model. Always kept in lowest terms with a positive denominator; floating
// point only ever appears when comparing against transcendental bounds.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& r);

// Accepts "p" and "p/q" (q > 0 after sign normalization). Returns nullopt on
// malformed input or a zero denominator.
std::optional<Rational> try_parse_rational(std::string_view text);

double to_double(const Rational& r);

bool is_integer(const Rational& r);

}  // namespace wcasc
