#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace plsurf {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" or "p". Throws Error(SchemaError) on malformed text.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string format_rational(const Rational& value);

/// Representative of value modulo 1 in [0, 1).
Rational mod_one(const Rational& value);

int sign(const Rational& value);

}  // namespace plsurf
