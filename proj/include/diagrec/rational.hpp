#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "diagrec/errors.hpp"

namespace diagrec {

// Arbitrary-precision rational scalar for exact generating-function
// arithmetic. Every finite double is a dyadic rational, so conversion from
// double is exact.
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational_from_double(double v) {
    return Rational(v);
}

inline double rational_to_double(const Rational& r) {
    return r.convert_to<double>();
}

// Accepts "p/q", "p", or a decimal literal (parsed exactly as a double, then
// converted). Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

std::string rational_to_string(const Rational& r);

} // namespace diagrec
