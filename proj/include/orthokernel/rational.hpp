#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <string>
#include <string_view>

namespace orthokernel {

// Expression templates are disabled: Eigen evaluates its own expression
// trees and does not cope with nested boost expression types.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// "p/q" with the denominator omitted when it is 1.
std::string to_string(const Rational& r);

/// Parses "p", "p/q" or "-p/q". Throws InputError on anything else,
/// including a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace orthokernel
