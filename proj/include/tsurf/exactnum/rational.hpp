#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace tsurf {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

// Accepts "p", "p/q", and plain decimals such as "-1.25" or "3e-2".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

Integer floor(const Rational& r);
Integer lcm(const Integer& a, const Integer& b);

}  // namespace tsurf
