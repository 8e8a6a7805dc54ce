#pragma once

#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "ckn/errors.hpp"

namespace ckn {

// Exact arithmetic for the parameter layer. All derived exponents are small
// fractions, so a 64-bit numerator/denominator is plenty.
using Rational = boost::rational<long long>;

// Parses "3", "-2.5", "4/9". Throws InvalidParams on anything else.
Rational rational_from_string(std::string_view text);

// Exact decimal string when the denominator is of the form 2^i 5^j
// ("2.5", "-0.04"), otherwise "num/den" ("4/9").
std::string rational_to_string(const Rational& x);

inline double to_double(const Rational& x) {
    return static_cast<double>(static_cast<long double>(x.numerator()) /
                               static_cast<long double>(x.denominator()));
}

}  // namespace ckn
