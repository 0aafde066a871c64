#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace e8jac {

using Integer = mpz_class;
using Rational = mpq_class;

// "num/den" in lowest terms, or "num" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts "a", "-a", "a/b"; the result is canonicalized. Throws
// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

} // namespace e8jac
