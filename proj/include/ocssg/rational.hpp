#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ocssg {

using Rational = mpq_class;
using Integer = mpz_class;

// Always "num/den", denominators included even when 1.
std::string format_rational(const Rational& q);

// Accepts "n", "-n" and "n/d"; the result is canonical. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

bool is_lowest_terms(const Rational& q);

Integer lcm_of_denominators(const std::vector<Rational>& values);

}  // namespace ocssg
