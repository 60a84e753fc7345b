#pragma once

#include <string_view>

#include "nthcoeff/bipoly.hpp"

namespace nth {

// Grammar: integer literals, variables x and y, +, -, *, ^, parentheses.
// Coefficients are reduced mod p while scanning.  Throws ParseError with the
// offending position; NonconformingExponent for a negative or oversized
// exponent.
BiPoly parse_poly(std::string_view text, const PrimeField& F);

}  // namespace nth
