#pragma once

#include <string>
#include <string_view>

#include "kt/ratfunc.hpp"

namespace kt {

/// Parse the plain-text expression grammar: integer literals, the two
/// coordinate variables, + - * / ^ (nonnegative integer exponents) and
/// parentheses. Rational constants are written as divisions, e.g. 3/5.
/// Errors carry the offset into the input.
RatFunc parse_expression(std::string_view text,
                         const std::string& xname = "x",
                         const std::string& yname = "y");

}  // namespace kt
