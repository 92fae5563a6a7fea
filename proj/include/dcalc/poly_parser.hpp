#pragma once

#include <string_view>

#include "dcalc/function.hpp"

namespace dcalc {

// Parses a univariate polynomial written as
//
//   poly  := term ("+" term)*
//   term  := coeff | coeff "*" var | var
//   var   := "x" ("^" uint)?
//   coeff := uint | "g" ("^" uint)?
//
// where a uint coefficient is reduced mod p and g is the residue class t of
// the modulus variable. Whitespace is ignored. Throws ParseError with the
// byte offset of the first offending character.
UnivariatePoly parse_poly(const Field& field, std::string_view text);

}  // namespace dcalc
