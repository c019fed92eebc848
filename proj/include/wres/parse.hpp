#pragma once

#include <string_view>

#include "wres/poly.hpp"

namespace wres {

// Parses a polynomial expression over the given ambient.
//
// Grammar (no implicit multiplication):
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | '+' factor | base ('^' nat)?
//   base   := identifier | literal | '(' expr ')'
//   literal := nat ('/' nat)?        -- a rational literal, binds as one token
//   identifier := [A-Za-z_][A-Za-z0-9_']*
//
// Unknown identifiers and malformed input raise ParseError with a position.
Poly parse_poly(std::string_view text, const Ambient& ambient);

}  // namespace wres
