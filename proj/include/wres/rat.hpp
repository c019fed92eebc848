#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace wres {

// Exact arithmetic substrate.  Rat is an arbitrary-precision rational kept
// in lowest terms with positive denominator (mpq_class canonical form);
// every construction path below canonicalizes.
using Int = mpz_class;
using Rat = mpq_class;

// "p/q" with q > 0, or "p" when q == 1.
std::string rat_str(const Rat& r);
std::string int_str(const Int& n);

// Accepts optional sign, integer or integer/integer.  Rejects q == 0 and
// malformed text.
Rat rat_parse(std::string_view text);

bool rat_is_integer(const Rat& r);
Int rat_floor(const Rat& r);

// r^e for e >= 0.
Rat rat_pow(const Rat& r, unsigned long e);

Int int_factorial(const Int& n);  // n must be >= 0 and fit in unsigned long
Int int_lcm(const Int& a, const Int& b);

}  // namespace wres
