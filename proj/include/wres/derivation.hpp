#pragma once

#include <vector>

#include "wres/coordchange.hpp"
#include "wres/poly.hpp"

namespace wres {

// A polynomial vector field sum_j coeffs[j] * d/dx_j on an ambient ring.
struct Derivation {
  Ambient ambient;
  std::vector<Poly> coeffs;
};

Derivation make_derivation(const Ambient& ambient, std::vector<Poly> coeffs);

// Unit field d/dx_j.
Derivation unit_derivation(const Ambient& ambient, size_t j);

Poly apply_derivation(const Derivation& D, const Poly& f);

// Rewrites D in new coordinates.  `C` is the generator-updating substitution
// (it maps current-coordinate polynomials to new-coordinate polynomials) and
// must carry an exact inverse.  The result D' satisfies
//   apply(D', substitute(f, C)) == substitute(apply(D, f), C)
// for every polynomial f.
Derivation conjugate(const Derivation& D, const CoordChange& C);

}  // namespace wres
