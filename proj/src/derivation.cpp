#include "wres/derivation.hpp"

#include "wres/errors.hpp"

namespace wres {

Derivation make_derivation(const Ambient& ambient, std::vector<Poly> coeffs) {
  if (coeffs.size() != ambient->size())
    throw StructuralError("make_derivation: one coefficient per variable");
  for (const auto& g : coeffs)
    if (!same_ambient(g.ambient(), ambient))
      throw StructuralError("make_derivation: coefficient in the wrong ring");
  return Derivation{ambient, std::move(coeffs)};
}

Derivation unit_derivation(const Ambient& ambient, size_t j) {
  std::vector<Poly> coeffs(ambient->size(), Poly::zero(ambient));
  coeffs.at(j) = Poly::constant(ambient, Rat(1));
  return Derivation{ambient, std::move(coeffs)};
}

Poly apply_derivation(const Derivation& D, const Poly& f) {
  if (!same_ambient(D.ambient, f.ambient()))
    throw StructuralError("apply_derivation: ring mismatch");
  Poly out = Poly::zero(f.ambient());
  for (size_t j = 0; j < D.coeffs.size(); ++j) {
    if (D.coeffs[j].is_zero()) continue;
    out = out + D.coeffs[j] * partial(f, j);
  }
  return out;
}

Derivation conjugate(const Derivation& D, const CoordChange& C) {
  if (!same_ambient(D.ambient, C.source))
    throw StructuralError("conjugate: derivation not in the source ring");
  if (!C.inverse_images)
    throw StructuralError("conjugate: change must carry an exact inverse");
  // The new coordinate functions, expressed in current coordinates, are the
  // inverse images.  The conjugated field has coefficient D(new_k) for
  // d/dnew_k, rewritten into new coordinates by the forward substitution.
  std::vector<Poly> coeffs;
  coeffs.reserve(C.target->size());
  for (const auto& new_coord : *C.inverse_images)
    coeffs.push_back(substitute(apply_derivation(D, new_coord), C));
  return Derivation{C.target, std::move(coeffs)};
}

}  // namespace wres
