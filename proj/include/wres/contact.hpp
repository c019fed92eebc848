#pragma once

#include <vector>

#include "wres/derivation.hpp"
#include "wres/filtration.hpp"

namespace wres {

// A finite-dimensional space of weight-homogeneous vector fields of a fixed
// negative weight with respect to a filtration.  `basis` is echelonized
// deterministically (one field per free column of the defining linear
// system, ascending), so equal inputs give identical bases.
struct DerivationModule {
  std::vector<Derivation> basis;
  Rat weight;  // the common weight (negative: -b)
  WFiltration filtration;
};

// All weight -b vector fields D = sum c * mu * d/dx_j (mu a monomial with
// wt(mu) - wt(x_j) = -b) annihilating every element of V.  Every element of
// V must be weight-homogeneous (ContractError otherwise); b must be positive.
DerivationModule negative_derivations(const std::vector<Poly>& V,
                                      const WFiltration& F, const Rat& b);

// The annihilator module in the critical weight -a0 (a0 = minimal variable
// weight), after verifying that every other realizable negative weight
// carries no annihilating fields at all (DiagnosticError if one does).
// If `checked_weights` is non-null it receives the number of non-critical
// realizable weights that were verified to vanish.
DerivationModule full_contact_module(const std::vector<Poly>& V,
                                     const WFiltration& F,
                                     long* checked_weights = nullptr);

// Indices (ascending) of the minimal-weight variables NOT hit by the
// projection of the module onto constant coefficients: the complement of
// the pivot set of the projection matrix.  These span the new block.
std::vector<size_t> annihilator_block(const DerivationModule& L);

// Straightens a single field with nonzero projection (ContractError if the
// constant part of every minimal-weight coefficient vanishes) to a pure
// coordinate derivative.  Returns the forward coordinate change sigma whose
// images are the new coordinate functions written in the old coordinates;
// generators are updated with substitute(f, sigma.inverted()).
CoordChange straighten(const Derivation& D, const WFiltration& F);

struct StraightenAllResult {
  CoordChange change;           // forward, as in straighten()
  std::vector<size_t> y_vars;   // pivot minimal-weight variables, ascending
  std::vector<size_t> z_vars;   // non-pivot minimal-weight variables, ascending
};

// Straightens the whole module simultaneously: after the change, the i-th
// basis field is exactly d/d y_i for distinct minimal-weight coordinates
// y_i, and z_vars lists the minimal-weight coordinates not used as pivots.
// Asserts that the projection onto constant coefficients is injective and
// that the straightened fields commute (DiagnosticError otherwise).
StraightenAllResult straighten_all(const DerivationModule& L);

}  // namespace wres
