#pragma once

#include <optional>
#include <vector>

#include "wres/coordchange.hpp"
#include "wres/poly.hpp"

namespace wres {

// One weight class of a filtration: the listed variables all carry `weight`.
struct Block {
  std::vector<size_t> vars;  // ambient variable indices, ascending
  Rat weight;                // > 0
};

// A weighted filtration of the ambient ring.  Blocks are listed with
// strictly decreasing weights; every variable not in a block is residual
// and carries implicit weight 1.  `coord_change` is the cumulative
// generator-updating substitution from the original coordinates to the
// coordinates the blocks refer to (identity when none was needed).
struct WFiltration {
  Ambient ambient;
  std::vector<Block> blocks;
  std::vector<size_t> residual;  // ascending
  CoordChange coord_change;
};

// Validating constructor: blocks and residual must partition the ambient
// variables, block weights must be positive and strictly decreasing, and
// the coordinate change (identity if omitted) must target `ambient`.
WFiltration make_filtration(const Ambient& ambient, std::vector<Block> blocks,
                            std::vector<size_t> residual);
WFiltration make_filtration(const Ambient& ambient, std::vector<Block> blocks,
                            std::vector<size_t> residual,
                            CoordChange coord_change);

// The filtration with no blocks: every variable residual at weight 1.
WFiltration trivial_filtration(const Ambient& ambient);

// Per-variable weight vector (block weight, or 1 for residual variables).
std::vector<Rat> variable_weights(const WFiltration& F);

// Same blocks with every block weight multiplied by H (> 1 keeps the
// strict-decrease and >-1 constraints; residual weight stays 1).
WFiltration scaled(const WFiltration& F, const Rat& H);

// Minimum over the monomials of f of the weighted degree; nullopt (= +inf)
// for the zero polynomial.
std::optional<Rat> weighted_order(const Poly& f, const WFiltration& F);

// Order of the ideal at the origin: minimum total degree of a nonzero term
// over all generators.  nullopt iff every generator is zero.  The list
// itself must be nonempty (StructuralError).
std::optional<long> ideal_multiplicity(const std::vector<Poly>& gens);

// Sum of the terms of f of weighted degree exactly `threshold`.  Requires
// weighted_order(f) >= threshold (ContractError otherwise); the result is
// zero iff the order is strictly larger.
Poly initial_form(const Poly& f, const WFiltration& F, const Rat& threshold);

// All monomials of weighted degree exactly q, in the canonical (graded-lex)
// monomial order.  Empty if q is not a sum of variable weights.
std::vector<Mono> graded_piece_basis(const WFiltration& F, const Rat& q);

// One admissible scaling parameter together with its lexicographically
// smallest witness: H * (sum_i g^i * alpha_i) + beta = H * g^0 * d with
// integer alpha_i >= 0, beta >= 1, and H > 1.
struct ThetaSolution {
  Rat H;
  std::vector<long> witness_alpha;  // one entry per block
  long witness_beta = 0;
};

// All admissible parameters with 1 < H <= upto, ascending, deduplicated;
// each carries the smallest witness (alpha, beta) in lexicographic order.
// Requires at least one block (ContractError).
std::vector<ThetaSolution> theta_enumerate(const WFiltration& F, long d,
                                           const Rat& upto);

// Smallest admissible parameter strictly greater than `after` (and > 1).
// Always exists because beta is unbounded.
ThetaSolution theta_successor(const WFiltration& F, long d, const Rat& after);

}  // namespace wres
