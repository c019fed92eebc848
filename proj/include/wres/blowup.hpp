#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wres/invariant.hpp"

namespace wres {

// An admissible weighted center: block variables with coprime integer
// weights, strictly decreasing, in the coordinates of the final filtration.
struct Center {
  Ambient ambient;
  std::vector<std::vector<size_t>> block_vars;  // parallel to weights
  std::vector<Int> weights;                     // a^0 > a^1 > ... >= 1, coprime
  Int threshold;                                // d * a^0
};

// Clears the final filtration weights of a terminated invariant computation
// to coprime integers.  Residual variables never enter the center.
// ContractError if the computation ended in UnitIdeal.
Center make_center(const InvariantResult& result);

// One affine chart of the smoothed weighted blow-up, centered at a chart
// variable x_ij (block i, member j): x_ij = u^{a_i}, every other center
// variable x_kl = u^{a_k} * x_kl', residual variables untouched.  The chart
// carries the residual action of the cyclic group of order a_i with the
// listed weights on the new coordinates.
struct Chart {
  Ambient parent;
  Ambient variables;       // u first, then primed center vars, then residual
  size_t center_block = 0;
  size_t center_member = 0;
  std::string chart_var;
  CoordChange substitution;  // parent ring -> chart ring (no inverse)
  Int group_order;
  std::vector<Int> action_weights;  // one per chart variable
  std::vector<std::pair<std::string, Int>> exceptional_history;
};

// All charts of the blow-up along `center`, in block-then-member order.
std::vector<Chart> weighted_blowup(const Center& center);

enum class TransformMode {
  Controlled,  // divide every generator by u^threshold exactly
  Proper       // divide each generator by its exact u-order
};

struct Transformed {
  std::vector<Poly> gens;        // in chart coordinates, after division
  std::vector<Int> u_divided;    // u-exponent divided out, per generator
};

// Pulls the generators back to the chart and divides out the exceptional
// factor.  In controlled mode a generator of u-order below the threshold is
// a ContractError (the center was not admissible for this ideal).  Records
// the divided multiplicity in the chart's exceptional history.
Transformed controlled_transform(const std::vector<Poly>& gens, Chart& chart,
                                 const Center& center,
                                 TransformMode mode = TransformMode::Controlled);

// Restriction to the exceptional divisor u = 0.
std::vector<Poly> exceptional_restriction(const std::vector<Poly>& transformed,
                                          const Chart& chart);

}  // namespace wres
