#pragma once

#include <string>
#include <vector>

#include "wres/contact.hpp"
#include "wres/filtration.hpp"

namespace wres {

enum class Termination {
  EarlyZero,        // l_0 = 0: order drops on first contact
  BlocksExhausted,  // a level locked with l_s = 0: residual fully consumed
  Converged,        // scaling parameters exhausted: blocks are final
  UnitIdeal         // some generator is a unit: nothing to measure
};

std::string termination_name(Termination t);

// The local invariant: entries (d, l_0, g_1, l_1, ..., ) zero-padded to
// length 2m.  `used` is the structural prefix length (the entries actually
// produced before padding) and only affects display.
struct Invariant {
  std::vector<Rat> entries;
  size_t used = 0;
  Termination terminated_by = Termination::Converged;
};

// "(2, 1, 3/2, 0)"; appends " [len N]" when zero-padding was elided.
std::string format_invariant(const Invariant& inv);

// -1 / 0 / +1 lexicographically; the entry lists must have equal length.
int lex_compare(const Invariant& a, const Invariant& b);

// D_s for the prefix (d, g_1, ..., g_{s-1}):
//   D_1 = d!,  D_t = (d * g_1...g_{t-1} * D_1...D_{t-1})!
// The factorial argument is always a positive integer (DiagnosticError
// otherwise); arguments above the guard cap raise ResourceError.
Int denominator_bound(const std::vector<Rat>& prefix);

// Entry-wise integer rescaling: d and l entries are copied (already
// integers), the t-th scaling entry g_t is multiplied by D_t computed from
// the preceding entries.  Every product must be an integer (DiagnosticError
// otherwise).  The multipliers depend only on earlier entries, so the map
// preserves lexicographic order.
std::vector<Int> integerize(const Invariant& inv);

// Predicts the invariant of the same ideal placed in m + epsilon variables:
// locate the first zero l_t; if the accompanying scaling entry is nonzero,
// add epsilon to l_0..l_t; if it is zero (t >= 1), add epsilon to
// l_0..l_{t-1}; a fully zero invariant is unchanged.  Entries are re-padded
// to length 2(m + epsilon).
Invariant diff_correction(long epsilon, const Invariant& inv);

struct TraceStep {
  int s;         // level
  Rat H;         // scaling parameter analysed
  bool case_a;   // locked a new block (else: coordinate repair / no-op)
  bool changed;  // a nontrivial coordinate change was applied
};

// One record per locked level: enough to re-check the witness identity
//   H * (sum_i g^i * alpha_i) + beta = H * g^0 * d
// with the block weights g^i active at the event.
struct CaseAWitness {
  int s;
  long d;
  std::vector<Rat> block_weights;
  ThetaSolution sol;
};

struct InvariantOptions {
  long max_theta_steps = 10000;  // per level; exhausting it is a ResourceError
};

struct InvariantResult {
  Invariant invariant;
  WFiltration filtration;  // final; carries the cumulative coordinate change
  std::vector<CaseAWitness> witnesses;
  std::vector<TraceStep> trace;
  long contact_checks = 0;  // non-critical weights verified to carry no fields

  const CoordChange& coord_change() const { return filtration.coord_change; }
};

// Computes the invariant of the ideal spanned by `gens` at the origin of
// the ambient ring.  The zero ideal is rejected (InputError); an ideal
// containing a unit yields the all-zero invariant with Termination::UnitIdeal.
InvariantResult compute_invariant(const std::vector<Poly>& gens,
                                  const Ambient& ambient,
                                  const InvariantOptions& opts = {});

}  // namespace wres
