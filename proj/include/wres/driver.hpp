#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wres/blowup.hpp"
#include "wres/errors.hpp"

namespace wres {

enum class NodeStatus {
  Active,     // still carries a nontrivial invariant; will be expanded
  Principal,  // ideal is a unit multiple of an exceptional monomial
  Smooth,     // hypersurface transform is smooth at the chart origin
  Pruned      // reserved for future chart-selection strategies; never set
};

std::string status_name(NodeStatus s);

struct TreeNode {
  int id = 0;
  int parent = -1;  // -1 at the root
  int round = 0;
  std::optional<Chart> chart;  // absent at the root
  Ambient ambient;
  std::vector<Poly> gens;
  std::vector<std::string> exceptional;  // live exceptional variable names
  std::optional<InvariantResult> inv;    // at the chart origin
  NodeStatus status = NodeStatus::Active;
};

struct ChartTree {
  std::vector<TreeNode> nodes;
  int rounds = 0;
};

struct DriverOptions {
  int max_rounds = 10;
  TransformMode mode = TransformMode::Controlled;
  // Extra candidate points (in root coordinates) offered to the
  // maximal-invariant search before each expansion; the chart origin is
  // always a candidate.
  std::vector<std::vector<Rat>> candidate_points;
  InvariantOptions invariant;
};

// Raised when the round budget runs out; carries the tree built so far.
class RoundsExhausted : public ResourceError {
 public:
  RoundsExhausted(const std::string& what, ChartTree t, std::string part)
      : ResourceError(what, std::move(part)), tree(std::move(t)) {}
  ChartTree tree;
};

// True when the ideal is generated, up to a unit at the origin, by a single
// monomial in the listed exceptional variables (the empty monomial counts:
// a generator that is a unit at the origin qualifies).
bool is_principal(const std::vector<Poly>& gens,
                  const std::vector<std::string>& exceptional,
                  const Ambient& ambient);

// Iterated center / blow-up / controlled-transform loop until every leaf is
// Principal.  Node ids are breadth-first and chart-ordered, so reruns give
// identical trees.  Every Active child's invariant is verified to drop
// strictly below its parent's (DiagnosticError otherwise); exceeding
// `max_rounds` raises RoundsExhausted with the partial tree attached.
ChartTree principalize(const std::vector<Poly>& gens, const Ambient& ambient,
                       const DriverOptions& opts = {});

struct DropCheck {
  int parent;
  int child;
  std::vector<Rat> point;  // child-chart coordinates; empty = chart origin
  int cmp;                 // lex_compare(child invariant, parent invariant)
};

struct DropReport {
  std::vector<DropCheck> checks;
  size_t edges = 0;
  bool all_ok = true;
};

// Re-derives the strict-drop statement edge by edge: at the child origin
// and at each supplied sample point (full coordinate vectors in the child
// chart; the exceptional coordinate u must be 0, InputError otherwise) the
// child invariant is compared against the parent's.  Nothing is assumed
// from the construction; every comparison is recomputed and reported.
DropReport verify_drop(const ChartTree& tree,
                       const std::vector<std::vector<Rat>>& sample_points = {},
                       const InvariantOptions& opts = {});

// Resolves a reduced hypersurface by iterated proper transforms: leaves
// become Smooth when the transform is a unit or has a nonvanishing first
// derivative at the chart origin.  Non-reduced input is rejected
// (InputError) via a squarefree probe along random rational lines.
ChartTree resolve_hypersurface(const Poly& f, const DriverOptions& opts = {});

// Indices (ascending) of the candidate points with lexicographically
// maximal invariant.  Points are full coordinate vectors in the given ring.
std::vector<size_t> max_invariant_points(
    const std::vector<Poly>& gens, const Ambient& ambient,
    const std::vector<std::vector<Rat>>& candidates,
    const InvariantOptions& opts = {});

}  // namespace wres
