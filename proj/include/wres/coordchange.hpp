#pragma once

#include <optional>
#include <vector>

#include "wres/linalg.hpp"
#include "wres/poly.hpp"

namespace wres {

// A polynomial substitution between ambient rings.
//
// `images[j]` lives in the target ring and is what source variable j is
// replaced by: substitute(f, C) maps Poly(source) -> Poly(target).
//
// When the substitution is invertible and the inverse is known exactly,
// `inverse_images[k]` (one per target variable, living in the source ring)
// describes the reverse substitution.  Changes produced inside the engine
// (translations, invertible linear maps, triangular shear steps) always carry
// exact inverses; for changes supplied from outside, `inverse_of` computes a
// degree-truncated inverse by Newton iteration.
struct CoordChange {
  Ambient source;
  Ambient target;
  std::vector<Poly> images;
  std::optional<std::vector<Poly>> inverse_images;

  // Swaps the two directions.  Requires inverse_images.
  CoordChange inverted() const;
};

// Identity substitution on `ambient`.
CoordChange coord_identity(const Ambient& ambient);

// Linear substitution: source variable j maps to sum_k M[j][k] * target_k.
// M must be square and invertible; the exact inverse is stored.
CoordChange coord_linear(const Ambient& source, const Ambient& target,
                         const QMatrix& M);

// Translation x_j -> x_j + point[j] on a single ambient.
CoordChange coord_translation(const Ambient& ambient,
                              const std::vector<Rat>& point);

// General constructor with validation of sizes and ambients.  If
// `inverse_images` is given, both composite directions are checked to be the
// identity.
CoordChange coord_from_images(const Ambient& source, const Ambient& target,
                              std::vector<Poly> images,
                              std::optional<std::vector<Poly>> inverse_images =
                                  std::nullopt);

// Replaces every source variable in f by its image.  f must live in C.source.
Poly substitute(const Poly& f, const CoordChange& C);

// Substitution that applies A first and then B (A.target must be B.source).
// Carries an exact inverse when both inputs do.
CoordChange compose(const CoordChange& A, const CoordChange& B);

// Degree-truncated inverse of C by Newton iteration.  C must map between
// ambients of equal size and have an invertible linear part; the result D
// satisfies compose(C, D) == identity modulo terms of degree > max_degree.
// If the iteration closes exactly, the returned change also stores C's images
// as its own exact inverse.
CoordChange inverse_of(const CoordChange& C, int max_degree);

}  // namespace wres
