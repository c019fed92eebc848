#pragma once

#include <vector>

#include "wres/rat.hpp"

namespace wres {

// Dense exact matrix over Rat, row-major.
using QMatrix = std::vector<std::vector<Rat>>;

// Reduced row-echelon form computed with fraction-free (Bareiss-style)
// forward elimination on denominator-cleared rows, followed by exact
// rational back-substitution.  Pivoting is deterministic: columns left to
// right, first row with a nonzero entry.  Returns the pivot columns.
std::vector<int> rref(QMatrix& m);

int rank(QMatrix m);

// Basis of the right kernel {v : m v = 0}, one vector per free column of
// the RREF, in ascending free-column order; each vector has entry 1 at its
// free column.  Deterministic.
QMatrix kernel_basis(QMatrix m);

// Exact inverse; StructuralError if singular.
QMatrix invert(const QMatrix& m);

QMatrix mat_mul(const QMatrix& a, const QMatrix& b);

}  // namespace wres
