#include "wres/contact.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "wres/errors.hpp"
#include "wres/linalg.hpp"

namespace wres {

namespace {

Rat min_variable_weight(const WFiltration& F) {
  std::vector<Rat> w = variable_weights(F);
  Rat a0 = w[0];
  for (const Rat& x : w)
    if (x < a0) a0 = x;
  return a0;
}

// Ascending indices of the variables of minimal weight.
std::vector<size_t> minimal_weight_vars(const WFiltration& F) {
  std::vector<Rat> w = variable_weights(F);
  Rat a0 = min_variable_weight(F);
  std::vector<size_t> M;
  for (size_t j = 0; j < w.size(); ++j)
    if (w[j] == a0) M.push_back(j);
  return M;
}

// All weighted degrees of monomials that are <= cap (finite since every
// variable weight is positive).
std::set<Rat> achievable_weights(const WFiltration& F, const Rat& cap) {
  std::vector<Rat> w = variable_weights(F);
  std::set<Rat> out;
  auto rec = [&](auto&& self, size_t j, const Rat& acc) -> void {
    if (j == w.size()) {
      out.insert(acc);
      return;
    }
    Rat cur = acc;
    while (cur <= cap) {
      self(self, j + 1, cur);
      cur += w[j];
    }
  };
  rec(rec, 0, Rat(0));
  return out;
}

bool is_weight_homogeneous(const Poly& f, const std::vector<Rat>& w) {
  std::optional<Rat> common;
  for (const auto& [mono, coeff] : f.terms()) {
    (void)coeff;
    Rat v(0);
    for (size_t j = 0; j < w.size(); ++j)
      if (mono.exps[j]) {
        Rat t = w[j] * (long)mono.exps[j];
        v += t;
      }
    if (!common)
      common = v;
    else if (*common != v)
      return false;
  }
  return true;
}

}  // namespace

DerivationModule negative_derivations(const std::vector<Poly>& V,
                                      const WFiltration& F, const Rat& b) {
  if (b <= 0) throw ContractError("negative_derivations: weight must be positive");
  std::vector<Rat> w = variable_weights(F);
  std::vector<const Poly*> targets;
  for (const Poly& f : V) {
    if (!same_ambient(f.ambient(), F.ambient))
      throw StructuralError("negative_derivations: element in a different ring");
    if (f.is_zero()) continue;
    if (!is_weight_homogeneous(f, w))
      throw ContractError("negative_derivations: element is not weight-homogeneous");
    targets.push_back(&f);
  }
  if (targets.empty())
    throw ContractError("negative_derivations: no nonzero elements to annihilate");

  // Candidate fields mu * d/dx_j with wt(mu) = w_j - b, ordered by variable
  // then by the canonical monomial order: a fixed basis of the ambient space
  // of weight -b fields.
  struct Candidate {
    size_t var;
    Mono mu;
  };
  std::vector<Candidate> cand;
  for (size_t j = 0; j < w.size(); ++j) {
    Rat q = w[j] - b;
    if (q < 0) continue;
    for (const Mono& mu : graded_piece_basis(F, q)) cand.push_back({j, mu});
  }
  DerivationModule out;
  out.weight = -b;
  out.filtration = F;
  if (cand.empty()) return out;

  // Linear system: one equation per monomial appearing in any D(f).
  std::map<Mono, size_t, GrlexLess> eq_index;
  std::vector<std::vector<Rat>> cols(cand.size());
  size_t neq = 0;
  for (size_t c = 0; c < cand.size(); ++c) {
    for (const Poly* f : targets) {
      Poly df = partial(*f, (int)cand[c].var);
      if (df.is_zero()) continue;
      Poly contrib = Poly::monomial(F.ambient, cand[c].mu, Rat(1)) * df;
      for (const auto& [mono, coeff] : contrib.terms()) {
        auto [it, fresh] = eq_index.emplace(mono, neq);
        if (fresh) ++neq;
        auto& col = cols[c];
        if (col.size() < neq) col.resize(neq, Rat(0));
        col[it->second] += coeff;
      }
    }
  }
  QMatrix A(neq, std::vector<Rat>(cand.size(), Rat(0)));
  for (size_t c = 0; c < cand.size(); ++c)
    for (size_t r = 0; r < cols[c].size(); ++r) A[r][c] = cols[c][r];

  QMatrix sol = neq == 0 ? QMatrix() : kernel_basis(A);
  if (neq == 0) {
    // No constraints: every candidate field annihilates V.
    sol.assign(cand.size(), std::vector<Rat>(cand.size(), Rat(0)));
    for (size_t c = 0; c < cand.size(); ++c) sol[c][c] = Rat(1);
  }
  for (const auto& vec : sol) {
    std::vector<Poly> coeffs;
    coeffs.reserve(w.size());
    for (size_t j = 0; j < w.size(); ++j) coeffs.push_back(Poly::zero(F.ambient));
    for (size_t c = 0; c < cand.size(); ++c)
      if (vec[c] != 0)
        coeffs[cand[c].var] =
            coeffs[cand[c].var] + Poly::monomial(F.ambient, cand[c].mu, vec[c]);
    out.basis.push_back(make_derivation(F.ambient, std::move(coeffs)));
  }
  return out;
}

DerivationModule full_contact_module(const std::vector<Poly>& V,
                                     const WFiltration& F,
                                     long* checked_weights) {
  std::vector<Rat> w = variable_weights(F);
  Rat a0 = min_variable_weight(F);
  Rat wmax = w[0];
  for (const Rat& x : w)
    if (x > wmax) wmax = x;

  // Realizable negative weights: b = w_j - q over achievable monomial
  // weights q < w_j.  Any such module other than the critical one must be
  // zero; a violation means the inductive setup is broken.
  std::set<Rat> bs;
  std::set<Rat> qs = achievable_weights(F, wmax);
  for (const Rat& wj : w)
    for (const Rat& q : qs) {
      Rat b = wj - q;
      if (b > 0) bs.insert(b);
    }
  long checked = 0;
  for (const Rat& b : bs) {
    if (b == a0) continue;
    DerivationModule Mb = negative_derivations(V, F, b);
    ++checked;
    if (!Mb.basis.empty())
      throw DiagnosticError(
          "contact module: nonzero annihilating fields at non-critical weight " +
          rat_str(b));
  }
  if (checked_weights) *checked_weights = checked;
  return negative_derivations(V, F, a0);
}

std::vector<size_t> annihilator_block(const DerivationModule& L) {
  std::vector<size_t> M = minimal_weight_vars(L.filtration);
  if (L.basis.empty()) return M;
  QMatrix P(L.basis.size(), std::vector<Rat>(M.size(), Rat(0)));
  for (size_t k = 0; k < L.basis.size(); ++k)
    for (size_t c = 0; c < M.size(); ++c)
      P[k][c] = L.basis[k].coeffs[M[c]].constant_term();
  std::vector<int> piv = rref(P);
  std::vector<size_t> Z;
  size_t pi = 0;
  for (size_t c = 0; c < M.size(); ++c) {
    if (pi < piv.size() && (size_t)piv[pi] == c)
      ++pi;
    else
      Z.push_back(M[c]);
  }
  return Z;
}

namespace {

bool is_unit_field(const Derivation& D, size_t p) {
  for (size_t j = 0; j < D.coeffs.size(); ++j) {
    if (j == p) {
      if (!(D.coeffs[j] == Poly::constant(D.ambient, Rat(1)))) return false;
    } else if (!D.coeffs[j].is_zero()) {
      return false;
    }
  }
  return true;
}

// Shear x_j -> x_j + G as a forward change (G must not involve x_j).
CoordChange shear_change(const Ambient& amb, size_t j, const Poly& G) {
  std::vector<Poly> images, inverse;
  for (size_t k = 0; k < amb->size(); ++k) {
    images.push_back(Poly::variable(amb, (int)k));
    inverse.push_back(Poly::variable(amb, (int)k));
  }
  images[j] = images[j] + G;
  inverse[j] = inverse[j] - G;
  return coord_from_images(amb, amb, std::move(images), std::move(inverse));
}

// Kills the coefficients of `fields[k]` on every non-minimal-weight variable
// by shears along its pivot, lightest target first, conjugating every field
// through each shear.  Appends the generator-direction changes to tau.
void shear_out_field(std::vector<Derivation>& fields, size_t k, size_t pivot,
                     const WFiltration& F, const std::vector<size_t>& M,
                     CoordChange& tau) {
  std::vector<Rat> w = variable_weights(F);
  std::vector<size_t> targets;
  for (size_t j = 0; j < w.size(); ++j)
    if (std::find(M.begin(), M.end(), j) == M.end()) targets.push_back(j);
  std::sort(targets.begin(), targets.end(), [&](size_t a, size_t b) {
    if (w[a] != w[b]) return w[a] < w[b];
    return a < b;
  });
  for (size_t j : targets) {
    Poly lambda = fields[k].coeffs[j];
    if (lambda.is_zero()) continue;
    Poly G = -integrate_in_var(lambda, (int)pivot);
    CoordChange sigma = shear_change(F.ambient, j, G);
    CoordChange step = sigma.inverted();
    for (Derivation& E : fields) E = conjugate(E, step);
    tau = compose(tau, step);
  }
}

}  // namespace

CoordChange straighten(const Derivation& D, const WFiltration& F) {
  if (!same_ambient(D.ambient, F.ambient))
    throw StructuralError("straighten: field lives in a different ring");
  std::vector<size_t> M = minimal_weight_vars(F);
  // Pivot: smallest-index minimal-weight coordinate with nonzero constant
  // coefficient; its coefficient is normalized to 1.
  std::optional<size_t> pivot;
  Rat c;
  for (size_t j : M) {
    Rat v = D.coeffs[j].constant_term();
    if (v != 0) {
      pivot = j;
      c = v;
      break;
    }
  }
  if (!pivot)
    throw ContractError("straighten: field projects to zero on minimal-weight coordinates");
  std::vector<Derivation> fields{D};
  CoordChange tau = coord_identity(F.ambient);
  // Normalize the pivot coefficient through the change itself (new pivot
  // coordinate = old / c), so the original field — not a rescaled copy —
  // straightens to the unit coordinate derivative.
  if (c != 1) {
    std::vector<Poly> images, inverse;
    for (size_t j = 0; j < F.ambient->size(); ++j) {
      images.push_back(Poly::variable(F.ambient, (int)j));
      inverse.push_back(Poly::variable(F.ambient, (int)j));
    }
    images[*pivot] = images[*pivot] * c;
    inverse[*pivot] = inverse[*pivot] * (Rat(1) / c);
    CoordChange step = coord_from_images(F.ambient, F.ambient,
                                         std::move(images), std::move(inverse));
    fields[0] = conjugate(fields[0], step);
    tau = compose(tau, step);
  }
  // Absorb constant components on the other minimal-weight coordinates by a
  // linear change w_q = y_q - lambda_q * y_pivot.
  std::vector<Poly> images, inverse;
  bool linear_needed = false;
  for (size_t j = 0; j < F.ambient->size(); ++j) {
    images.push_back(Poly::variable(F.ambient, (int)j));
    inverse.push_back(Poly::variable(F.ambient, (int)j));
  }
  Poly yp = Poly::variable(F.ambient, (int)*pivot);
  for (size_t q : M) {
    if (q == *pivot) continue;
    Rat lam = fields[0].coeffs[q].constant_term();
    if (lam == 0) continue;
    linear_needed = true;
    images[q] = images[q] - lam * yp;
    inverse[q] = inverse[q] + lam * yp;
  }
  if (linear_needed) {
    CoordChange lin = coord_from_images(F.ambient, F.ambient, std::move(images),
                                        std::move(inverse));
    CoordChange step = lin.inverted();
    fields[0] = conjugate(fields[0], step);
    tau = compose(tau, step);
  }
  shear_out_field(fields, 0, *pivot, F, M, tau);
  if (!is_unit_field(fields[0], *pivot))
    throw DiagnosticError("straighten: field did not reduce to a coordinate derivative");
  return tau.inverted();
}

StraightenAllResult straighten_all(const DerivationModule& L) {
  const WFiltration& F = L.filtration;
  std::vector<size_t> M = minimal_weight_vars(F);
  StraightenAllResult res;
  res.change = coord_identity(F.ambient);
  if (L.basis.empty()) {
    res.z_vars = M;
    return res;
  }
  size_t k = L.basis.size();

  // Echelonize the projection onto constant minimal-weight coefficients,
  // carrying the row operations on an identity block so the same
  // combinations can be applied to the fields themselves.
  QMatrix aug(k, std::vector<Rat>(M.size() + k, Rat(0)));
  for (size_t r = 0; r < k; ++r) {
    for (size_t c = 0; c < M.size(); ++c)
      aug[r][c] = L.basis[r].coeffs[M[c]].constant_term();
    aug[r][M.size() + r] = Rat(1);
  }
  std::vector<int> piv = rref(aug);
  size_t lead = 0;
  while (lead < piv.size() && (size_t)piv[lead] < M.size()) ++lead;
  if (lead != k)
    throw DiagnosticError(
        "straighten_all: projection onto minimal-weight coefficients is not injective");

  std::vector<size_t> pivots;  // positions within M
  for (size_t r = 0; r < k; ++r) pivots.push_back((size_t)piv[r]);
  for (size_t c = 0; c < M.size(); ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
      res.z_vars.push_back(M[c]);
  for (size_t c : pivots) res.y_vars.push_back(M[c]);

  // Recombine the fields per the row operations.
  std::vector<Derivation> fields;
  for (size_t r = 0; r < k; ++r) {
    std::vector<Poly> coeffs;
    for (size_t j = 0; j < F.ambient->size(); ++j) coeffs.push_back(Poly::zero(F.ambient));
    for (size_t s = 0; s < k; ++s) {
      Rat t = aug[r][M.size() + s];
      if (t == 0) continue;
      for (size_t j = 0; j < F.ambient->size(); ++j)
        coeffs[j] = coeffs[j] + L.basis[s].coeffs[j] * t;
    }
    fields.push_back(make_derivation(F.ambient, std::move(coeffs)));
  }

  CoordChange tau = coord_identity(F.ambient);
  // One linear change absorbs all constant components over the non-pivot
  // minimal-weight coordinates simultaneously.
  bool linear_needed = false;
  std::vector<Poly> images, inverse;
  for (size_t j = 0; j < F.ambient->size(); ++j) {
    images.push_back(Poly::variable(F.ambient, (int)j));
    inverse.push_back(Poly::variable(F.ambient, (int)j));
  }
  for (size_t c = 0; c < M.size(); ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) != pivots.end()) continue;
    for (size_t r = 0; r < k; ++r) {
      Rat lam = aug[r][c];
      if (lam == 0) continue;
      linear_needed = true;
      Poly yp = Poly::variable(F.ambient, (int)M[pivots[r]]);
      images[M[c]] = images[M[c]] - lam * yp;
      inverse[M[c]] = inverse[M[c]] + lam * yp;
    }
  }
  if (linear_needed) {
    CoordChange lin = coord_from_images(F.ambient, F.ambient, std::move(images),
                                        std::move(inverse));
    CoordChange step = lin.inverted();
    for (Derivation& E : fields) E = conjugate(E, step);
    tau = compose(tau, step);
  }

  for (size_t r = 0; r < k; ++r) {
    shear_out_field(fields, r, M[pivots[r]], F, M, tau);
    // Commutativity: straightening one field must leave the previously
    // straightened ones untouched; a violation breaks the simultaneous
    // normalization and is a theory-level alarm, not a user error.
    for (size_t s = 0; s <= r; ++s)
      if (!is_unit_field(fields[s], M[pivots[s]]))
        throw DiagnosticError("straighten_all: straightened fields fail to commute");
  }
  res.change = tau.inverted();
  return res;
}

}  // namespace wres
