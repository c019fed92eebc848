#include "wres/coordchange.hpp"

#include <string>

#include "wres/errors.hpp"

namespace wres {

namespace {

Poly truncate_above(const Poly& f, int max_degree) {
  Poly out = Poly::zero(f.ambient());
  for (const auto& [mono, coef] : f.terms())
    if ((int)mono.degree() <= max_degree) out.add_term(mono, coef);
  return out;
}

bool is_identity_images(const std::vector<Poly>& images,
                        const Ambient& ambient) {
  for (size_t j = 0; j < images.size(); ++j)
    if (!(images[j] == Poly::variable(ambient, j))) return false;
  return true;
}

void check_images(const Ambient& source, const Ambient& target,
                  const std::vector<Poly>& images, const char* what) {
  if (images.size() != source->size())
    throw StructuralError(std::string(what) +
                          ": one image required per source variable");
  for (const auto& g : images)
    if (!same_ambient(g.ambient(), target))
      throw StructuralError(std::string(what) +
                            ": image lives in the wrong ring");
}

}  // namespace

CoordChange CoordChange::inverted() const {
  if (!inverse_images)
    throw StructuralError("inverted: no exact inverse recorded");
  return CoordChange{target, source, *inverse_images, images};
}

CoordChange coord_identity(const Ambient& ambient) {
  std::vector<Poly> images;
  images.reserve(ambient->size());
  for (size_t j = 0; j < ambient->size(); ++j)
    images.push_back(Poly::variable(ambient, j));
  return CoordChange{ambient, ambient, images, images};
}

CoordChange coord_linear(const Ambient& source, const Ambient& target,
                         const QMatrix& M) {
  const size_t n = source->size();
  if (target->size() != n || M.size() != n)
    throw StructuralError("coord_linear: square matrix over equal-size rings");
  QMatrix Minv = invert(M);  // throws if singular
  std::vector<Poly> images, inv_images;
  for (size_t j = 0; j < n; ++j) {
    Poly g = Poly::zero(target);
    Poly h = Poly::zero(source);
    for (size_t k = 0; k < n; ++k) {
      if (M[j][k] != 0) g = g + M[j][k] * Poly::variable(target, k);
      if (Minv[j][k] != 0) h = h + Minv[j][k] * Poly::variable(source, k);
    }
    images.push_back(std::move(g));
    inv_images.push_back(std::move(h));
  }
  return CoordChange{source, target, std::move(images), std::move(inv_images)};
}

CoordChange coord_translation(const Ambient& ambient,
                              const std::vector<Rat>& point) {
  if (point.size() != ambient->size())
    throw StructuralError("coord_translation: one offset per variable");
  std::vector<Poly> images, inv_images;
  for (size_t j = 0; j < ambient->size(); ++j) {
    images.push_back(Poly::variable(ambient, j) +
                     Poly::constant(ambient, point[j]));
    inv_images.push_back(Poly::variable(ambient, j) -
                         Poly::constant(ambient, point[j]));
  }
  return CoordChange{ambient, ambient, std::move(images),
                     std::move(inv_images)};
}

CoordChange coord_from_images(const Ambient& source, const Ambient& target,
                              std::vector<Poly> images,
                              std::optional<std::vector<Poly>> inverse_images) {
  check_images(source, target, images, "coord_from_images");
  CoordChange C{source, target, std::move(images), std::nullopt};
  if (inverse_images) {
    check_images(target, source, *inverse_images, "coord_from_images inverse");
    CoordChange D{target, source, *inverse_images, std::nullopt};
    if (!is_identity_images(compose(C, D).images, source) ||
        !is_identity_images(compose(D, C).images, target))
      throw StructuralError(
          "coord_from_images: claimed inverse does not invert the change");
    C.inverse_images = std::move(*inverse_images);
  }
  return C;
}

Poly substitute(const Poly& f, const CoordChange& C) {
  if (!same_ambient(f.ambient(), C.source))
    throw StructuralError("substitute: polynomial not in the source ring");
  Poly out = Poly::zero(C.target);
  // cache image powers per variable to avoid recomputing across terms
  std::vector<std::vector<Poly>> powers(C.images.size());
  for (const auto& [mono, coef] : f.terms()) {
    Poly term = Poly::constant(C.target, coef);
    for (size_t j = 0; j < mono.exps.size(); ++j) {
      uint32_t e = mono.exps[j];
      if (e == 0) continue;
      auto& cache = powers[j];
      if (cache.empty()) cache.push_back(Poly::constant(C.target, Rat(1)));
      while (cache.size() <= e) cache.push_back(cache.back() * C.images[j]);
      term = term * cache[e];
    }
    out = out + term;
  }
  return out;
}

CoordChange compose(const CoordChange& A, const CoordChange& B) {
  if (!same_ambient(A.target, B.source))
    throw StructuralError("compose: inner rings do not match");
  std::vector<Poly> images;
  images.reserve(A.images.size());
  for (const auto& g : A.images) images.push_back(substitute(g, B));
  std::optional<std::vector<Poly>> inv;
  if (A.inverse_images && B.inverse_images) {
    CoordChange Ainv = A.inverted();
    std::vector<Poly> back;
    back.reserve(B.inverse_images->size());
    for (const auto& h : *B.inverse_images)
      back.push_back(substitute(h, Ainv));
    inv = std::move(back);
  }
  return CoordChange{A.source, B.target, std::move(images), std::move(inv)};
}

CoordChange inverse_of(const CoordChange& C, int max_degree) {
  const size_t n = C.source->size();
  if (C.target->size() != n)
    throw StructuralError("inverse_of: rings must have equal size");
  if (max_degree < 1)
    throw StructuralError("inverse_of: degree bound must be at least 1");
  // split each image into constant + linear + higher
  QMatrix L(n, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> c(n, Rat(0));
  for (size_t j = 0; j < n; ++j) {
    c[j] = C.images[j].constant_term();
    for (size_t k = 0; k < n; ++k) {
      Mono unit;
      unit.exps.assign(n, 0);
      unit.exps[k] = 1;
      L[j][k] = C.images[j].coeff(unit);
    }
  }
  QMatrix M = invert(L);  // throws StructuralError when the linear part drops rank

  // start from the exact inverse of the affine part:
  //   psi_k = sum_j M[k][j] * (x_j - c_j)
  std::vector<Poly> psi(n, Poly::zero(C.source));
  for (size_t k = 0; k < n; ++k)
    for (size_t j = 0; j < n; ++j)
      if (M[k][j] != 0)
        psi[k] = psi[k] + M[k][j] * (Poly::variable(C.source, j) -
                                     Poly::constant(C.source, c[j]));

  // each pass pushes the lowest error degree up by at least one
  bool exact = false;
  for (int pass = 0; pass <= max_degree; ++pass) {
    CoordChange Psi{C.target, C.source, psi, std::nullopt};
    std::vector<Poly> err(n, Poly::zero(C.source));
    bool any = false;
    for (size_t j = 0; j < n; ++j) {
      err[j] = truncate_above(
          Poly::variable(C.source, j) - substitute(C.images[j], Psi),
          max_degree);
      if (!err[j].is_zero()) any = true;
    }
    if (!any) {
      exact = true;
      break;
    }
    for (size_t k = 0; k < n; ++k) {
      Poly delta = Poly::zero(C.source);
      for (size_t j = 0; j < n; ++j)
        if (M[k][j] != 0) delta = delta + M[k][j] * err[j];
      psi[k] = truncate_above(psi[k] + delta, max_degree);
    }
  }

  CoordChange out{C.target, C.source, std::move(psi), std::nullopt};
  if (exact) {
    // verify the exactness claim in both directions before recording it
    CoordChange candidate =
        coord_from_images(C.target, C.source, out.images, C.images);
    return candidate;
  }
  return out;
}

}  // namespace wres
