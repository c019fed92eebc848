#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wres/rat.hpp"

namespace wres {

// An ambient polynomial ring is identified by its ordered list of variable
// names.  Shared immutably; two ambients are the same ring iff the name
// lists are equal.
using Ambient = std::shared_ptr<const std::vector<std::string>>;

Ambient make_ambient(std::vector<std::string> names);
bool same_ambient(const Ambient& a, const Ambient& b);
// Index of `name` in `a`, or -1.
int var_index(const Ambient& a, const std::string& name);

// Exponent vector of a monomial; length always equals the ambient size of
// the polynomial owning it.
struct Mono {
  std::vector<std::uint32_t> exps;

  unsigned long degree() const;
  bool is_unit() const;  // all exponents zero
  bool operator==(const Mono& o) const { return exps == o.exps; }
};

// Graded lexicographic: total degree first, then lexicographic on the
// exponent vector.  This is the canonical term order everywhere.
bool grlex_less(const Mono& a, const Mono& b);

struct GrlexLess {
  bool operator()(const Mono& a, const Mono& b) const { return grlex_less(a, b); }
};

// Sparse multivariate polynomial over Rat with canonically ordered terms.
class Poly {
 public:
  using TermMap = std::map<Mono, Rat, GrlexLess>;

  Poly() = default;  // invalid until given an ambient; prefer factories
  explicit Poly(Ambient amb) : ambient_(std::move(amb)) {}

  static Poly zero(Ambient amb);
  static Poly constant(Ambient amb, const Rat& c);
  static Poly variable(Ambient amb, int j);
  static Poly monomial(Ambient amb, Mono m, const Rat& c);

  const Ambient& ambient() const { return ambient_; }
  int nvars() const { return ambient_ ? (int)ambient_->size() : 0; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  // Total degree; nullopt for the zero polynomial.
  std::optional<unsigned long> degree() const;
  Rat constant_term() const;
  Rat coeff(const Mono& m) const;

  void add_term(const Mono& m, const Rat& c);  // accumulates, drops zeros

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& c) const;
  bool operator==(const Poly& o) const;

  Poly pow(unsigned long e) const;

  // Canonical text form, graded-lex leading term first; parses back
  // identically under the expression grammar.
  std::string str() const;

 private:
  Ambient ambient_;
  TermMap terms_;

  void check_same(const Poly& o) const;
};

Poly operator*(const Rat& c, const Poly& p);

// d/dx_j.
Poly partial(const Poly& f, int j);
// Term-wise antiderivative in x_j; every term of the result is divisible by
// x_j (no constant of integration), so partial(integrate_in_var(f,j),j) == f.
Poly integrate_in_var(const Poly& f, int j);

// Evaluate at a rational point (vector parallel to the ambient).
Rat evaluate(const Poly& f, const std::vector<Rat>& point);

}  // namespace wres
