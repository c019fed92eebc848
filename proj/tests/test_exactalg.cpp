#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "wres/coordchange.hpp"
#include "wres/derivation.hpp"
#include "wres/errors.hpp"
#include "wres/linalg.hpp"
#include "wres/poly.hpp"
#include "wres/rat.hpp"

using namespace wres;
using oracle::P;

TEST_CASE("rational parsing and rendering") {
  CHECK(rat_str(rat_parse("3/2")) == "3/2");
  CHECK(rat_str(rat_parse("-3/2")) == "-3/2");
  CHECK(rat_str(rat_parse("4/2")) == "2");
  CHECK(rat_str(rat_parse("0/7")) == "0");
  CHECK(rat_str(rat_parse("+5")) == "5");
  CHECK(rat_parse("6/4") == Rat(3, 2));
  CHECK_THROWS_AS(rat_parse("1/0"), ParseError);
  CHECK_THROWS_AS(rat_parse(""), ParseError);
  CHECK_THROWS_AS(rat_parse("2.5"), ParseError);
  CHECK_THROWS_AS(rat_parse("a"), ParseError);
  CHECK_THROWS_AS(rat_parse("1/"), ParseError);
}

TEST_CASE("rational helpers") {
  CHECK(rat_is_integer(Rat(4, 2)));
  CHECK_FALSE(rat_is_integer(Rat(3, 2)));
  CHECK(rat_floor(Rat(3, 2)) == 1);
  CHECK(rat_floor(Rat(-3, 2)) == -2);
  CHECK(rat_floor(Rat(4)) == 4);
  CHECK(rat_pow(Rat(2, 3), 3) == Rat(8, 27));
  CHECK(rat_pow(Rat(5), 0) == 1);
  CHECK(int_factorial(0) == 1);
  CHECK(int_factorial(6) == 720);
  CHECK(int_factorial(8) == 40320);
  CHECK(int_lcm(6, 10) == 30);
  CHECK(int_lcm(1, 7) == 7);
}

TEST_CASE("monomial order is graded lexicographic") {
  Mono a{{2, 0}}, b{{0, 3}}, c{{1, 1}};
  CHECK(grlex_less(a, b));        // degree 2 < 3
  CHECK(grlex_less(c, a));        // same degree: (1,1) <lex (2,0)? no —
  // grlex compares degree first, then lex on exponents; (1,1) < (2,0).
  CHECK_FALSE(grlex_less(a, c));
  CHECK_FALSE(grlex_less(a, a));
}

TEST_CASE("polynomial arithmetic identities") {
  Ambient amb = make_ambient({"x", "y", "z"});
  oracle::RatGen gen(11);
  for (int trial = 0; trial < 12; ++trial) {
    Poly f = oracle::random_poly(amb, gen, 4, 3);
    Poly g = oracle::random_poly(amb, gen, 4, 3);
    Poly h = oracle::random_poly(amb, gen, 3, 2);
    CHECK((f + g) * h == f * h + g * h);
    CHECK(f * g == g * f);
    CHECK(f - f == Poly::zero(amb));
    CHECK(f.pow(2) == f * f);
    // Evaluation is a ring homomorphism.
    auto pts = oracle::sample_points(3, gen, 2);
    for (const auto& p : pts) {
      Rat lhs = evaluate(f * g + h, p);
      Rat rhs = evaluate(f, p) * evaluate(g, p) + evaluate(h, p);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("polynomial accessors") {
  Ambient amb = make_ambient({"x", "y"});
  Poly f = P("x^2+3/2*y-7", amb);
  CHECK(f.degree() == 2);
  CHECK(f.constant_term() == -7);
  CHECK(f.coeff(Mono{{0, 1}}) == Rat(3, 2));
  CHECK(f.coeff(Mono{{5, 5}}) == 0);
  CHECK(Poly::zero(amb).is_zero());
  CHECK_FALSE(Poly::zero(amb).degree().has_value());

  Poly g = Poly::zero(amb);
  g.add_term(Mono{{1, 0}}, Rat(2));
  g.add_term(Mono{{1, 0}}, Rat(-2));
  CHECK(g.is_zero());  // accumulating to zero drops the term

  Ambient other = make_ambient({"s", "t"});
  CHECK_THROWS_AS(P("x", amb) + P("s", other), StructuralError);
}

TEST_CASE("canonical text form round-trips and leads with the top term") {
  Ambient amb = make_ambient({"u", "y'"});
  Poly f = P("u^2*y'+y'^3-1/2", amb);
  CHECK(f.str() == "u^2*y' + y'^3 - 1/2");
  CHECK(parse_poly(f.str(), amb) == f);
  CHECK(P("u-u", amb).str() == "0");
  CHECK(P("u", amb).str() == "u");
  CHECK(P("0-u", amb).str() == "-u");
}

TEST_CASE("derivative and antiderivative") {
  Ambient amb = make_ambient({"x", "y"});
  oracle::RatGen gen(23);
  for (int trial = 0; trial < 8; ++trial) {
    Poly f = oracle::random_poly(amb, gen, 5, 4);
    for (int j = 0; j < 2; ++j) {
      CHECK(partial(integrate_in_var(f, j), j) == f);
      // Leibniz rule for the bare partial.
      Poly g = oracle::random_poly(amb, gen, 3, 3);
      CHECK(partial(f * g, j) == partial(f, j) * g + f * partial(g, j));
    }
  }
  CHECK(partial(P("x^2*y", amb), 0) == P("2*x*y", amb));
  CHECK(integrate_in_var(P("3*x^2", amb), 0) == P("x^3", amb));
}

TEST_CASE("rref and kernel against an independent elimination") {
  oracle::RatGen gen(37);
  for (int trial = 0; trial < 20; ++trial) {
    size_t rows = (size_t)gen.small_nat(1, 5), cols = (size_t)gen.small_nat(1, 5);
    QMatrix m(rows, std::vector<Rat>(cols));
    for (auto& row : m)
      for (auto& e : row) e = gen();
    QMatrix copy = m;
    int rk = rank(copy);
    CHECK(rk == oracle::gauss_rank(m));
    QMatrix ker = kernel_basis(m);
    CHECK(ker.size() == cols - (size_t)rk);
    for (const auto& v : ker) CHECK(oracle::in_kernel(m, v));
    // Kernel vectors are echelonized: each has a unit at its free column.
    for (const auto& v : ker) CHECK(std::count(v.begin(), v.end(), Rat(1)) >= 1);
  }
}

TEST_CASE("rref pivots on a known matrix") {
  QMatrix m = {{0, 2, 4}, {1, 1, 1}, {1, 3, 5}};
  std::vector<int> piv = rref(m);
  CHECK(piv == std::vector<int>{0, 1});
  // Row-reduced: identity on pivot columns.
  CHECK(m[0][0] == 1);
  CHECK(m[0][1] == 0);
  CHECK(m[1][1] == 1);
  CHECK(m[2] == std::vector<Rat>{0, 0, 0});
}

TEST_CASE("matrix inverse") {
  QMatrix a = {{1, 2}, {3, Rat(7, 2)}};
  QMatrix inv = invert(a);
  QMatrix id = mat_mul(a, inv);
  CHECK(id == QMatrix{{1, 0}, {0, 1}});
  CHECK(mat_mul(inv, a) == id);
  QMatrix sing = {{1, 2}, {2, 4}};
  CHECK_THROWS_AS(invert(sing), StructuralError);
}

TEST_CASE("translations and linear changes act correctly on points") {
  Ambient amb = make_ambient({"x", "y"});
  oracle::RatGen gen(41);
  CoordChange tr = coord_translation(amb, {Rat(1), Rat(-1, 2)});
  Poly f = P("x^2+y^3", amb);
  auto pts = oracle::sample_points(2, gen, 6);
  CHECK(oracle::substitution_matches(f, tr, pts));
  // Translation by p then by -p is the identity.
  CoordChange back = coord_translation(amb, {Rat(-1), Rat(1, 2)});
  CHECK(substitute(substitute(f, tr), back) == f);
  CHECK(substitute(f, compose(tr, back)) == f);

  QMatrix M = {{1, 2}, {1, 3}};  // unimodular
  CoordChange lin = coord_linear(amb, amb, M);
  CHECK(oracle::substitution_matches(f, lin, pts));
  CHECK(substitute(substitute(f, lin), lin.inverted()) == f);
}

TEST_CASE("composition agrees with sequential substitution") {
  Ambient amb = make_ambient({"x", "y"});
  oracle::RatGen gen(43);
  CoordChange a = coord_translation(amb, {Rat(2), Rat(0)});
  QMatrix M = {{1, 0}, {5, 1}};
  CoordChange b = coord_linear(amb, amb, M);
  for (int trial = 0; trial < 6; ++trial) {
    Poly f = oracle::random_poly(amb, gen, 4, 3);
    CHECK(substitute(f, compose(a, b)) == substitute(substitute(f, a), b));
  }
}

TEST_CASE("coord_from_images validates") {
  Ambient amb = make_ambient({"x", "y"});
  // Wrong image count.
  CHECK_THROWS_AS(coord_from_images(amb, amb, {P("x", amb)}), StructuralError);
  // Claimed inverse that is not one.
  CHECK_THROWS_AS(
      coord_from_images(amb, amb, {P("x+y", amb), P("y", amb)},
                        std::vector<Poly>{P("x", amb), P("y", amb)}),
      StructuralError);
  // A correct unipotent pair passes.
  CoordChange c = coord_from_images(
      amb, amb, {P("x+y^2", amb), P("y", amb)},
      std::vector<Poly>{P("x-y^2", amb), P("y", amb)});
  CHECK(substitute(P("x", amb), compose(c, c.inverted())) == P("x", amb));
}

TEST_CASE("Newton inversion recovers the exact inverse of a shear") {
  Ambient amb = make_ambient({"x", "y"});
  CoordChange c =
      coord_from_images(amb, amb, {P("x+y^2", amb), P("y", amb)});
  CoordChange d = inverse_of(c, 4);
  CHECK(d.images[0] == P("x-y^2", amb));
  CHECK(d.images[1] == P("y", amb));
  // The iteration closed exactly, so both directions now invert.
  CHECK(substitute(substitute(P("x^2+y^3", amb), c), d) == P("x^2+y^3", amb));
}

TEST_CASE("derivations satisfy the Leibniz rule and conjugate covariantly") {
  Ambient amb = make_ambient({"x", "y"});
  oracle::RatGen gen(47);
  Derivation D = make_derivation(amb, {P("y", amb), P("1", amb)});
  for (int trial = 0; trial < 6; ++trial) {
    Poly f = oracle::random_poly(amb, gen, 4, 3);
    Poly g = oracle::random_poly(amb, gen, 4, 3);
    CHECK(apply_derivation(D, f * g) ==
          apply_derivation(D, f) * g + f * apply_derivation(D, g));
  }
  // Conjugation by a generator-updating substitution C:
  //   apply(D', substitute(f, C)) == substitute(apply(D, f), C).
  CoordChange C = coord_from_images(
      amb, amb, {P("x+y^2", amb), P("y", amb)},
      std::vector<Poly>{P("x-y^2", amb), P("y", amb)});
  Derivation Dp = conjugate(D, C);
  for (int trial = 0; trial < 6; ++trial) {
    Poly f = oracle::random_poly(amb, gen, 4, 3);
    CHECK(apply_derivation(Dp, substitute(f, C)) ==
          substitute(apply_derivation(D, f), C));
  }
  CHECK(apply_derivation(unit_derivation(amb, 1), P("x*y^2", amb)) ==
        P("2*x*y", amb));
}
