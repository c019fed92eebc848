#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "wres/errors.hpp"
#include "wres/filtration.hpp"

using namespace wres;
using oracle::P;

namespace {

Ambient amb3() { return make_ambient({"x", "y", "z"}); }

// blocks {x}:3/2, {y}:1, any remaining variables residual — the level-2
// state of the cusp computation.
WFiltration cusp_level2(const Ambient& a) {
  std::vector<size_t> residual;
  for (size_t j = 2; j < a->size(); ++j) residual.push_back(j);
  return make_filtration(a, {Block{{0}, Rat(3, 2)}, Block{{1}, Rat(1)}},
                         residual);
}

}  // namespace

TEST_CASE("make_filtration validates its partition and weights") {
  Ambient a = amb3();
  CHECK_NOTHROW(make_filtration(a, {Block{{0}, Rat(2)}}, {1, 2}));
  // Missing variable.
  CHECK_THROWS_AS(make_filtration(a, {Block{{0}, Rat(2)}}, {1}),
                  StructuralError);
  // Duplicated variable.
  CHECK_THROWS_AS(make_filtration(a, {Block{{0}, Rat(2)}}, {0, 1, 2}),
                  StructuralError);
  CHECK_THROWS_AS(
      make_filtration(a, {Block{{0}, Rat(2)}, Block{{1}, Rat(2)}}, {2}),
      StructuralError);  // weights not strictly decreasing
  CHECK_THROWS_AS(make_filtration(a, {Block{{0}, Rat(0)}}, {1, 2}),
                  StructuralError);  // weight must be positive
  // Coordinate change must target the ambient.
  Ambient other = make_ambient({"a", "b", "c"});
  CHECK_THROWS_AS(
      make_filtration(a, {Block{{0}, Rat(2)}}, {1, 2}, coord_identity(other)),
      StructuralError);
}

TEST_CASE("variable weights and scaling") {
  Ambient a = amb3();
  WFiltration F =
      make_filtration(a, {Block{{0}, Rat(5, 2)}, Block{{2}, Rat(3, 2)}}, {1});
  CHECK(variable_weights(F) ==
        std::vector<Rat>{Rat(5, 2), Rat(1), Rat(3, 2)});
  WFiltration G = scaled(F, Rat(2));
  CHECK(variable_weights(G) == std::vector<Rat>{Rat(5), Rat(1), Rat(3)});
  CHECK(G.residual == F.residual);
  WFiltration T = trivial_filtration(a);
  CHECK(T.blocks.empty());
  CHECK(variable_weights(T) == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
}

TEST_CASE("weighted order agrees with a term scan") {
  Ambient a = amb3();
  WFiltration F =
      make_filtration(a, {Block{{0}, Rat(5, 2)}, Block{{2}, Rat(3, 2)}}, {1});
  std::vector<Rat> w = variable_weights(F);
  oracle::RatGen gen(101);
  for (int trial = 0; trial < 20; ++trial) {
    Poly f = oracle::random_poly(a, gen, 5, 4);
    CHECK(weighted_order(f, F) == oracle::weighted_order(f, w));
  }
  CHECK_FALSE(weighted_order(Poly::zero(a), F).has_value());
  CHECK(weighted_order(P("x^2+y*z", a), F) == Rat(5, 2));
}

TEST_CASE("ideal multiplicity") {
  Ambient a4 = make_ambient({"x", "y", "z", "t"});
  CHECK(ideal_multiplicity({P("x^2+y^2+z^2*t^2", a4)}) == 2);
  Ambient a = amb3();
  CHECK(ideal_multiplicity({P("x^2+y^3", a), P("z", a)}) == 1);
  CHECK(ideal_multiplicity({Poly::zero(a), P("y^3", a)}) == 3);
  CHECK_FALSE(ideal_multiplicity({Poly::zero(a)}).has_value());
  CHECK_THROWS_AS(ideal_multiplicity({}), StructuralError);
}

TEST_CASE("initial form extracts exactly the threshold terms") {
  Ambient a = amb3();
  WFiltration F = cusp_level2(a);
  std::vector<Rat> w = variable_weights(F);
  Poly f = P("x^2+y^3+z^4", a);  // weights 3, 3, 4
  CHECK(initial_form(f, F, Rat(3)) == P("x^2+y^3", a));
  CHECK(initial_form(f, F, Rat(3)) == oracle::initial_terms(f, w, Rat(3)));
  // Strictly larger order: zero initial form at a lower admissible level.
  CHECK(initial_form(P("z^4", a), F, Rat(7, 2)).is_zero());
  // Below the order: contract violation.
  CHECK_THROWS_AS(initial_form(f, F, Rat(4)), ContractError);
  oracle::RatGen gen(103);
  for (int trial = 0; trial < 10; ++trial) {
    Poly g = oracle::random_poly(a, gen, 5, 4);
    auto ord = weighted_order(g, F);
    if (!ord) continue;
    CHECK(initial_form(g, F, *ord) == oracle::initial_terms(g, w, *ord));
  }
}

TEST_CASE("graded piece bases") {
  Ambient a = make_ambient({"x", "y"});
  WFiltration F = make_filtration(a, {Block{{0}, Rat(2)}}, {1});
  CHECK(graded_piece_basis(F, Rat(1, 2)).empty());
  auto q2 = graded_piece_basis(F, Rat(2));
  REQUIRE(q2.size() == 2);
  CHECK(q2[0] == Mono{{1, 0}});  // x before y^2 in graded-lex
  CHECK(q2[1] == Mono{{0, 2}});
  auto q3 = graded_piece_basis(F, Rat(3));
  REQUIRE(q3.size() == 2);
  CHECK(q3[0] == Mono{{1, 1}});
  CHECK(q3[1] == Mono{{0, 3}});
  CHECK(graded_piece_basis(F, Rat(0)) == std::vector<Mono>{Mono{{0, 0}}});

  std::vector<Rat> w = variable_weights(F);
  for (const Rat& q : {Rat(2), Rat(3), Rat(4), Rat(9, 2), Rat(5)})
    CHECK(graded_piece_basis(F, q) == oracle::graded_piece(w, q, 8));
}

TEST_CASE("scaling parameters for the cusp level") {
  Ambient a = make_ambient({"x", "y"});
  WFiltration F = cusp_level2(a);
  auto sols = theta_enumerate(F, 2, Rat(2));
  REQUIRE(sols.size() == 4);
  CHECK(sols[0].H == Rat(4, 3));
  CHECK(sols[1].H == Rat(3, 2));
  CHECK(sols[2].H == Rat(5, 3));
  CHECK(sols[3].H == Rat(2));
  // Frozen witness: the lex-least solution of H*(3/2 a0 + a1) + b = 3H.
  CHECK(sols[0].witness_alpha == std::vector<long>{0, 0});
  CHECK(sols[0].witness_beta == 4);
  CHECK(sols[1].witness_alpha == std::vector<long>{0, 1});
  CHECK(sols[1].witness_beta == 3);
  CHECK(sols[3].witness_alpha == std::vector<long>{0, 0});
  CHECK(sols[3].witness_beta == 6);

  ThetaSolution s = theta_successor(F, 2, Rat(1));
  CHECK(s.H == Rat(4, 3));
  CHECK(s.witness_alpha == std::vector<long>{0, 0});
  CHECK(s.witness_beta == 4);
  CHECK(theta_successor(F, 2, Rat(4, 3)).H == Rat(3, 2));
  CHECK(theta_successor(F, 2, Rat(2)).H == Rat(7, 3));
  // `after` below 1 behaves like 1: H must exceed 1.
  CHECK(theta_successor(F, 2, Rat(0)).H == Rat(4, 3));
}

TEST_CASE("every witness satisfies the defining identity") {
  Ambient a = make_ambient({"x", "y"});
  WFiltration F = cusp_level2(a);
  for (const ThetaSolution& s : theta_enumerate(F, 2, Rat(4))) {
    Rat lhs = 0;
    Rat t0 = F.blocks[0].weight * s.witness_alpha[0];
    Rat t1 = F.blocks[1].weight * s.witness_alpha[1];
    lhs = s.H * (t0 + t1) + s.witness_beta;
    Rat rhs = s.H * F.blocks[0].weight * 2;
    CHECK(lhs == rhs);
    CHECK(s.witness_beta >= 1);
    CHECK(s.H > 1);
  }
}

TEST_CASE("enumeration matches a brute-force membership scan") {
  Ambient a = make_ambient({"x", "y"});
  WFiltration F = cusp_level2(a);
  std::vector<Rat> g = {Rat(3, 2), Rat(1)};
  std::set<Rat> enumerated;
  for (const ThetaSolution& s : theta_enumerate(F, 2, Rat(3)))
    enumerated.insert(s.H);
  // Possible parameter values have denominator dividing a gap denominator,
  // so a grid with denominators up to 12 sees every member <= 3.
  for (long q = 1; q <= 12; ++q) {
    for (long p = q + 1; p <= 3 * q; ++p) {
      Rat H(p, q);
      CHECK(oracle::theta_member(g, 2, H) == (enumerated.count(H) > 0));
    }
  }
}

TEST_CASE("scaling parameters depend only on weights and multiplicity") {
  Ambient a = make_ambient({"x", "y"});
  Ambient b = make_ambient({"p", "q", "r"});
  WFiltration Fa = cusp_level2(a);
  WFiltration Fb = make_filtration(
      b, {Block{{2}, Rat(3, 2)}, Block{{0}, Rat(1)}}, {1});
  auto sa = theta_enumerate(Fa, 2, Rat(3));
  auto sb = theta_enumerate(Fb, 2, Rat(3));
  REQUIRE(sa.size() == sb.size());
  for (size_t i = 0; i < sa.size(); ++i) CHECK(sa[i].H == sb[i].H);

  CHECK_THROWS_AS(theta_enumerate(trivial_filtration(a), 2, Rat(2)),
                  ContractError);
}
