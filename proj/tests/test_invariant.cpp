#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracles.hpp"
#include "wres/errors.hpp"
#include "wres/invariant.hpp"

using namespace wres;
using oracle::P;

namespace {

std::vector<Rat> R(std::initializer_list<const char*> xs) {
  std::vector<Rat> out;
  for (const char* x : xs) out.push_back(rat_parse(x));
  return out;
}

InvariantResult inv_of(const char* text, std::vector<std::string> vars,
                       InvariantOptions opts = {}) {
  Ambient a = make_ambient(std::move(vars));
  return compute_invariant({P(text, a)}, a, opts);
}

void check_entries(const InvariantResult& r,
                   std::initializer_list<const char*> want) {
  CHECK(r.invariant.entries == R(want));
}

std::vector<Rat> block_weights(const InvariantResult& r) {
  std::vector<Rat> w;
  for (const Block& b : r.filtration.blocks) w.push_back(b.weight);
  return w;
}

}  // namespace

TEST_CASE("frozen invariants of the example corpus") {
  SUBCASE("cuspidal curve") {
    auto r = inv_of("x^2+y^3", {"x", "y"});
    check_entries(r, {"2", "1", "3/2", "0"});
    CHECK(r.invariant.used == 4);
    CHECK(r.invariant.terminated_by == Termination::BlocksExhausted);
    CHECK(block_weights(r) == R({"3/2", "1"}));
    CHECK(r.filtration.blocks[0].vars == std::vector<size_t>{0});
    CHECK(r.filtration.blocks[1].vars == std::vector<size_t>{1});
    CHECK(r.filtration.residual.empty());
    REQUIRE(r.trace.size() == 1);
    CHECK(r.trace[0].case_a);
    CHECK(r.trace[0].H == Rat(3, 2));
  }

  SUBCASE("symmetric quartic in four variables") {
    auto r = inv_of("x^2+y^2+z^2*t^2", {"x", "y", "z", "t"});
    check_entries(r, {"2", "2", "2", "0", "0", "0", "0", "0"});
    CHECK(r.invariant.used == 4);
    CHECK(r.invariant.terminated_by == Termination::BlocksExhausted);
    CHECK(block_weights(r) == R({"2", "1"}));
    CHECK(r.filtration.blocks[0].vars == std::vector<size_t>{0, 1});
    CHECK(r.filtration.blocks[1].vars == std::vector<size_t>{2, 3});
    REQUIRE(r.trace.size() == 2);
    CHECK_FALSE(r.trace[0].case_a);  // identity repair at 3/2
    CHECK(r.trace[0].H == Rat(3, 2));
    CHECK(r.trace[1].case_a);
    CHECK(r.trace[1].H == Rat(2));
  }

  SUBCASE("cusp with a transverse line: convergence") {
    auto r = inv_of("x^2+y^3", {"x", "y", "z"});
    check_entries(r, {"2", "2", "3/2", "1", "0", "0"});
    CHECK(r.invariant.used == 4);
    CHECK(r.invariant.terminated_by == Termination::Converged);
    CHECK(block_weights(r) == R({"3/2", "1"}));
    CHECK(r.filtration.residual == std::vector<size_t>{2});
  }

  SUBCASE("plane quadric: early zero") {
    auto r = inv_of("x^2+y^2", {"x", "y"});
    check_entries(r, {"2", "0", "0", "0"});
    CHECK(r.invariant.used == 2);
    CHECK(r.invariant.terminated_by == Termination::EarlyZero);
    // The early-zero filtration is the full m-adic one: a single block.
    REQUIRE(r.filtration.blocks.size() == 1);
    CHECK(r.filtration.blocks[0].vars == std::vector<size_t>{0, 1});
    CHECK(r.filtration.blocks[0].weight == Rat(1));
  }

  SUBCASE("a coordinate: codimension-one convergence") {
    auto r = inv_of("x", {"x", "y"});
    check_entries(r, {"1", "1", "0", "0"});
    CHECK(r.invariant.used == 2);
    CHECK(r.invariant.terminated_by == Termination::Converged);
    CHECK(block_weights(r) == R({"1"}));
    CHECK(r.filtration.blocks[0].vars == std::vector<size_t>{0});
    CHECK(r.filtration.residual == std::vector<size_t>{1});
  }

  SUBCASE("higher cusp x^2+y^5") {
    auto r = inv_of("x^2+y^5", {"x", "y"});
    check_entries(r, {"2", "1", "5/2", "0"});
    CHECK(r.invariant.terminated_by == Termination::BlocksExhausted);
    REQUIRE(r.trace.size() == 3);  // repairs at 3/2, 2; lock at 5/2
    CHECK_FALSE(r.trace[0].case_a);
    CHECK_FALSE(r.trace[1].case_a);
    CHECK(r.trace[2].case_a);
    CHECK(r.trace[2].H == Rat(5, 2));
  }

  SUBCASE("pinch point surface") {
    auto r = inv_of("x^2+y^2*z", {"x", "y", "z"});
    check_entries(r, {"2", "2", "3/2", "0", "0", "0"});
    CHECK(r.invariant.used == 4);
    CHECK(r.invariant.terminated_by == Termination::BlocksExhausted);
    CHECK(block_weights(r) == R({"3/2", "1"}));
    CHECK(r.filtration.blocks[1].vars == std::vector<size_t>{1, 2});
  }

  SUBCASE("x^2+x*y^3 locks only at the third parameter") {
    auto r = inv_of("x^2+x*y^3", {"x", "y"});
    check_entries(r, {"2", "1", "3", "0"});
    // Candidates at level 2 are 3/2, 2, 5/2, 3; the first three are idle
    // repairs, the lock happens at 3.
    REQUIRE(r.trace.size() == 4);
    for (size_t i = 0; i < 3; ++i) CHECK_FALSE(r.trace[i].case_a);
    CHECK(r.trace[0].H == Rat(3, 2));
    CHECK(r.trace[1].H == Rat(2));
    CHECK(r.trace[2].H == Rat(5, 2));
    CHECK(r.trace[3].case_a);
    CHECK(r.trace[3].H == Rat(3));
  }

  SUBCASE("translated cusp straightens the generator direction") {
    Ambient a = make_ambient({"x", "y"});
    Poly f = P("(x-y^2)^2+y^5", a);
    auto r = compute_invariant({f}, a);
    check_entries(r, {"2", "1", "5/2", "0"});
    // The cumulative coordinate change turns the generator into the model.
    CHECK(substitute(f, r.coord_change()) == P("x^2+y^5", a));
  }

  SUBCASE("repair below the top weight") {
    Ambient a = make_ambient({"x", "y", "z"});
    Poly f = P("x^2+(y+z^2)^3", a);
    auto r = compute_invariant({f}, a);
    check_entries(r, {"2", "2", "3/2", "1", "0", "0"});
    CHECK(r.invariant.terminated_by == Termination::Converged);
    CHECK(substitute(f, r.coord_change()) == P("x^2+y^3", a));
    CHECK(r.filtration.residual == std::vector<size_t>{2});
  }

  SUBCASE("three-level filtration") {
    auto r = inv_of("x^2+y^3+z^7", {"x", "y", "z"});
    check_entries(r, {"2", "2", "3/2", "1", "7/3", "0"});
    CHECK(r.invariant.used == 6);
    CHECK(r.invariant.terminated_by == Termination::BlocksExhausted);
    CHECK(block_weights(r) == R({"7/2", "7/3", "1"}));
    REQUIRE(r.witnesses.size() == 2);
    CHECK(r.witnesses[0].sol.H == Rat(3, 2));
    CHECK(r.witnesses[1].sol.H == Rat(7, 3));
  }
}

TEST_CASE("unit and degenerate ideals") {
  Ambient a = make_ambient({"x", "y"});
  auto r = compute_invariant({P("1+x", a)}, a);
  CHECK(r.invariant.terminated_by == Termination::UnitIdeal);
  CHECK(r.invariant.entries == R({"0", "0", "0", "0"}));
  CHECK(r.invariant.used == 2);

  CHECK_THROWS_AS(compute_invariant({Poly::zero(a)}, a), InputError);
  CHECK_THROWS_AS(compute_invariant({}, a), StructuralError);
}

TEST_CASE("multi-generator ideals") {
  Ambient a = make_ambient({"x", "y"});
  auto r = compute_invariant({P("x^2", a), P("y^3", a)}, a);
  CHECK(r.invariant.entries == R({"2", "1", "3/2", "0"}));
  CHECK(r.invariant.terminated_by == Termination::BlocksExhausted);
}

TEST_CASE("permuting the variables permutes the blocks only") {
  auto r = inv_of("y^2+x^3", {"x", "y"});
  CHECK(r.invariant.entries == R({"2", "1", "3/2", "0"}));
  CHECK(r.filtration.blocks[0].vars == std::vector<size_t>{1});
  CHECK(r.filtration.blocks[1].vars == std::vector<size_t>{0});
}

TEST_CASE("formatting") {
  auto cusp = inv_of("x^2+y^3", {"x", "y"});
  CHECK(format_invariant(cusp.invariant) == "(2, 1, 3/2, 0)");
  auto conv = inv_of("x^2+y^3", {"x", "y", "z"});
  CHECK(format_invariant(conv.invariant) == "(2, 2, 3/2, 1) [len 6]");
  auto unit = inv_of("1+x", {"x", "y"});
  CHECK(format_invariant(unit.invariant) == "(0, 0) [len 4]");
  CHECK(termination_name(Termination::BlocksExhausted) == "BlocksExhausted");
  CHECK(termination_name(Termination::UnitIdeal) == "UnitIdeal");
}

TEST_CASE("lexicographic comparison") {
  auto mk = [](std::initializer_list<const char*> xs) {
    Invariant v;
    for (const char* x : xs) v.entries.push_back(rat_parse(x));
    v.used = v.entries.size();
    return v;
  };
  CHECK(lex_compare(mk({"2", "1"}), mk({"2", "1"})) == 0);
  CHECK(lex_compare(mk({"2", "1"}), mk({"2", "2"})) < 0);
  CHECK(lex_compare(mk({"3", "0"}), mk({"2", "9"})) > 0);
  CHECK(lex_compare(mk({"2", "3/2"}), mk({"2", "10/7"})) > 0);
  CHECK_THROWS_AS(lex_compare(mk({"2"}), mk({"2", "1"})), StructuralError);
}

TEST_CASE("denominator bounds") {
  CHECK(denominator_bound(R({"2"})) == 2);
  CHECK(denominator_bound(R({"2", "3/2"})) == 720);
  CHECK(denominator_bound(R({"2", "2"})) == 40320);
  // (2, 3/2, 7/3): the factorial argument is 2 * (3/2) * (7/3) * 2 * 720.
  Int big = denominator_bound(R({"2", "3/2", "7/3"}));
  Int want = 1;
  for (long k = 2; k <= 10080; ++k) want *= k;
  CHECK(big == want);
  // Non-integer factorial argument: broken precondition, not user error.
  CHECK_THROWS_AS(denominator_bound(R({"2", "4/3"})), DiagnosticError);
  // Guard cap on runaway arguments.
  CHECK_THROWS_AS(denominator_bound(R({"2", "500000"})), ResourceError);
}

TEST_CASE("integerization multiplies scaling entries by the bounds") {
  auto cusp = inv_of("x^2+y^3", {"x", "y"});
  CHECK(integerize(cusp.invariant) == std::vector<Int>{2, 1, 3, 0});
  auto deep = inv_of("x^2+y^3+z^7", {"x", "y", "z"});
  // g2 = 7/3 is scaled by (2 * 3/2 * 2)! = 720.
  CHECK(integerize(deep.invariant) ==
        std::vector<Int>{2, 2, 3, 1, 1680, 0});
  auto unit = inv_of("1+x", {"x", "y"});
  CHECK(integerize(unit.invariant) == std::vector<Int>{0, 0, 0, 0});
}

TEST_CASE("integerization preserves lexicographic order") {
  // Pairs of invariants produced from the corpus must compare identically
  // before and after integerization.
  std::vector<Invariant> invs;
  for (const char* text : {"x^2+y^3", "x^2+y^5", "x^2+x*y^3", "x^2+y^2", "x"})
    invs.push_back(inv_of(text, {"x", "y"}).invariant);
  for (const auto& a : invs)
    for (const auto& b : invs) {
      int before = lex_compare(a, b);
      std::vector<Int> ia = integerize(a), ib = integerize(b);
      int after = ia < ib ? -1 : ia == ib ? 0 : 1;
      CHECK(before == after);
    }
}

TEST_CASE("cylinder correction predicts added variables") {
  auto pairs = {
      std::pair<const char*, int>{"x^2+y^3", 2},
      std::pair<const char*, int>{"x^2+y^2", 2},
      std::pair<const char*, int>{"x", 2},
      std::pair<const char*, int>{"x^2+y^5", 2},
  };
  std::vector<std::string> names = {"x", "y", "z", "t"};
  for (auto [text, m] : pairs) {
    std::vector<std::string> base(names.begin(), names.begin() + m);
    std::vector<std::string> ext(names.begin(), names.begin() + m + 1);
    Invariant small = inv_of(text, base).invariant;
    Invariant bigger = inv_of(text, ext).invariant;
    Invariant predicted = diff_correction(1, small);
    CHECK(predicted.entries == bigger.entries);
    CHECK(predicted.entries.size() == bigger.entries.size());
  }
  // Two steps at once.
  Invariant cusp = inv_of("x^2+y^3", {"x", "y"}).invariant;
  Invariant m4 = inv_of("x^2+y^3", {"x", "y", "z", "t"}).invariant;
  CHECK(diff_correction(2, cusp).entries == m4.entries);
  // The pinch point in four variables.
  Invariant whitney = inv_of("x^2+y^2*z", {"x", "y", "z"}).invariant;
  Invariant whitney4 = inv_of("x^2+y^2*z", {"x", "y", "z", "t"}).invariant;
  CHECK(diff_correction(1, whitney).entries == whitney4.entries);
  CHECK(whitney4.entries == R({"2", "3", "3/2", "1", "0", "0", "0", "0"}));
}

TEST_CASE("cylinder correction unit shapes") {
  Invariant cusp = inv_of("x^2+y^3", {"x", "y"}).invariant;
  Invariant c = diff_correction(1, cusp);
  CHECK(c.entries == R({"2", "2", "3/2", "1", "0", "0"}));
  CHECK(c.terminated_by == cusp.terminated_by);

  Invariant zero;
  zero.entries = R({"0", "0", "0", "0"});
  zero.used = 2;
  Invariant z2 = diff_correction(1, zero);
  CHECK(z2.entries == R({"0", "0", "0", "0", "0", "0"}));

  Invariant early = inv_of("x^2+y^2", {"x", "y"}).invariant;
  CHECK(diff_correction(1, early).entries == R({"2", "1", "0", "0", "0", "0"}));

  Invariant coord = inv_of("x", {"x", "y"}).invariant;
  CHECK(diff_correction(1, coord).entries == R({"1", "2", "0", "0", "0", "0"}));
}

TEST_CASE("case-A witnesses satisfy the recorded identity") {
  for (const char* text : {"x^2+y^3", "x^2+y^5", "x^2+x*y^3", "x^2+y^3+z^7"}) {
    auto r = inv_of(text, {"x", "y", "z"});
    CHECK(!r.witnesses.empty());
    for (const CaseAWitness& w : r.witnesses) {
      REQUIRE(w.sol.witness_alpha.size() == w.block_weights.size());
      Rat lhs = w.sol.witness_beta;
      for (size_t i = 0; i < w.block_weights.size(); ++i) {
        Rat t = w.sol.H * w.block_weights[i] * w.sol.witness_alpha[i];
        lhs += t;
      }
      Rat rhs = w.sol.H * w.block_weights[0] * w.d;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("contact checks are counted") {
  auto r = inv_of("x^2+y^3", {"x", "y"});
  CHECK(r.contact_checks > 0);
}

TEST_CASE("the scaling-step budget is enforced") {
  InvariantOptions opts;
  opts.max_theta_steps = 2;
  Ambient a = make_ambient({"x", "y"});
  try {
    compute_invariant({P("x^2+y^5", a)}, a, opts);  // needs three steps
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(!std::string(e.partial()).empty());
  }
}
