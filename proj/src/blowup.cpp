#include "wres/blowup.hpp"

#include <algorithm>
#include <set>

#include "wres/errors.hpp"

namespace wres {

Center make_center(const InvariantResult& result) {
  if (result.invariant.terminated_by == Termination::UnitIdeal)
    throw ContractError("make_center: the unit ideal has no center");
  const WFiltration& F = result.filtration;
  if (F.blocks.empty())
    throw StructuralError("make_center: terminated filtration has no blocks");
  Center c;
  c.ambient = F.ambient;
  // Clear denominators, then divide out the common factor: the smallest
  // integer vector with the same ratios.
  Int L(1);
  for (const Block& b : F.blocks) L = int_lcm(L, Int(b.weight.get_den()));
  Int g(0);
  std::vector<Int> ints;
  for (const Block& b : F.blocks) {
    Rat scaled_w = b.weight * Rat(L);
    if (!rat_is_integer(scaled_w))
      throw StructuralError("make_center: denominator clearing failed");
    Int n = rat_floor(scaled_w);
    ints.push_back(n);
    Int nxt;
    mpz_gcd(nxt.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    g = nxt;
  }
  for (size_t i = 0; i < F.blocks.size(); ++i) {
    c.block_vars.push_back(F.blocks[i].vars);
    c.weights.push_back(ints[i] / g);
  }
  Rat d = result.invariant.entries[0];
  if (!rat_is_integer(d) || d <= 0)
    throw StructuralError("make_center: invalid multiplicity entry");
  c.threshold = rat_floor(d) * c.weights[0];
  return c;
}

namespace {

std::string fresh_exceptional_name(const Ambient& parent) {
  std::set<std::string> taken(parent->begin(), parent->end());
  if (!taken.count("u")) return "u";
  for (int k = 1;; ++k) {
    std::string cand = "u" + std::to_string(k);
    if (!taken.count(cand)) return cand;
  }
}

}  // namespace

std::vector<Chart> weighted_blowup(const Center& center) {
  const Ambient& parent = center.ambient;
  size_t m = parent->size();
  // Which block (if any) each parent variable belongs to.
  std::vector<int> block_of(m, -1);
  for (size_t i = 0; i < center.block_vars.size(); ++i)
    for (size_t v : center.block_vars[i]) block_of[v] = (int)i;

  std::string u_name = fresh_exceptional_name(parent);
  std::vector<Chart> charts;
  for (size_t i = 0; i < center.block_vars.size(); ++i) {
    for (size_t j = 0; j < center.block_vars[i].size(); ++j) {
      size_t cv = center.block_vars[i][j];
      Chart ch;
      ch.parent = parent;
      ch.center_block = i;
      ch.center_member = j;
      ch.chart_var = (*parent)[cv];
      ch.group_order = center.weights[i];

      std::vector<std::string> names{u_name};
      std::vector<Int> action{Int(1)};
      std::vector<int> target_of(m, -1);  // parent var -> chart var (not cv)
      for (size_t v = 0; v < m; ++v)
        if (block_of[v] >= 0 && v != cv) {
          target_of[v] = (int)names.size();
          names.push_back((*parent)[v] + "'");
          action.push_back(-center.weights[(size_t)block_of[v]]);
        }
      for (size_t v = 0; v < m; ++v)
        if (block_of[v] < 0) {
          target_of[v] = (int)names.size();
          names.push_back((*parent)[v]);
          action.push_back(Int(0));
        }
      ch.variables = make_ambient(std::move(names));
      ch.action_weights = std::move(action);

      std::vector<Poly> images;
      Poly u = Poly::variable(ch.variables, 0);
      for (size_t v = 0; v < m; ++v) {
        if (v == cv) {
          images.push_back(u.pow(center.weights[i].get_ui()));
        } else if (block_of[v] >= 0) {
          images.push_back(u.pow(center.weights[(size_t)block_of[v]].get_ui()) *
                           Poly::variable(ch.variables, target_of[v]));
        } else {
          images.push_back(Poly::variable(ch.variables, target_of[v]));
        }
      }
      ch.substitution = CoordChange{parent, ch.variables, std::move(images),
                                    std::nullopt};
      charts.push_back(std::move(ch));
    }
  }
  return charts;
}

namespace {

Int u_order(const Poly& f) {
  // The exceptional parameter is chart variable 0.
  std::optional<unsigned long> best;
  for (const auto& [mono, coeff] : f.terms()) {
    (void)coeff;
    unsigned long e = mono.exps[0];
    if (!best || e < *best) best = e;
  }
  return Int((unsigned long)(best ? *best : 0));
}

Poly divide_u(const Poly& f, const Int& k) {
  unsigned long kk = k.get_ui();
  Poly out(f.ambient());
  for (const auto& [mono, coeff] : f.terms()) {
    if (mono.exps[0] < kk)
      throw ContractError("controlled transform: exceptional exponent would go negative");
    Mono m2 = mono;
    m2.exps[0] -= (std::uint32_t)kk;
    out.add_term(m2, coeff);
  }
  return out;
}

}  // namespace

Transformed controlled_transform(const std::vector<Poly>& gens, Chart& chart,
                                 const Center& center, TransformMode mode) {
  Transformed out;
  std::optional<Int> divisor_mult;
  for (const Poly& f : gens) {
    if (!same_ambient(f.ambient(), chart.parent))
      throw StructuralError("controlled_transform: generator in a different ring");
    Poly g = substitute(f, chart.substitution);
    if (g.is_zero()) {
      out.gens.push_back(g);
      out.u_divided.push_back(Int(0));
      continue;
    }
    Int k = mode == TransformMode::Controlled ? center.threshold : u_order(g);
    out.gens.push_back(divide_u(g, k));
    out.u_divided.push_back(k);
    if (!divisor_mult || k < *divisor_mult) divisor_mult = k;
  }
  chart.exceptional_history.emplace_back((*chart.variables)[0],
                                         divisor_mult ? *divisor_mult : Int(0));
  return out;
}

std::vector<Poly> exceptional_restriction(const std::vector<Poly>& transformed,
                                          const Chart& chart) {
  std::vector<Poly> out;
  for (const Poly& f : transformed) {
    if (!same_ambient(f.ambient(), chart.variables))
      throw StructuralError("exceptional_restriction: polynomial in a different ring");
    Poly r(f.ambient());
    for (const auto& [mono, coeff] : f.terms())
      if (mono.exps[0] == 0) r.add_term(mono, coeff);
    out.push_back(r);
  }
  return out;
}

}  // namespace wres
