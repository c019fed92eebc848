#include "wres/filtration.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "wres/errors.hpp"

namespace wres {

namespace {

void validate_partition(const Ambient& ambient, const std::vector<Block>& blocks,
                        const std::vector<size_t>& residual) {
  if (!ambient) throw StructuralError("filtration needs an ambient ring");
  size_t m = ambient->size();
  std::vector<int> seen(m, 0);
  auto mark = [&](size_t j) {
    if (j >= m) throw StructuralError("filtration references variable out of range");
    if (seen[j]++) throw StructuralError("filtration assigns a variable twice");
  };
  for (const Block& b : blocks) {
    if (b.vars.empty()) throw StructuralError("filtration block is empty");
    if (b.weight <= 0) throw StructuralError("filtration block weight must be positive");
    if (!std::is_sorted(b.vars.begin(), b.vars.end()))
      throw StructuralError("block variables must be listed ascending");
    for (size_t j : b.vars) mark(j);
  }
  if (!std::is_sorted(residual.begin(), residual.end()))
    throw StructuralError("residual variables must be listed ascending");
  for (size_t j : residual) mark(j);
  for (size_t j = 0; j < m; ++j)
    if (!seen[j]) throw StructuralError("filtration misses a variable");
  for (size_t i = 1; i < blocks.size(); ++i)
    if (!(blocks[i].weight < blocks[i - 1].weight))
      throw StructuralError("block weights must be strictly decreasing");
}

}  // namespace

WFiltration make_filtration(const Ambient& ambient, std::vector<Block> blocks,
                            std::vector<size_t> residual) {
  return make_filtration(ambient, std::move(blocks), std::move(residual),
                         coord_identity(ambient));
}

WFiltration make_filtration(const Ambient& ambient, std::vector<Block> blocks,
                            std::vector<size_t> residual,
                            CoordChange coord_change) {
  validate_partition(ambient, blocks, residual);
  if (!same_ambient(coord_change.target, ambient))
    throw StructuralError("filtration coordinate change must target the filtered ring");
  return WFiltration{ambient, std::move(blocks), std::move(residual),
                     std::move(coord_change)};
}

WFiltration trivial_filtration(const Ambient& ambient) {
  std::vector<size_t> residual(ambient->size());
  for (size_t j = 0; j < residual.size(); ++j) residual[j] = j;
  return make_filtration(ambient, {}, std::move(residual));
}

std::vector<Rat> variable_weights(const WFiltration& F) {
  std::vector<Rat> w(F.ambient->size(), Rat(1));
  for (const Block& b : F.blocks)
    for (size_t j : b.vars) w[j] = b.weight;
  return w;
}

WFiltration scaled(const WFiltration& F, const Rat& H) {
  if (H <= 0) throw ContractError("scaling parameter must be positive");
  WFiltration G = F;
  for (Block& b : G.blocks) {
    Rat w = b.weight * H;
    b.weight = w;
  }
  return G;
}

std::optional<Rat> weighted_order(const Poly& f, const WFiltration& F) {
  if (!same_ambient(f.ambient(), F.ambient))
    throw StructuralError("weighted_order: polynomial lives in a different ring");
  if (f.is_zero()) return std::nullopt;
  std::vector<Rat> w = variable_weights(F);
  std::optional<Rat> best;
  for (const auto& [mono, coeff] : f.terms()) {
    (void)coeff;
    Rat v(0);
    for (size_t j = 0; j < w.size(); ++j)
      if (mono.exps[j]) {
        Rat t = w[j] * (long)mono.exps[j];
        v += t;
      }
    if (!best || v < *best) best = v;
  }
  return best;
}

std::optional<long> ideal_multiplicity(const std::vector<Poly>& gens) {
  if (gens.empty()) throw StructuralError("ideal_multiplicity: empty generator list");
  std::optional<long> best;
  for (const Poly& f : gens) {
    for (const auto& [mono, coeff] : f.terms()) {
      (void)coeff;
      long d = (long)mono.degree();
      if (!best || d < *best) best = d;
    }
  }
  return best;
}

Poly initial_form(const Poly& f, const WFiltration& F, const Rat& threshold) {
  if (!same_ambient(f.ambient(), F.ambient))
    throw StructuralError("initial_form: polynomial lives in a different ring");
  std::vector<Rat> w = variable_weights(F);
  Poly in = Poly::zero(f.ambient());
  for (const auto& [mono, coeff] : f.terms()) {
    Rat v(0);
    for (size_t j = 0; j < w.size(); ++j)
      if (mono.exps[j]) {
        Rat t = w[j] * (long)mono.exps[j];
        v += t;
      }
    if (v < threshold)
      throw ContractError("initial_form: weighted order below the threshold");
    if (v == threshold) in.add_term(mono, coeff);
  }
  return in;
}

std::vector<Mono> graded_piece_basis(const WFiltration& F, const Rat& q) {
  if (q < 0) return {};
  std::vector<Rat> w = variable_weights(F);
  size_t m = w.size();
  std::vector<Mono> out;
  Mono cur;
  cur.exps.assign(m, 0);
  // Depth-first over exponent vectors; every weight is >= min weight > 0 so
  // the exponent of each variable is bounded by q / w_j.
  auto rec = [&](auto&& self, size_t j, const Rat& remaining) -> void {
    if (j == m) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    Rat left = remaining;
    std::uint32_t e = 0;
    while (left >= 0) {
      cur.exps[j] = e;
      self(self, j + 1, left);
      left -= w[j];
      ++e;
    }
    cur.exps[j] = 0;
  };
  rec(rec, 0, q);
  std::sort(out.begin(), out.end(), grlex_less);
  return out;
}

namespace {

// Achievable block-weight sums sum_i g^i * alpha_i < g^0 * d, each with its
// lexicographically smallest alpha.  Ascending enumeration of alpha in lex
// order guarantees the first alpha seen per value is the lex-smallest.
std::vector<std::pair<Rat, std::vector<long>>> block_weight_sums(
    const WFiltration& F, long d) {
  if (F.blocks.empty())
    throw ContractError("theta enumeration requires at least one block");
  if (d <= 0) throw ContractError("theta enumeration requires d >= 1");
  Rat bound = F.blocks[0].weight * d;
  std::map<Rat, std::vector<long>> seen;
  std::vector<long> alpha(F.blocks.size(), 0);
  auto rec = [&](auto&& self, size_t i, const Rat& acc) -> void {
    if (i == F.blocks.size()) {
      if (!seen.count(acc)) seen.emplace(acc, alpha);
      return;
    }
    Rat cur = acc;
    long a = 0;
    while (cur < bound) {
      alpha[i] = a;
      self(self, i + 1, cur);
      cur += F.blocks[i].weight;
      ++a;
    }
    alpha[i] = 0;
  };
  rec(rec, 0, Rat(0));
  return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<ThetaSolution> theta_enumerate(const WFiltration& F, long d,
                                           const Rat& upto) {
  auto sums = block_weight_sums(F, d);
  Rat bound = F.blocks[0].weight * d;
  // For each admissible H keep the lexicographically smallest (alpha, beta).
  // Candidates are grouped by H; within one H, smaller alpha wins (beta is
  // then determined), and the block-weight sums are visited in a fixed order
  // so ties resolve deterministically.
  std::map<Rat, ThetaSolution> by_h;
  for (const auto& [sum, alpha] : sums) {
    Rat gap = bound - sum;  // > 0
    // H = beta / gap with H > 1 and H <= upto.
    Int beta_min = rat_floor(gap) + 1;
    Rat beta_max_r = gap * upto;
    Int beta_max = rat_floor(beta_max_r);
    for (Int beta = beta_min; beta <= beta_max; ++beta) {
      Rat H = Rat(beta) / gap;
      if (!(H > 1) || H > upto) continue;
      auto it = by_h.find(H);
      if (it == by_h.end()) {
        ThetaSolution sol;
        sol.H = H;
        sol.witness_alpha = alpha;
        sol.witness_beta = beta.get_si();
        by_h.emplace(H, std::move(sol));
      } else if (std::lexicographical_compare(alpha.begin(), alpha.end(),
                                              it->second.witness_alpha.begin(),
                                              it->second.witness_alpha.end())) {
        it->second.witness_alpha = alpha;
        it->second.witness_beta = beta.get_si();
      }
    }
  }
  std::vector<ThetaSolution> out;
  out.reserve(by_h.size());
  for (auto& [h, sol] : by_h) {
    (void)h;
    out.push_back(std::move(sol));
  }
  return out;
}

ThetaSolution theta_successor(const WFiltration& F, long d, const Rat& after) {
  auto sums = block_weight_sums(F, d);
  Rat bound = F.blocks[0].weight * d;
  Rat floor_h = after > 1 ? after : Rat(1);
  std::optional<ThetaSolution> best;
  for (const auto& [sum, alpha] : sums) {
    Rat gap = bound - sum;
    // Smallest integer beta with beta / gap > floor_h, i.e. beta > gap*floor_h.
    Rat prod = gap * floor_h;
    Int beta = rat_floor(prod) + 1;
    Rat H = Rat(beta) / gap;
    if (!best || H < best->H ||
        (H == best->H &&
         std::lexicographical_compare(alpha.begin(), alpha.end(),
                                      best->witness_alpha.begin(),
                                      best->witness_alpha.end()))) {
      ThetaSolution sol;
      sol.H = H;
      sol.witness_alpha = alpha;
      sol.witness_beta = beta.get_si();
      best = std::move(sol);
    }
  }
  return *best;  // nonempty: alpha = 0 always admissible
}

}  // namespace wres
