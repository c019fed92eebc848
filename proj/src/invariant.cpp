#include "wres/invariant.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "wres/errors.hpp"

namespace wres {

std::string termination_name(Termination t) {
  switch (t) {
    case Termination::EarlyZero: return "EarlyZero";
    case Termination::BlocksExhausted: return "BlocksExhausted";
    case Termination::Converged: return "Converged";
    case Termination::UnitIdeal: return "UnitIdeal";
  }
  return "?";
}

std::string format_invariant(const Invariant& inv) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < inv.used; ++i) {
    if (i) os << ", ";
    os << rat_str(inv.entries[i]);
  }
  os << ")";
  if (inv.used < inv.entries.size()) os << " [len " << inv.entries.size() << "]";
  return os.str();
}

int lex_compare(const Invariant& a, const Invariant& b) {
  if (a.entries.size() != b.entries.size())
    throw StructuralError("lex_compare: invariants of different ambient dimension");
  for (size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i] < b.entries[i]) return -1;
    if (a.entries[i] > b.entries[i]) return 1;
  }
  return 0;
}

namespace {

constexpr long kFactorialCap = 1000000;

Int checked_factorial_arg(const Rat& arg) {
  if (!rat_is_integer(arg))
    throw DiagnosticError("denominator bound: factorial argument " + rat_str(arg) +
                          " is not an integer");
  Int n = rat_floor(arg);
  if (n < 0)
    throw DiagnosticError("denominator bound: negative factorial argument");
  if (n > kFactorialCap)
    throw ResourceError("denominator bound: factorial argument " + int_str(n) +
                        " exceeds the guard cap");
  return n;
}

}  // namespace

Int denominator_bound(const std::vector<Rat>& prefix) {
  if (prefix.empty()) return Int(1);
  Rat rat_prod = prefix[0];
  Int bound_prod(1);
  Int D(1);
  for (size_t t = 1; ; ++t) {
    Rat arg = rat_prod * Rat(bound_prod);
    D = int_factorial(checked_factorial_arg(arg));
    if (t == prefix.size()) break;
    bound_prod *= D;
    Rat nxt = rat_prod * prefix[t];
    rat_prod = nxt;
  }
  return D;
}

std::vector<Int> integerize(const Invariant& inv) {
  const auto& e = inv.entries;
  if (e.size() % 2 != 0)
    throw StructuralError("integerize: entry list has odd length");
  std::vector<Int> out(e.size());
  std::vector<Rat> prefix;
  for (size_t i = 0; i < e.size(); ++i) {
    if (i % 2 == 1 || i == 0) {
      if (!rat_is_integer(e[i]))
        throw DiagnosticError("integerize: entry " + std::to_string(i) + " = " +
                              rat_str(e[i]) + " is not an integer");
      out[i] = rat_floor(e[i]);
      if (i == 0) prefix.push_back(e[0]);
    } else {
      Int Dt = denominator_bound(prefix);
      Rat scaled_entry = e[i] * Rat(Dt);
      if (!rat_is_integer(scaled_entry))
        throw DiagnosticError("integerize: scaled entry " + rat_str(e[i]) + " * " +
                              int_str(Dt) + " is not an integer");
      out[i] = rat_floor(scaled_entry);
      prefix.push_back(e[i]);
    }
  }
  return out;
}

Invariant diff_correction(long epsilon, const Invariant& inv) {
  if (epsilon < 0) throw ContractError("diff_correction: epsilon must be >= 0");
  const auto& e = inv.entries;
  if (e.size() % 2 != 0)
    throw StructuralError("diff_correction: entry list has odd length");
  Invariant out = inv;
  // First level whose l entry is zero; guaranteed to exist thanks to the
  // zero padding (a terminated invariant always ends in zeros).
  std::optional<size_t> t;
  for (size_t u = 0; 2 * u + 1 < e.size(); ++u)
    if (e[2 * u + 1] == 0) {
      t = u;
      break;
    }
  if (t) {
    Rat gt = (*t == 0) ? e[0] : e[2 * *t];
    size_t upto;  // add epsilon to l_0 .. l_{upto} inclusive; SIZE_MAX = none
    if (gt != 0)
      upto = *t;
    else if (*t >= 1)
      upto = *t - 1;
    else
      upto = SIZE_MAX;  // all-zero invariant: unchanged
    if (upto != SIZE_MAX)
      for (size_t u = 0; u <= upto; ++u) {
        Rat bumped = out.entries[2 * u + 1] + epsilon;
        out.entries[2 * u + 1] = bumped;
      }
  }
  out.entries.resize(e.size() + 2 * (size_t)epsilon, Rat(0));
  return out;
}

namespace {

bool coord_is_identity(const CoordChange& C) {
  for (size_t j = 0; j < C.images.size(); ++j)
    if (!(C.images[j] == Poly::variable(C.target, (int)j))) return false;
  return true;
}

long residual_degree(const Mono& mono, const std::vector<bool>& is_residual) {
  long r = 0;
  for (size_t j = 0; j < mono.exps.size(); ++j)
    if (is_residual[j]) r += mono.exps[j];
  return r;
}

std::vector<bool> residual_mask(const WFiltration& F) {
  std::vector<bool> mask(F.ambient->size(), false);
  for (size_t j : F.residual) mask[j] = true;
  return mask;
}

// Positive values d*g^0 - (block-weighted degree) over residual-divisible
// monomials of the generators, plus the max total degree.  Empty gap set
// means no scaling parameter can ever move a residual-divisible monomial
// onto the threshold: the filtration has converged.
//
// h_cap bounds the scaling parameters worth examining.  A residual-divisible
// monomial X^E Y^Q ties the threshold at H = |Q| / (d*g^0 - wt(E)), so with
// the generators fixed no candidate beyond max_degree / min_gap exists.  The
// cap must be taken once per level, over the generators as they stand when
// the level's scan begins: repair substitutions only add terms whose
// threshold-tying parameter is not smaller than the parameter already
// reached (their corrections carry strictly lower block weight), so they can
// cancel upcoming candidates but never create one beyond the initial cap,
// while naively recomputing the cap over the repaired generators lets the
// degree growth of the repairs postpone it indefinitely.
struct GapData {
  std::set<Rat> gaps;
  long max_degree = 0;
  bool converged() const { return gaps.empty(); }
  Rat h_cap() const { return Rat(max_degree) / *gaps.begin(); }
};

GapData gap_data(const std::vector<Poly>& gens, const WFiltration& F, long d) {
  GapData g;
  std::vector<Rat> w = variable_weights(F);
  std::vector<bool> mask = residual_mask(F);
  Rat bound = F.blocks[0].weight * d;
  for (const Poly& f : gens)
    for (const auto& [mono, coeff] : f.terms()) {
      (void)coeff;
      g.max_degree = std::max(g.max_degree, (long)mono.degree());
      if (residual_degree(mono, mask) == 0) continue;
      Rat wb(0);
      for (size_t j = 0; j < w.size(); ++j)
        if (!mask[j] && mono.exps[j]) {
          Rat t = w[j] * (long)mono.exps[j];
          wb += t;
        }
      Rat gap = bound - wb;
      if (gap > 0) g.gaps.insert(gap);
    }
  return g;
}

// After a straightening event the initial forms at the current threshold
// must not involve the (new) residual coordinates; this protects the next
// level's inductive setup and is the core soundness alarm.
void assert_residual_free_forms(const std::vector<Poly>& gens,
                                const WFiltration& FH, const Rat& threshold,
                                const std::vector<size_t>& residual) {
  std::vector<bool> mask(FH.ambient->size(), false);
  for (size_t j : residual) mask[j] = true;
  for (const Poly& f : gens) {
    Poly in = initial_form(f, FH, threshold);
    for (const auto& [mono, coeff] : in.terms()) {
      (void)coeff;
      for (size_t j = 0; j < mask.size(); ++j)
        if (mask[j] && mono.exps[j])
          throw DiagnosticError(
              "initial forms still involve a residual coordinate after straightening");
    }
  }
}

std::string render_partial_trace(const std::vector<TraceStep>& trace,
                                 const std::vector<Rat>& entries) {
  std::ostringstream os;
  os << "entries so far: (";
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) os << ", ";
    os << rat_str(entries[i]);
  }
  os << "); trace:";
  for (const TraceStep& t : trace)
    os << " s=" << t.s << " H=" << rat_str(t.H) << " case=" << (t.case_a ? "A" : "B")
       << ";";
  return os.str();
}

}  // namespace

InvariantResult compute_invariant(const std::vector<Poly>& gens_in,
                                  const Ambient& ambient,
                                  const InvariantOptions& opts) {
  if (!ambient || ambient->empty())
    throw StructuralError("compute_invariant: empty ambient ring");
  size_t m = ambient->size();
  std::vector<Poly> gens;
  for (const Poly& f : gens_in) {
    if (!same_ambient(f.ambient(), ambient))
      throw StructuralError("compute_invariant: generator in a different ring");
    if (!f.is_zero()) gens.push_back(f);
  }
  if (gens_in.empty()) throw StructuralError("compute_invariant: no generators");
  if (gens.empty())
    throw InputError("compute_invariant: the zero ideal has no finite invariant");

  InvariantResult res;
  res.filtration = trivial_filtration(ambient);

  long d = *ideal_multiplicity(gens);
  if (d == 0) {
    // A unit generator: the ideal is the whole ring.
    res.invariant.entries.assign(2 * m, Rat(0));
    res.invariant.used = 2;
    res.invariant.terminated_by = Termination::UnitIdeal;
    return res;
  }

  CoordChange U = coord_identity(ambient);
  std::vector<Rat> entries;
  entries.push_back(Rat(d));

  auto finalize = [&](Termination how, WFiltration F) -> InvariantResult& {
    if (entries.size() > 2 * m)
      throw DiagnosticError("invariant produced more than 2m entries");
    res.invariant.used = entries.size();
    entries.resize(2 * m, Rat(0));
    res.invariant.entries = std::move(entries);
    res.invariant.terminated_by = how;
    res.filtration = std::move(F);
    // Reconstruction identity: the final weight of block i must equal the
    // product of the scaling entries of the later levels.
    size_t g_count = (res.invariant.used - 2) / 2;
    if (res.filtration.blocks.size() != g_count + 1 &&
        how != Termination::UnitIdeal)
      throw DiagnosticError("invariant: block count disagrees with entry count");
    Rat suffix(1);
    for (size_t i = res.filtration.blocks.size(); i-- > 0;) {
      if (res.filtration.blocks[i].weight != suffix)
        throw DiagnosticError(
            "invariant: final block weights do not reconstruct from the entries");
      if (i > 0) {
        Rat nxt = suffix * res.invariant.entries[2 * i];
        suffix = nxt;
      }
    }
    return res;
  };

  // Level 0: contact at the plain order filtration.
  WFiltration F0 = trivial_filtration(ambient);
  std::vector<Poly> V;
  for (const Poly& f : gens) {
    Poly in = initial_form(f, F0, Rat(d));
    if (!in.is_zero()) V.push_back(in);
  }
  long checks = 0;
  DerivationModule L0 = full_contact_module(V, F0, &checks);
  res.contact_checks += checks;
  long ell0 = (long)L0.basis.size();
  entries.push_back(Rat(ell0));
  if (ell0 == 0) {
    // Order already drops in every direction: the block is the full
    // maximal-ideal filtration.
    std::vector<size_t> all(m);
    for (size_t j = 0; j < m; ++j) all[j] = j;
    WFiltration F = make_filtration(ambient, {Block{all, Rat(1)}}, {}, U);
    return finalize(Termination::EarlyZero, std::move(F));
  }
  StraightenAllResult sa0 = straighten_all(L0);
  if (!coord_is_identity(sa0.change)) {
    CoordChange tau = sa0.change.inverted();
    for (Poly& f : gens) f = substitute(f, tau);
    U = compose(U, tau);
  }
  WFiltration F =
      make_filtration(ambient, {Block{sa0.z_vars, Rat(1)}}, sa0.y_vars, U);
  assert_residual_free_forms(gens, F, Rat(d), F.residual);

  std::vector<TraceStep> trace;
  int s = 1;
  while (true) {
    GapData gaps = gap_data(gens, F, d);
    if (gaps.converged()) {
      res.trace = std::move(trace);
      return finalize(Termination::Converged, std::move(F));
    }
    const Rat h_cap = gaps.h_cap();

    Rat H(1);
    long steps = 0;
    bool level_locked = false;
    while (!level_locked) {
      ThetaSolution sol = theta_successor(F, d, H);
      if (++steps > opts.max_theta_steps)
        throw ResourceError("invariant: scaling-parameter budget exhausted at level " +
                                std::to_string(s),
                            render_partial_trace(trace, entries));
      H = sol.H;
      if (H > h_cap) {
        res.trace = std::move(trace);
        return finalize(Termination::Converged, std::move(F));
      }

      WFiltration FH = scaled(F, H);
      Rat threshold = FH.blocks[0].weight * d;
      V.clear();
      for (const Poly& f : gens) {
        std::optional<Rat> ord = weighted_order(f, FH);
        if (!ord || *ord < threshold)
          throw DiagnosticError(
              "invariant: generator order fell below the admissible threshold");
        Poly in = initial_form(f, FH, threshold);
        if (!in.is_zero()) V.push_back(in);
      }
      // The threshold is attained by construction of the parameter; some
      // initial form must survive with a residual-free part.
      std::vector<bool> mask = residual_mask(FH);
      bool core = false;
      for (const Poly& v : V)
        for (const auto& [mono, coeff] : v.terms()) {
          (void)coeff;
          if (residual_degree(mono, mask) == 0) core = true;
        }
      if (V.empty() || !core)
        throw DiagnosticError("invariant: no residual-free core at the threshold");

      DerivationModule L = full_contact_module(V, FH, &checks);
      res.contact_checks += checks;
      long ell = (long)L.basis.size();
      long m_s = (long)F.residual.size();
      if (ell > m_s)
        throw DiagnosticError("invariant: contact dimension exceeds the residual count");

      StraightenAllResult sa = straighten_all(L);
      bool changed = !coord_is_identity(sa.change);
      if (changed) {
        CoordChange tau = sa.change.inverted();
        for (Poly& f : gens) f = substitute(f, tau);
        U = compose(U, tau);
      }

      if (ell == m_s) {
        // Coordinate repair only: no block locks at this parameter.
        if (!sa.z_vars.empty())
          throw DiagnosticError("invariant: repair step produced a new block");
        if (changed) {
          F = make_filtration(ambient, F.blocks, F.residual, U);
          assert_residual_free_forms(gens, scaled(F, H), threshold, F.residual);
          // A repair may empty the gap set (every residual-divisible term
          // absorbed), but it must not refresh h_cap: the cap stays frozen
          // for the whole level so that repair-driven degree growth cannot
          // postpone convergence detection.
          if (gap_data(gens, F, d).converged()) {
            trace.push_back({s, H, false, changed});
            res.trace = std::move(trace);
            return finalize(Termination::Converged, std::move(F));
          }
        }
        trace.push_back({s, H, false, changed});
        continue;
      }

      // Lock: a new block enters at weight 1, previous weights scale by H.
      res.witnesses.push_back(CaseAWitness{s, d, {}, sol});
      for (const Block& b : F.blocks)
        res.witnesses.back().block_weights.push_back(b.weight);
      entries.push_back(H);
      entries.push_back(Rat(ell));
      trace.push_back({s, H, true, changed});

      std::vector<Block> blocks;
      for (const Block& b : F.blocks) {
        Rat w = b.weight * H;
        blocks.push_back(Block{b.vars, w});
      }
      blocks.push_back(Block{sa.z_vars, Rat(1)});
      F = make_filtration(ambient, std::move(blocks), sa.y_vars, U);
      assert_residual_free_forms(gens, F, threshold, F.residual);

      if (ell == 0) {
        res.trace = std::move(trace);
        return finalize(Termination::BlocksExhausted, std::move(F));
      }
      level_locked = true;
    }
    ++s;
  }
}

}  // namespace wres
