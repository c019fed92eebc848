#include "wres/driver.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <sstream>

#include "wres/errors.hpp"

namespace wres {

std::string status_name(NodeStatus s) {
  switch (s) {
    case NodeStatus::Active: return "Active";
    case NodeStatus::Principal: return "Principal";
    case NodeStatus::Smooth: return "Smooth";
    case NodeStatus::Pruned: return "Pruned";
  }
  return "?";
}

bool is_principal(const std::vector<Poly>& gens,
                  const std::vector<std::string>& exceptional,
                  const Ambient& ambient) {
  std::vector<size_t> exc_idx;
  for (const std::string& e : exceptional) {
    int j = var_index(ambient, e);
    if (j < 0) throw StructuralError("is_principal: unknown exceptional variable " + e);
    exc_idx.push_back((size_t)j);
  }
  std::vector<const Poly*> nz;
  for (const Poly& f : gens)
    if (!f.is_zero()) nz.push_back(&f);
  if (nz.empty()) return false;
  // Largest common exceptional-monomial factor of all generators.
  std::vector<std::uint32_t> k(exc_idx.size(), 0);
  for (size_t e = 0; e < exc_idx.size(); ++e) {
    std::optional<std::uint32_t> mn;
    for (const Poly* f : nz)
      for (const auto& [mono, coeff] : f->terms()) {
        (void)coeff;
        std::uint32_t x = mono.exps[exc_idx[e]];
        if (!mn || x < *mn) mn = x;
      }
    k[e] = *mn;
  }
  // Principal iff some cofactor is a unit at the origin: a term sitting
  // exactly on the common factor with no other variables.
  for (const Poly* f : nz)
    for (const auto& [mono, coeff] : f->terms()) {
      (void)coeff;
      bool on_factor = true;
      for (size_t j = 0; j < mono.exps.size() && on_factor; ++j) {
        auto it = std::find(exc_idx.begin(), exc_idx.end(), j);
        if (it != exc_idx.end()) {
          if (mono.exps[j] != k[(size_t)(it - exc_idx.begin())]) on_factor = false;
        } else if (mono.exps[j] != 0) {
          on_factor = false;
        }
      }
      if (on_factor) return true;
    }
  return false;
}

namespace {

std::vector<Poly> translate_gens(const std::vector<Poly>& gens,
                                 const Ambient& ambient,
                                 const std::vector<Rat>& point) {
  CoordChange C = coord_translation(ambient, point);
  std::vector<Poly> out;
  out.reserve(gens.size());
  for (const Poly& f : gens) out.push_back(substitute(f, C));
  return out;
}

bool hypersurface_smooth_at_origin(const Poly& f) {
  if (f.constant_term() != 0) return true;  // unit: off the strict transform
  for (int j = 0; j < f.nvars(); ++j)
    if (partial(f, j).constant_term() != 0) return true;
  return false;
}

// Decides the node's status, computes its invariant, applies the
// maximal-invariant point search, and verifies the strict drop against the
// parent.  `parent_inv` is null at the root.
void init_node(TreeNode& n, const Invariant* parent_inv, const DriverOptions& opts,
               bool hypersurface) {
  bool done;
  if (hypersurface)
    done = hypersurface_smooth_at_origin(n.gens[0]);
  else
    done = is_principal(n.gens, n.exceptional, n.ambient);
  n.status = done ? (hypersurface ? NodeStatus::Smooth : NodeStatus::Principal)
                  : NodeStatus::Active;
  n.inv = compute_invariant(n.gens, n.ambient, opts.invariant);
  if (n.status != NodeStatus::Active) return;

  // Expansion happens at a point of maximal invariant; the chart origin is
  // always a candidate and wins ties (it sorts first).
  std::vector<std::vector<Rat>> cands{std::vector<Rat>(n.ambient->size(), Rat(0))};
  for (const auto& p : opts.candidate_points)
    if (p.size() == n.ambient->size()) cands.push_back(p);
  if (cands.size() > 1) {
    std::vector<size_t> best =
        max_invariant_points(n.gens, n.ambient, cands, opts.invariant);
    if (!best.empty() && best[0] != 0) {
      n.gens = translate_gens(n.gens, n.ambient, cands[best[0]]);
      n.inv = compute_invariant(n.gens, n.ambient, opts.invariant);
    }
  }
  if (parent_inv && lex_compare(n.inv->invariant, *parent_inv) >= 0)
    throw DiagnosticError(
        "invariant failed to drop strictly from parent to an active chart (chart " +
        (n.chart ? n.chart->chart_var : std::string("?")) + ")");
}

std::vector<std::string> map_exceptional(const std::vector<std::string>& parent_exc,
                                         const Chart& chart) {
  std::vector<std::string> out{(*chart.variables)[0]};
  for (const std::string& e : parent_exc) {
    if (e == chart.chart_var) continue;  // consumed by the chart substitution
    if (var_index(chart.variables, e + "'") >= 0)
      out.push_back(e + "'");
    else if (var_index(chart.variables, e) >= 0)
      out.push_back(e);
  }
  return out;
}

std::string partial_summary(const ChartTree& tree, int round) {
  size_t active = 0;
  for (const TreeNode& n : tree.nodes)
    if (n.status == NodeStatus::Active) ++active;
  std::ostringstream os;
  os << "partial tree: " << tree.nodes.size() << " nodes, " << active
     << " active, stopped before round " << round;
  return os.str();
}

ChartTree blowup_loop(std::vector<Poly> root_gens, const Ambient& ambient,
                      const DriverOptions& opts, bool hypersurface) {
  ChartTree tree;
  TreeNode root;
  root.id = 0;
  root.ambient = ambient;
  root.gens = std::move(root_gens);
  init_node(root, nullptr, opts, hypersurface);
  tree.nodes.push_back(std::move(root));

  for (int round = 1;; ++round) {
    std::vector<int> frontier;
    for (const TreeNode& n : tree.nodes)
      if (n.status == NodeStatus::Active && n.round == round - 1)
        frontier.push_back(n.id);
    if (frontier.empty()) {
      tree.rounds = round - 1;
      break;
    }
    if (round > opts.max_rounds) {
      tree.rounds = round - 1;  // rounds fully expanded before giving up
      throw RoundsExhausted("round budget (" + std::to_string(opts.max_rounds) +
                                ") exhausted before principalization",
                            tree, partial_summary(tree, round));
    }

    for (int id : frontier) {
      // Copy what the tasks need: the node vector may reallocate as
      // children are appended.
      const TreeNode parent = tree.nodes[(size_t)id];
      const InvariantResult& pinv = *parent.inv;
      Center center = make_center(pinv);
      // The center lives in the block coordinates of the invariant; move
      // the generators there before pulling back to the charts.
      std::vector<Poly> gens_block;
      for (const Poly& f : parent.gens)
        gens_block.push_back(substitute(f, pinv.coord_change()));

      std::vector<Chart> charts = weighted_blowup(center);
      std::vector<std::future<TreeNode>> tasks;
      for (Chart& chart : charts) {
        // Seed the chart's divisor bookkeeping with the parent lineage.
        if (parent.chart)
          chart.exceptional_history = parent.chart->exceptional_history;
        tasks.push_back(std::async(
            std::launch::async,
            [&opts, &center, hypersurface](Chart ch, std::vector<Poly> gb,
                                           std::vector<std::string> pexc,
                                           Invariant pinv_inv, int pid,
                                           int child_round) -> TreeNode {
              Transformed tr = controlled_transform(
                  gb, ch, center,
                  hypersurface ? TransformMode::Proper : opts.mode);
              TreeNode child;
              child.parent = pid;
              child.round = child_round;
              child.ambient = ch.variables;
              child.gens = std::move(tr.gens);
              child.exceptional = map_exceptional(pexc, ch);
              child.chart = std::move(ch);
              init_node(child, &pinv_inv, opts, hypersurface);
              return child;
            },
            chart, gens_block, parent.exceptional, pinv.invariant, id, round));
      }
      for (auto& t : tasks) {
        TreeNode child = t.get();
        child.id = (int)tree.nodes.size();
        tree.nodes.push_back(std::move(child));
      }
    }
  }
  return tree;
}

}  // namespace

ChartTree principalize(const std::vector<Poly>& gens, const Ambient& ambient,
                       const DriverOptions& opts) {
  return blowup_loop(gens, ambient, opts, /*hypersurface=*/false);
}

DropReport verify_drop(const ChartTree& tree,
                       const std::vector<std::vector<Rat>>& sample_points,
                       const InvariantOptions& opts) {
  DropReport rep;
  for (const TreeNode& c : tree.nodes) {
    if (c.parent < 0) continue;
    const TreeNode& p = tree.nodes[(size_t)c.parent];
    if (!p.inv)
      throw StructuralError("verify_drop: tree node without a stored invariant");
    ++rep.edges;
    // Recompute the child invariant from its generators rather than trusting
    // the value stored on the node, so the report reflects the tree as given.
    InvariantResult at_origin = compute_invariant(c.gens, c.ambient, opts);
    int cmp = lex_compare(at_origin.invariant, p.inv->invariant);
    rep.checks.push_back(DropCheck{p.id, c.id, {}, cmp});
    if (cmp >= 0) rep.all_ok = false;
    for (const auto& pt : sample_points) {
      if (pt.size() != c.ambient->size())
        throw InputError("verify_drop: sample point has wrong dimension");
      if (pt[0] != 0)
        throw InputError(
            "verify_drop: sample points must lie on the exceptional divisor (u = 0)");
      std::vector<Poly> moved = translate_gens(c.gens, c.ambient, pt);
      InvariantResult at_pt = compute_invariant(moved, c.ambient, opts);
      int cmp_pt = lex_compare(at_pt.invariant, p.inv->invariant);
      rep.checks.push_back(DropCheck{p.id, c.id, pt, cmp_pt});
      if (cmp_pt >= 0) rep.all_ok = false;
    }
  }
  return rep;
}

namespace {

// --- univariate helpers for the squarefree probe ---------------------------

using UPoly = std::vector<Rat>;  // coefficient of t^i at index i

void u_trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int u_deg(const UPoly& p) { return (int)p.size() - 1; }  // -1 for zero

UPoly u_derivative(const UPoly& p) {
  UPoly d;
  for (size_t i = 1; i < p.size(); ++i) {
    Rat c = p[i] * (long)i;
    d.push_back(c);
  }
  u_trim(d);
  return d;
}

UPoly u_mod(UPoly a, const UPoly& b) {
  u_trim(a);
  while (u_deg(a) >= u_deg(b)) {
    Rat q = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) {
      Rat t = a[shift + i] - q * b[i];
      a[shift + i] = t;
    }
    u_trim(a);
  }
  return a;
}

int u_gcd_degree(UPoly a, UPoly b) {
  u_trim(a);
  u_trim(b);
  while (!b.empty()) {
    UPoly r = u_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return u_deg(a);
}

UPoly restrict_to_line(const Poly& f, const std::vector<Rat>& p,
                       const std::vector<Rat>& v) {
  Ambient line = make_ambient({"t"});
  Poly t = Poly::variable(line, 0);
  std::vector<Poly> images;
  for (size_t j = 0; j < p.size(); ++j)
    images.push_back(Poly::constant(line, p[j]) + t * v[j]);
  CoordChange C{f.ambient(), line, std::move(images), std::nullopt};
  Poly g = substitute(f, C);
  UPoly out;
  for (const auto& [mono, coeff] : g.terms()) {
    if (out.size() <= mono.exps[0]) out.resize(mono.exps[0] + 1, Rat(0));
    out[mono.exps[0]] = coeff;
  }
  u_trim(out);
  return out;
}

// A reduced polynomial restricts squarefree to a generic line, while the
// restriction of a repeated factor stays repeated on every line; three
// deterministic pseudo-random lines (never through the origin) decide.
bool probe_non_reduced(const Poly& f) {
  unsigned long deg = *f.degree();
  if (deg <= 1) return false;
  std::mt19937 rng(20260814u);
  std::uniform_int_distribution<int> off(1, 7), dir(1, 5);
  int positive_trials = 0;
  for (int trial = 0; trial < 3; ++trial) {
    UPoly g;
    for (int tries = 0;; ++tries) {
      if (tries > 32)
        throw StructuralError("squarefree probe: could not find a generic line");
      std::vector<Rat> p, v;
      for (int j = 0; j < f.nvars(); ++j) {
        p.push_back(Rat(off(rng)));
        v.push_back(Rat(dir(rng)));
      }
      g = restrict_to_line(f, p, v);
      if ((unsigned long)u_deg(g) == deg) break;  // top form survived
    }
    if (u_gcd_degree(g, u_derivative(g)) >= 1) ++positive_trials;
  }
  return positive_trials == 3;
}

}  // namespace

ChartTree resolve_hypersurface(const Poly& f, const DriverOptions& opts) {
  if (f.is_zero()) throw InputError("resolve: the zero polynomial is not a hypersurface");
  if (f.constant_term() != 0)
    throw InputError("resolve: a unit does not define a hypersurface through the origin");
  if (probe_non_reduced(f))
    throw InputError("resolve: the hypersurface is not reduced (repeated factor)");
  DriverOptions o = opts;
  o.mode = TransformMode::Proper;
  return blowup_loop({f}, f.ambient(), o, /*hypersurface=*/true);
}

std::vector<size_t> max_invariant_points(
    const std::vector<Poly>& gens, const Ambient& ambient,
    const std::vector<std::vector<Rat>>& candidates,
    const InvariantOptions& opts) {
  if (candidates.empty()) return {};
  std::optional<Invariant> best;
  std::vector<size_t> arg;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].size() != ambient->size())
      throw InputError("max_invariant_points: candidate has wrong dimension");
    std::vector<Poly> moved = translate_gens(gens, ambient, candidates[i]);
    InvariantResult r = compute_invariant(moved, ambient, opts);
    if (!best) {
      best = r.invariant;
      arg = {i};
    } else {
      int cmp = lex_compare(r.invariant, *best);
      if (cmp > 0) {
        best = r.invariant;
        arg = {i};
      } else if (cmp == 0) {
        arg.push_back(i);
      }
    }
  }
  return arg;
}

}  // namespace wres
