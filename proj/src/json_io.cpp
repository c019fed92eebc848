#include "wres/json_io.hpp"

#include <sstream>

namespace wres {

using nlohmann::json;

nlohmann::json invariant_json(const Invariant& inv) {
  json entries = json::array();
  for (const Rat& e : inv.entries) entries.push_back(rat_str(e));
  return json{{"entries", entries},
              {"terminated_by", termination_name(inv.terminated_by)}};
}

nlohmann::json trace_json(const std::vector<TraceStep>& trace) {
  json out = json::array();
  for (const TraceStep& t : trace)
    out.push_back(json{{"s", t.s},
                       {"H", rat_str(t.H)},
                       {"case", t.case_a ? "A" : "B"}});
  return out;
}

nlohmann::json filtration_json(const WFiltration& F) {
  json blocks = json::array();
  for (const Block& b : F.blocks) {
    json vars = json::array();
    for (size_t j : b.vars) vars.push_back((*F.ambient)[j]);
    blocks.push_back(json{{"vars", vars}, {"weight", rat_str(b.weight)}});
  }
  json residual = json::array();
  for (size_t j : F.residual) residual.push_back((*F.ambient)[j]);
  return json{{"blocks", blocks}, {"residual", residual}};
}

nlohmann::json center_json(const Center& c) {
  json blocks = json::array();
  for (size_t i = 0; i < c.block_vars.size(); ++i) {
    json vars = json::array();
    for (size_t j : c.block_vars[i]) vars.push_back((*c.ambient)[j]);
    blocks.push_back(json{{"vars", vars}, {"weight", int_str(c.weights[i])}});
  }
  return json{{"blocks", blocks}, {"threshold", int_str(c.threshold)}};
}

nlohmann::json chart_json(const Chart& ch) {
  json subst = json::object();
  for (size_t v = 0; v < ch.parent->size(); ++v)
    subst[(*ch.parent)[v]] = ch.substitution.images[v].str();
  json action = json::array();
  for (const Int& a : ch.action_weights) action.push_back(a.get_si());
  return json{{"chart", ch.chart_var},
              {"subst", subst},
              {"group_order", ch.group_order.get_si()},
              {"action", action}};
}

nlohmann::json tree_json(const ChartTree& tree) {
  json nodes = json::array();
  for (const TreeNode& n : tree.nodes) {
    json gens = json::array();
    for (const Poly& f : n.gens) gens.push_back(f.str());
    json node{{"id", n.id},
              {"parent", n.parent},
              {"chart", n.chart ? json(n.chart->chart_var) : json(nullptr)},
              {"round", n.round},
              {"generators", gens},
              {"invariant", n.inv ? invariant_json(n.inv->invariant) : json(nullptr)},
              {"status", status_name(n.status)}};
    nodes.push_back(std::move(node));
  }
  return json{{"nodes", nodes}, {"rounds", tree.rounds}};
}

nlohmann::json drop_report_json(const DropReport& rep) {
  json checks = json::array();
  for (const DropCheck& c : rep.checks) {
    json pt = json::array();
    for (const Rat& x : c.point) pt.push_back(rat_str(x));
    checks.push_back(json{{"parent", c.parent},
                          {"child", c.child},
                          {"point", c.point.empty() ? json("origin") : json(pt)},
                          {"strict_drop", c.cmp < 0}});
  }
  return json{
      {"edges", rep.edges}, {"all_strict", rep.all_ok}, {"checks", checks}};
}

std::string tree_dot(const ChartTree& tree) {
  std::ostringstream os;
  os << "digraph charts {\n";
  for (const TreeNode& n : tree.nodes) {
    std::string label = (n.chart ? n.chart->chart_var : std::string("root")) +
                        " / " +
                        (n.inv ? format_invariant(n.inv->invariant)
                               : std::string("-")) +
                        " / " + status_name(n.status);
    os << "  n" << n.id << " [label=\"" << label << "\"];\n";
  }
  for (const TreeNode& n : tree.nodes)
    if (n.parent >= 0) os << "  n" << n.parent << " -> n" << n.id << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace wres
