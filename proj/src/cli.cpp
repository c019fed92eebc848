#include "wres/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wres/json_io.hpp"
#include "wres/parse.hpp"

namespace wres {

namespace {

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!isspace((unsigned char)c)) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// "x=1,y=-1/2" -> [(x, 1), (y, -1/2)]
std::vector<std::pair<std::string, Rat>> parse_assignments(const std::string& text) {
  std::vector<std::pair<std::string, Rat>> out;
  for (const std::string& item : split_names(text)) {
    size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= item.size())
      throw ParseError("bad point assignment '" + item + "', expected name=value");
    out.emplace_back(item.substr(0, eq), rat_parse(item.substr(eq + 1)));
  }
  return out;
}

// A point in the given ring; every listed name must exist.
std::vector<Rat> strict_point(const std::vector<std::pair<std::string, Rat>>& as,
                              const Ambient& amb) {
  std::vector<Rat> p(amb->size(), Rat(0));
  for (const auto& [name, val] : as) {
    int j = var_index(amb, name);
    if (j < 0) throw InputError("--at names unknown variable '" + name + "'");
    p[(size_t)j] = val;
  }
  return p;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw InputError("failed writing '" + path + "'");
}

void maybe_write_json(const Request& req, const nlohmann::json& j) {
  if (!req.json_path.empty()) write_file(req.json_path, j.dump(2) + "\n");
}

void maybe_write_dot(const Request& req, const ChartTree& tree) {
  if (!req.dot_path.empty()) write_file(req.dot_path, tree_dot(tree));
}

std::string point_str(const std::vector<Rat>& p) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) os << ", ";
    os << rat_str(p[i]);
  }
  os << ")";
  return os.str();
}

void print_filtration(const WFiltration& F, std::ostream& out) {
  for (size_t i = 0; i < F.blocks.size(); ++i) {
    out << "block " << i << ": {";
    for (size_t j = 0; j < F.blocks[i].vars.size(); ++j) {
      if (j) out << ", ";
      out << (*F.ambient)[F.blocks[i].vars[j]];
    }
    out << "} weight " << rat_str(F.blocks[i].weight) << "\n";
  }
  out << "residual:";
  if (F.residual.empty()) {
    out << " (none)";
  } else {
    for (size_t i = 0; i < F.residual.size(); ++i)
      out << (i ? ", " : " ") << (*F.ambient)[F.residual[i]];
  }
  out << "\n";
}

void print_invariant_result(const InvariantResult& res, const Request& req,
                            std::ostream& out) {
  out << "inv = " << format_invariant(res.invariant) << "\n";
  out << "terminated_by = " << termination_name(res.invariant.terminated_by)
      << "\n";
  print_filtration(res.filtration, out);
  if (req.trace) {
    for (const TraceStep& t : res.trace)
      out << "trace: s=" << t.s << " H=" << rat_str(t.H) << " case="
          << (t.case_a ? "A" : "B") << "\n";
    const CoordChange& U = res.coord_change();
    for (size_t j = 0; j < U.images.size(); ++j)
      if (!(U.images[j] == Poly::variable(U.target, (int)j)))
        out << "coord: " << (*U.source)[j] << " -> " << U.images[j].str() << "\n";
  }
}

void print_tree(const ChartTree& tree, std::ostream& out) {
  for (const TreeNode& n : tree.nodes) {
    out << "node " << n.id << ": ";
    if (n.chart)
      out << "chart " << n.chart->chart_var << " (parent " << n.parent
          << ", round " << n.round << ")";
    else
      out << "root, round 0";
    out << ", status " << status_name(n.status);
    if (n.inv) out << ", inv = " << format_invariant(n.inv->invariant);
    out << "\n";
  }
  out << "rounds = " << tree.rounds << "\n";
}

nlohmann::json invariant_artifact(const InvariantResult& res, bool with_trace) {
  nlohmann::json j = invariant_json(res.invariant);
  if (with_trace) j["trace"] = trace_json(res.trace);
  return j;
}

int run_invariant(const Request& req, const Ambient& amb,
                  const std::vector<Poly>& gens, const InvariantOptions& iopts,
                  std::ostream& out) {
  std::vector<std::vector<Rat>> points;
  for (const std::string& t : req.at_texts)
    points.push_back(strict_point(parse_assignments(t), amb));
  if (points.empty()) points.push_back(std::vector<Rat>(amb->size(), Rat(0)));

  nlohmann::json arr = nlohmann::json::array();
  for (size_t i = 0; i < points.size(); ++i) {
    std::vector<Poly> moved = gens;
    bool origin = true;
    for (const Rat& x : points[i])
      if (x != 0) origin = false;
    if (!origin) {
      CoordChange C = coord_translation(amb, points[i]);
      for (Poly& f : moved) f = substitute(f, C);
      out << "at " << point_str(points[i]) << ":\n";
    }
    InvariantResult res = compute_invariant(moved, amb, iopts);
    print_invariant_result(res, req, out);
    arr.push_back(invariant_artifact(res, req.trace));
  }
  maybe_write_json(req, arr.size() == 1 ? arr[0] : arr);
  return 0;
}

int run_center(const Request& req, const Ambient& amb,
               const std::vector<Poly>& gens, const InvariantOptions& iopts,
               std::ostream& out) {
  InvariantResult res = compute_invariant(gens, amb, iopts);
  Center c = make_center(res);
  for (size_t i = 0; i < c.block_vars.size(); ++i) {
    out << "block " << i << ": {";
    for (size_t j = 0; j < c.block_vars[i].size(); ++j) {
      if (j) out << ", ";
      out << (*amb)[c.block_vars[i][j]];
    }
    out << "} weight " << int_str(c.weights[i]) << "\n";
  }
  out << "threshold = " << int_str(c.threshold) << "\n";
  maybe_write_json(req, center_json(c));
  return 0;
}

int run_blowup(const Request& req, const Ambient& amb,
               const std::vector<Poly>& gens, const InvariantOptions& iopts,
               std::ostream& out) {
  InvariantResult res = compute_invariant(gens, amb, iopts);
  Center c = make_center(res);
  std::vector<Chart> charts = weighted_blowup(c);
  nlohmann::json arr = nlohmann::json::array();
  for (const Chart& ch : charts) {
    out << "chart " << ch.chart_var << ": ";
    for (size_t v = 0; v < amb->size(); ++v) {
      if (v) out << ", ";
      out << (*amb)[v] << " = " << ch.substitution.images[v].str();
    }
    out << "; group = " << int_str(ch.group_order) << "; action = (";
    for (size_t a = 0; a < ch.action_weights.size(); ++a) {
      if (a) out << ", ";
      out << int_str(ch.action_weights[a]);
    }
    out << ")\n";
    arr.push_back(chart_json(ch));
  }
  maybe_write_json(req, arr);
  return 0;
}

DriverOptions driver_options(const Request& req, const Ambient& amb,
                             const InvariantOptions& iopts, bool with_points) {
  DriverOptions d;
  d.max_rounds = req.max_rounds;
  d.mode = req.transform == "proper" ? TransformMode::Proper
                                     : TransformMode::Controlled;
  d.invariant = iopts;
  if (with_points)
    for (const std::string& t : req.at_texts)
      d.candidate_points.push_back(strict_point(parse_assignments(t), amb));
  return d;
}

int run_tree_command(const Request& req, const Ambient& amb,
                     const std::vector<Poly>& gens, const InvariantOptions& iopts,
                     std::ostream& out, std::ostream& err) {
  DriverOptions dopts = driver_options(req, amb, iopts, /*with_points=*/true);
  ChartTree tree;
  try {
    if (req.command == "resolve") {
      if (gens.size() != 1)
        throw InputError("resolve expects exactly one hypersurface (-i once)");
      tree = resolve_hypersurface(gens[0], dopts);
    } else {
      tree = principalize(gens, amb, dopts);
    }
  } catch (const RoundsExhausted& e) {
    err << "resource error: " << e.what() << " (" << e.partial() << ")\n";
    maybe_write_json(req, tree_json(e.tree));
    maybe_write_dot(req, e.tree);
    return 4;
  }
  print_tree(tree, out);
  maybe_write_json(req, tree_json(tree));
  maybe_write_dot(req, tree);
  return 0;
}

int run_verify(const Request& req, const Ambient& amb,
               const std::vector<Poly>& gens, const InvariantOptions& iopts,
               std::ostream& out, std::ostream& err) {
  DriverOptions dopts = driver_options(req, amb, iopts, /*with_points=*/false);
  ChartTree tree = principalize(gens, amb, dopts);

  // --at assignments name child-chart coordinates; names absent from a
  // given chart are ignored there, and the exceptional parameter (the
  // first chart variable) must stay 0.
  std::vector<std::vector<std::pair<std::string, Rat>>> named;
  for (const std::string& t : req.at_texts) named.push_back(parse_assignments(t));

  DropReport rep;
  for (const TreeNode& c : tree.nodes) {
    if (c.parent < 0) continue;
    std::vector<std::vector<Rat>> pts;
    for (const auto& as : named) {
      std::vector<Rat> p(c.ambient->size(), Rat(0));
      for (const auto& [name, val] : as) {
        int j = var_index(c.ambient, name);
        if (j == 0 && val != 0)
          throw InputError("--at must keep the exceptional coordinate at 0");
        if (j >= 0) p[(size_t)j] = val;
      }
      pts.push_back(std::move(p));
    }
    ChartTree edge;
    edge.nodes.push_back(tree.nodes[(size_t)c.parent]);
    edge.nodes.push_back(c);
    edge.nodes[0].parent = -1;
    edge.nodes[1].parent = 0;
    DropReport one = verify_drop(edge, pts, iopts);
    rep.edges += one.edges;
    for (DropCheck& chk : one.checks) {
      chk.parent = c.parent;
      chk.child = c.id;
      rep.checks.push_back(chk);
      if (chk.cmp >= 0) rep.all_ok = false;
    }
  }

  for (const DropCheck& chk : rep.checks) {
    bool show = req.trace || chk.cmp >= 0;
    if (!show) continue;
    out << "edge " << chk.parent << "->" << chk.child << " at "
        << (chk.point.empty() ? std::string("origin") : point_str(chk.point))
        << ": " << (chk.cmp < 0 ? "strict drop" : "NO STRICT DROP") << "\n";
  }
  if (rep.all_ok)
    out << "all " << rep.edges << " edges: strict drop\n";
  else
    err << "verification failed: some invariant did not drop strictly\n";
  maybe_write_json(req, drop_report_json(rep));
  maybe_write_dot(req, tree);
  return rep.all_ok ? 0 : 3;
}

}  // namespace

Request parse_request(const std::vector<std::string>& args) {
  Request req;
  CLI::App app{"weighted-center resolution invariants for polynomial ideals"};
  app.require_subcommand(1);

  std::string vars_csv;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-v,--vars", vars_csv, "comma-separated variable names")
        ->required();
    sub->add_option("-i,--ideal", req.ideal_texts,
                    "ideal generator (repeatable)")
        ->required();
    sub->add_option("--json", req.json_path, "write the JSON artifact here");
    sub->add_option("--dot", req.dot_path, "write the chart tree as Graphviz");
    sub->add_option("--max-rounds", req.max_rounds, "blow-up round budget");
    sub->add_option("--transform", req.transform, "transform rule")
        ->check(CLI::IsMember({"controlled", "proper"}));
    sub->add_option("--at", req.at_texts,
                    "point assignments like \"x=1,y=-1/2\" (repeatable)");
    sub->add_flag("--trace", req.trace, "print per-step details");
  };
  const std::pair<const char*, const char*> subs[] = {
      {"invariant", "compute the resolution invariant of an ideal"},
      {"center", "print the integerized weighted center and threshold"},
      {"blowup", "print the charts of the weighted blow-up at the center"},
      {"principalize", "iterate blow-ups until every chart is principal"},
      {"resolve", "resolve a reduced hypersurface (proper transforms)"},
      {"verify", "recheck the strict invariant drop along every edge"},
  };
  for (const auto& [name, desc] : subs) add_common(app.add_subcommand(name, desc));

  std::vector<std::string> full{"wres"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<char*> argv;
  argv.reserve(full.size());
  for (std::string& s : full) argv.push_back(s.data());
  try {
    app.parse((int)argv.size(), argv.data());
  } catch (const CLI::CallForHelp&) {
    req.command = "help";
    req.help_text = app.help();
    return req;
  } catch (const CLI::CallForAllHelp&) {
    req.command = "help";
    req.help_text = app.help("", CLI::AppFormatMode::All);
    return req;
  } catch (const CLI::ParseError& e) {
    throw ParseError(std::string("command line: ") + e.what());
  }
  for (CLI::App* sub : app.get_subcommands()) req.command = sub->get_name();
  req.var_names = split_names(vars_csv);
  if (req.var_names.empty())
    throw ParseError("--vars must name at least one variable");
  if (req.max_rounds < 1) throw ParseError("--max-rounds must be >= 1");

  if (const char* env = std::getenv("WRES_MAX_THETA_STEPS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (!end || *end != '\0' || v < 1)
      throw ParseError("WRES_MAX_THETA_STEPS must be a positive integer");
    req.max_theta_steps = v;
  }
  return req;
}

int run(const Request& req, std::ostream& out, std::ostream& err) {
  if (req.command == "help") {
    out << req.help_text;
    return 0;
  }
  Ambient amb = make_ambient(req.var_names);
  std::vector<Poly> gens;
  for (const std::string& t : req.ideal_texts) gens.push_back(parse_poly(t, amb));
  InvariantOptions iopts;
  iopts.max_theta_steps = req.max_theta_steps;

  if (req.command == "invariant") return run_invariant(req, amb, gens, iopts, out);
  if (req.command == "center") return run_center(req, amb, gens, iopts, out);
  if (req.command == "blowup") return run_blowup(req, amb, gens, iopts, out);
  if (req.command == "principalize" || req.command == "resolve")
    return run_tree_command(req, amb, gens, iopts, out, err);
  if (req.command == "verify") return run_verify(req, amb, gens, iopts, out, err);
  throw StructuralError("unknown command '" + req.command + "'");
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    Request req = parse_request(args);
    return run(req, std::cout, std::cerr);
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::Parse:
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
      case ErrorKind::Structural:
      case ErrorKind::Contract:
      case ErrorKind::Input:
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      case ErrorKind::Diagnostic:
        std::cerr << "diagnostic: " << e.what() << "\n";
        return 3;
      case ErrorKind::Resource: {
        std::cerr << "resource error: " << e.what() << "\n";
        const auto* r = dynamic_cast<const ResourceError*>(&e);
        if (r && !r->partial().empty()) std::cerr << r->partial() << "\n";
        return 4;
      }
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace wres
