#include "obddc/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "obddc/cnf.hpp"
#include "obddc/compiler.hpp"
#include "obddc/decomposition.hpp"
#include "obddc/incidence.hpp"
#include "obddc/lowerbound.hpp"
#include "obddc/obdd.hpp"
#include "obddc/widths.hpp"

namespace obddc {

namespace {

using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file " + path);
  out << content;
}

DimacsResult load_cnf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file " + path);
  return parse_dimacs(in);
}

// "x3,x1,x2" or "3,1,2" in original DIMACS ids, mapped to dense ids.
Ordering parse_order_flag(const std::string& spec,
                          const std::vector<int>& original_ids) {
  std::vector<Var> vars;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty() && (item[0] == 'x' || item[0] == 'X'))
      item = item.substr(1);
    char* end = nullptr;
    long id = std::strtol(item.c_str(), &end, 10);
    if (end == item.c_str() || *end != '\0')
      throw ParseError("--order: bad variable token '" + item + "'");
    auto it = std::find(original_ids.begin(), original_ids.end(),
                        static_cast<int>(id));
    if (it == original_ids.end())
      throw StrategyError("--order: variable " + std::to_string(id) +
                          " does not occur in the formula");
    vars.push_back(static_cast<Var>(it - original_ids.begin()) + 1);
  }
  return Ordering::of(std::move(vars));
}

json guards_json(const Guards& g) {
  return json{{"subterm_vars", g.subterm_vars},
              {"stw_exact_vars", g.stw_exact_vars},
              {"sfw_exact_vars", g.sfw_exact_vars},
              {"min_obdd_vars", g.min_obdd_vars},
              {"equivalence_vars", g.equivalence_vars},
              {"expansion_vertices", g.expansion_vertices},
              {"fvs_budget", g.fvs_budget},
              {"treewidth_vertices", g.treewidth_vertices}};
}

std::vector<int> to_original(const Ordering& o,
                             const std::vector<int>& original_ids) {
  std::vector<int> out;
  out.reserve(o.size());
  for (Var v : o.vars()) out.push_back(original_ids.at(v - 1));
  return out;
}

struct CompileArgs {
  std::string input;
  std::string strategy = "auto";
  std::string order_spec;
  std::string td_path;
  int max_k = 10;
  int threads = 1;
  std::string out_path, dot_path, report_path;
};

int cmd_compile(const CompileArgs& a, std::ostream& out) {
  Guards guards = Guards::from_env();
  DimacsResult parsed = load_cnf(a.input);
  const Cnf& f = parsed.cnf;
  for (const auto& w : parsed.warnings) out << "warning: " << w << '\n';

  Obdd diagram = Obdd::constant(false);
  CompileReport report;
  if (f.has_empty_clause() || f.empty()) {
    std::tie(diagram, report) = compile(f, Strategy::auto_select(), guards);
  } else if (a.strategy == "explicit") {
    if (a.order_spec.empty())
      throw StrategyError("--strategy explicit requires --order");
    Ordering order = parse_order_flag(a.order_spec, parsed.original_ids);
    if (!order.covers_exactly(f.variables()))
      throw StrategyError("--order must cover every variable exactly once");
    std::tie(diagram, report) =
        compile(f, Strategy::explicit_order_of(order), guards);
  } else if (a.strategy == "convex") {
    std::tie(diagram, report) = compile(f, Strategy::convex(), guards);
  } else if (a.strategy == "pathwidth") {
    if (!a.td_path.empty()) {
      std::ifstream td_in(a.td_path);
      if (!td_in) throw ParseError("cannot open " + a.td_path);
      TreeDecomposition td = read_pace_td(td_in);
      PathDecomposition pd = tree_to_path(td);
      Ordering order = forget_ordering(pd, f);
      std::tie(diagram, report) =
          compile(f, Strategy::explicit_order_of(order), guards);
      report.strategy = "pathwidth";
    } else {
      std::tie(diagram, report) = compile(f, Strategy::pathwidth(), guards);
    }
  } else if (a.strategy == "deletion") {
    std::tie(diagram, report) = compile(f, Strategy::deletion(a.max_k), guards);
  } else {
    std::tie(diagram, report) = compile(f, Strategy::auto_select(), guards);
  }

  if (!a.out_path.empty()) write_file(a.out_path, serialize_obdd(diagram));
  if (!a.dot_path.empty()) write_file(a.dot_path, obdd_to_dot(diagram));

  out << "strategy: " << report.strategy << '\n';
  out << "ordering:";
  for (int id : to_original(report.ordering, parsed.original_ids))
    out << " " << id;
  out << '\n';
  out << "level_widths:";
  for (long long w : report.level_widths) out << " " << w;
  out << '\n';
  out << "measured_stw: " << report.measured_stw << '\n';
  out << "size_before_reduce: " << report.size_before_reduce << '\n';
  out << "size_after_reduce: " << report.size_after_reduce << '\n';

  if (!a.report_path.empty()) {
    json j;
    j["schema"] = 1;
    j["tool"] = "obddc";
    j["version"] = kToolVersion;
    j["manifest"] = {{"command", "compile"},
                     {"input", a.input},
                     {"strategy", a.strategy},
                     {"order", a.order_spec},
                     {"max_k", a.max_k},
                     {"td", a.td_path},
                     {"threads", a.threads},
                     {"guards", guards_json(guards)},
                     {"out", a.out_path},
                     {"dot", a.dot_path}};
    j["warnings"] = parsed.warnings;
    json result;
    result["strategy_used"] = report.strategy;
    result["ordering"] = to_original(report.ordering, parsed.original_ids);
    result["level_widths"] = report.level_widths;
    result["measured_stw"] = report.measured_stw;
    result["size_before_reduce"] = report.size_before_reduce;
    result["size_after_reduce"] = report.size_after_reduce;
    result["elapsed_ms"] = report.elapsed_ms;
    if (report.deletion_k >= 0) {
      result["deletion_k"] = report.deletion_k;
      result["stw_sigma_pi"] = report.stw_sigma_pi;
      result["stw_deleted"] = report.stw_deleted;
      result["deletion_bound_checked"] = report.deletion_bound_checked;
      result["deletion_bound_ok"] = report.deletion_bound_ok;
    }
    j["result"] = result;
    write_file(a.report_path, j.dump(2) + "\n");
  }
  return 0;
}

struct AnalyzeArgs {
  std::string input;
  bool stw_exact_flag = false;
  bool sfw_exact_flag = false;
  std::string csv_path, gr_path;
  int threads = 1;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  Guards guards = Guards::from_env();
  DimacsResult parsed = load_cnf(a.input);
  const Cnf& f = parsed.cnf;
  for (const auto& w : parsed.warnings) out << "warning: " << w << '\n';

  bool guard_skipped = false;
  IncidenceGraph inc = build_incidence(f);

  out << "vars: " << f.var_count() << '\n';
  out << "clauses: " << f.clause_count() << '\n';
  out << "size: " << cnf_size(f) << '\n';
  out << "degree: " << max_degree(inc) << '\n';

  auto witness = detect_left_convex(inc);
  out << "convex: " << (witness ? "yes" : "no") << '\n';
  if (witness) {
    out << "convex_witness:";
    for (int id : to_original(*witness, parsed.original_ids)) out << " " << id;
    out << '\n';
  }

  auto fvs = feedback_vertex_set(inc, guards.fvs_budget, guards);
  if (fvs)
    out << "fvs_size: " << fvs->size() << '\n';
  else
    out << "fvs_size: > " << guards.fvs_budget << '\n';

  TreeDecomposition td = min_fill_tree_decomposition(inc);
  out << "treewidth_minfill: " << td.width() << '\n';
  if (inc.vertex_count() <= guards.treewidth_vertices) {
    auto [tw, exact_td] = exact_treewidth_small(inc, guards);
    out << "treewidth_exact: " << tw << '\n';
  } else {
    out << "treewidth_exact: skipped (guard)\n";
  }

  Ordering profile_order = Ordering();
  {
    std::vector<Var> ids = f.variables();
    profile_order = Ordering::of(std::move(ids));
  }

  if (a.stw_exact_flag) {
    if (f.var_count() <= guards.stw_exact_vars) {
      auto [width, order] = stw_exact(f, guards);
      out << "stw_exact: " << width << '\n';
      out << "stw_exact_ordering:";
      for (int id : to_original(order, parsed.original_ids)) out << " " << id;
      out << '\n';
      profile_order = order;
    } else {
      out << "stw_exact: skipped (guard)\n";
      guard_skipped = true;
    }
  }

  if (a.sfw_exact_flag) {
    if (!is_graph_cnf(f)) {
      out << "sfw_exact: n/a (not a graph CNF)\n";
    } else if (f.var_count() <= guards.sfw_exact_vars) {
      auto [width, w] = sfw_exact(f, guards);
      out << "sfw_exact: " << width << '\n';
    } else {
      out << "sfw_exact: skipped (guard)\n";
      guard_skipped = true;
    }
  }

  if (!a.csv_path.empty()) {
    if (f.var_count() <= guards.subterm_vars) {
      WidthProfile profile = stw_for_ordering(f, profile_order, guards);
      write_file(a.csv_path, width_profile_csv(profile));
    } else {
      out << "csv: skipped (guard)\n";
      guard_skipped = true;
    }
  }
  if (!a.gr_path.empty()) write_file(a.gr_path, write_pace_gr(inc.as_graph()));

  return guard_skipped ? 3 : 0;
}

struct LbGenArgs {
  int n = 0, d = 3;
  std::uint64_t seed = 1;
  std::string out_path;
};

int cmd_lowerbound_gen(const LbGenArgs& a, std::ostream& out) {
  Guards guards = Guards::from_env();
  SimpleGraph g = gen_random_regular(a.n, a.d, a.seed);
  if (!a.out_path.empty()) write_file(a.out_path, write_edge_list(g));
  out << "n: " << g.n << '\n';
  out << "d: " << g.max_degree() << '\n';
  if (g.n <= guards.expansion_vertices) {
    out << "c: " << expansion_constant(g, guards).str() << '\n';
  } else {
    out << "c: skipped (guard)\n";
  }
  return 0;
}

struct LbVerifyArgs {
  std::string input;
  bool exact_min_obdd = false;
  std::string csv_path;
};

int cmd_lowerbound_verify(const LbVerifyArgs& a, std::ostream& out) {
  Guards guards = Guards::from_env();
  std::ifstream in(a.input);
  if (!in) throw ParseError("cannot open " + a.input);
  SimpleGraph g = read_edge_list(in);

  ExpanderCertificate cert = certify_expander(g, guards);
  Cnf f = graph_cnf(g);

  SweepRow row;
  row.n = cert.n;
  row.d = cert.degree;
  row.c = cert.expansion;
  // ceil(min{1,c} * n / (8 d))
  Rational mc = std::min(Rational{1, 1}, cert.expansion);
  long long denom = mc.den * 8 * cert.degree;
  row.sfw_lb = (mc.num * cert.n + denom - 1) / denom;

  bool guard_skipped = false;
  if (f.var_count() <= guards.sfw_exact_vars) {
    auto [width, witness] = sfw_exact(f, guards);
    row.sfw = width;
  } else if (a.exact_min_obdd) {
    guard_skipped = true;
  }
  if (a.exact_min_obdd) {
    if (f.var_count() <= guards.min_obdd_vars) {
      auto [size, order] = min_obdd_size_exact(f, guards);
      row.min_obdd = size;
      if (row.sfw && size < (1ll << *row.sfw))
        throw std::logic_error("lower bound violated: min OBDD size " +
                               std::to_string(size) + " < 2^" +
                               std::to_string(*row.sfw));
    } else {
      guard_skipped = true;
    }
  }

  out << SweepRow::csv_header() << '\n' << row.csv() << '\n';
  if (!a.csv_path.empty())
    write_file(a.csv_path, SweepRow::csv_header() + "\n" + row.csv() + "\n");
  return guard_skipped ? 3 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"CNF to OBDD compilation toolkit"};
  app.require_subcommand(1);

  CompileArgs ca;
  auto* compile_cmd = app.add_subcommand("compile", "compile a CNF to an OBDD");
  compile_cmd->add_option("input", ca.input, "DIMACS CNF file")->required();
  compile_cmd->add_option("--strategy", ca.strategy, "ordering strategy")
      ->check(CLI::IsMember({"auto", "convex", "pathwidth", "deletion",
                             "explicit"}));
  compile_cmd->add_option("--order", ca.order_spec,
                          "explicit variable order, e.g. x3,x1,x2");
  compile_cmd->add_option("--max-k", ca.max_k, "deletion budget");
  compile_cmd->add_option("--td", ca.td_path,
                          "PACE .td file driving the pathwidth strategy");
  compile_cmd->add_option("--threads", ca.threads, "worker threads");
  compile_cmd->add_option("--out", ca.out_path, "output .obdd file");
  compile_cmd->add_option("--dot", ca.dot_path, "DOT export");
  compile_cmd->add_option("--report", ca.report_path, "JSON report");

  AnalyzeArgs aa;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "structural analysis of a CNF");
  analyze_cmd->add_option("input", aa.input, "DIMACS CNF file")->required();
  analyze_cmd->add_flag("--stw-exact", aa.stw_exact_flag,
                        "exact subterm width (guarded)");
  analyze_cmd->add_flag("--sfw-exact", aa.sfw_exact_flag,
                        "exact subfunction width (guarded)");
  analyze_cmd->add_option("--csv", aa.csv_path, "width profile CSV");
  analyze_cmd->add_option("--gr", aa.gr_path, "PACE .gr export");
  analyze_cmd->add_option("--threads", aa.threads, "worker threads");

  auto* lb_cmd = app.add_subcommand("lowerbound", "expander lower-bound lab");
  lb_cmd->require_subcommand(1);
  LbGenArgs ga;
  auto* gen_cmd = lb_cmd->add_subcommand("gen", "generate a random regular graph");
  gen_cmd->add_option("--n", ga.n, "vertices")->required();
  gen_cmd->add_option("--d", ga.d, "degree");
  gen_cmd->add_option("--seed", ga.seed, "RNG seed");
  gen_cmd->add_option("--out", ga.out_path, "edge list output");

  LbVerifyArgs va;
  auto* verify_cmd =
      lb_cmd->add_subcommand("verify", "certify a graph and emit the sweep row");
  verify_cmd->add_option("input", va.input, "edge list file")->required();
  verify_cmd->add_flag("--exact-min-obdd", va.exact_min_obdd,
                       "run the exact minimum-OBDD oracle (guarded)");
  verify_cmd->add_option("--csv", va.csv_path, "sweep CSV output");

  std::vector<const char*> argv;
  argv.push_back("obddc");
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (compile_cmd->parsed()) return cmd_compile(ca, out);
    if (analyze_cmd->parsed()) return cmd_analyze(aa, out);
    if (gen_cmd->parsed()) return cmd_lowerbound_gen(ga, out);
    if (verify_cmd->parsed()) return cmd_lowerbound_verify(va, out);
    err << "error: no subcommand\n";
    return 1;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const StrategyError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace obddc
