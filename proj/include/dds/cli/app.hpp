#pragma once

#include "dds/cli/bench.hpp"
#include "dds/cli/model_document.hpp"
#include "dds/cli/report.hpp"
#include "dds/models/saw.hpp"
#include "dds/search/engine.hpp"
#include "dds/search/trace.hpp"
#include "dds/search/tree.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace dds::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

// "none" disables the cut-off; anything else is a non-negative decimal.
inline std::optional<Count> parse_limit(const std::string& text) {
  if (text == "none") return std::nullopt;
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::runtime_error("--limit expects a non-negative integer or 'none'");
  return from_decimal(text);
}

struct SolveArgs {
  std::string model;
  std::string engine = "dds";
  std::string heuristic = "maxdeg-ff";
  std::string limit = "1000000";
  std::string trace_dot;
  std::size_t trace_cap = 100000;
  std::string report = "text";
};

inline void add_solve_options(CLI::App* cmd, SolveArgs& a) {
  cmd->add_option("--model", a.model, "Model document (JSON)")->required();
  cmd->add_option("--engine", a.engine, "Search engine")->check(CLI::IsMember({"dfs", "dds"}))->capture_default_str();
  cmd->add_option("--heuristic", a.heuristic, "Variable selection")
      ->check(CLI::IsMember({"input", "ff", "maxdeg", "maxdeg-ff"}))
      ->capture_default_str();
  cmd->add_option("--limit", a.limit, "Stop once more solutions than this are proven ('none' disables)")
      ->capture_default_str();
  cmd->add_option("--trace-dot", a.trace_dot, "Write the search tree as Graphviz DOT");
  cmd->add_option("--trace-cap", a.trace_cap, "Maximum number of traced nodes")->capture_default_str();
  cmd->add_option("--report", a.report, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
}

struct Prepared {
  ModelDocument doc;
  SearchOptions options;
  std::optional<SearchTrace> trace;
};

inline Prepared prepare(const SolveArgs& a) {
  Prepared p{parse_model(read_file(a.model)), {}, std::nullopt};
  p.options.heuristic = *parse_heuristic(a.heuristic);
  p.options.limit = parse_limit(a.limit);
  if (!a.trace_dot.empty()) p.trace.emplace(a.trace_cap);
  return p;
}

inline void finish_trace(const SolveArgs& a, const Prepared& p) {
  if (p.trace) write_file(a.trace_dot, trace_dot(*p.trace));
}

inline int cmd_count(const SolveArgs& a, std::ostream& out) {
  Prepared p = prepare(a);
  if (p.trace) p.options.trace = &*p.trace;
  ProblemState root = build_problem(p.doc);
  CountResult r = a.engine == "dds" ? dds_count(std::move(root), p.options) : dfs_count(std::move(root), p.options);
  finish_trace(a, p);
  RunReport report = make_report(r, a.engine, p.options.heuristic);
  if (a.report == "json") out << report_json(report).dump(2) << "\n";
  else out << report_text(report);
  return 0;
}

inline int cmd_enumerate(const SolveArgs& a, std::size_t max_solutions, std::ostream& out) {
  Prepared p = prepare(a);
  if (p.trace) p.options.trace = &*p.trace;
  ProblemState root = build_problem(p.doc);
  TreeResult t = a.engine == "dds" ? dds_tree(std::move(root), p.options) : dfs_tree(std::move(root), p.options);
  finish_trace(a, p);
  auto solutions = tree_expand(t.tree, max_solutions);
  RunReport report = make_report({t.count, t.exact, t.stats}, a.engine, p.options.heuristic);

  if (a.report == "json") {
    nlohmann::ordered_json j = report_json(report);
    j["variables"] = nlohmann::ordered_json::array();
    for (const auto& v : p.doc.variables) j["variables"].push_back(v.name);
    j["solutions"] = solutions;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& s : solutions) {
      for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << p.doc.variables[i].name << "=" << s[i];
      out << "\n";
    }
    out << "\n" << report_text(report);
  }
  return 0;
}

inline void print_bench(const BenchConfig& config, const std::vector<BenchRow>& rows, bool json, std::ostream& out) {
  auto summary = summarize(config, rows);
  if (json) {
    nlohmann::ordered_json j;
    j["config"] = {{"nodes", config.nodes},
                   {"instances", config.instances},
                   {"colors", config.colors},
                   {"seed", config.seed},
                   {"heuristic", to_string(config.heuristic)},
                   {"limit", config.limit ? to_decimal(*config.limit) : "none"}};
    for (const auto& r : rows)
      j["instances"].push_back({{"edge_prob", r.edge_prob},
                                {"seed", r.seed},
                                {"edges", r.edges},
                                {"count", to_decimal(r.count)},
                                {"exact", r.exact},
                                {"dfs_nodes", r.dfs.nodes},
                                {"dds_nodes", r.dds.nodes},
                                {"dfs_time_ns", r.dfs.wall_time.count()},
                                {"dds_time_ns", r.dds.wall_time.count()},
                                {"rel_rt", r.time_ratio()},
                                {"st_size", r.tree_ratio()}});
    for (const auto& s : summary)
      j["summary"].push_back({{"edge_prob", s.edge_prob},
                              {"instances", s.instances},
                              {"rel_rt", s.mean_time_ratio},
                              {"st_size", s.mean_tree_ratio},
                              {"cut_off", s.cut_off}});
    out << j.dump(2) << "\n";
    return;
  }

  out << std::fixed;
  out << "# per instance (ratios are DFS / DDS)\n";
  out << "  P^e    seed          edges  count          dfs_nodes  dds_nodes  rel.RT   ST size\n";
  for (const auto& r : rows) {
    std::string count = to_decimal(r.count) + (r.exact ? "" : "+");
    out << "  " << std::setprecision(2) << r.edge_prob << "   " << std::left << std::setw(12) << r.seed << "  "
        << std::setw(5) << r.edges << "  " << std::setw(13) << count << "  " << std::setw(9) << r.dfs.nodes << "  "
        << std::setw(9) << r.dds.nodes << "  " << std::right << std::setw(7) << r.time_ratio() << "  "
        << std::setw(7) << r.tree_ratio() << "\n";
  }
  out << "\n# mean ratios DFS / DDS, n = " << config.nodes << ", " << config.colors << " colors\n";
  out << "  P^e    instances  rel.RT   ST size  cut off\n";
  for (const auto& s : summary)
    out << "  " << std::setprecision(2) << s.edge_prob << "   " << std::setw(9) << s.instances << "  " << std::setw(7)
        << s.mean_time_ratio << "  " << std::setw(7) << s.mean_tree_ratio << "  " << std::setw(7) << s.cut_off << "\n";
}

}  // namespace detail

/// Runs the command line `args` (without the program name). Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting and enumerating CSP solutions with decomposition during search", "dds"};
  app.require_subcommand(1);

  detail::SolveArgs count_args, enum_args;
  auto* count = app.add_subcommand("count", "Count the solutions of a model");
  detail::add_solve_options(count, count_args);

  std::size_t max_solutions = 100;
  auto* enumerate = app.add_subcommand("enumerate", "List solutions of a model");
  detail::add_solve_options(enumerate, enum_args);
  enumerate->add_option("--max-solutions", max_solutions, "Number of solutions to print")->capture_default_str();

  ColoringSpec coloring;
  double edge_prob = 0.2;
  std::uint64_t seed = 1;
  std::string output;
  auto* gen_coloring = app.add_subcommand("gen-coloring", "Emit a random graph-coloring model");
  gen_coloring->add_option("--nodes", coloring.graph.n, "Number of nodes")->required()->check(CLI::NonNegativeNumber);
  gen_coloring->add_option("--edge-prob", edge_prob, "Edge probability")->required()->check(CLI::Range(0.0, 1.0));
  gen_coloring->add_option("--colors", coloring.colors, "Number of colors")->required()->check(CLI::PositiveNumber);
  gen_coloring->add_option("--seed", seed, "Generator seed")->capture_default_str();
  gen_coloring->add_option("--output", output, "Write to a file instead of standard output");

  WalkSpec walk;
  int bound = 0;
  auto* gen_saw = app.add_subcommand("gen-saw", "Emit a self-avoiding-walk model on the square lattice");
  gen_saw->add_option("--length", walk.length, "Number of monomers")->required()->check(CLI::PositiveNumber);
  gen_saw->add_option("--bound", bound, "Half-width of the lattice box (default: length)");
  gen_saw->add_option("--output", output, "Write to a file instead of standard output");

  BenchConfig bench_config;
  std::string bench_heuristic = "maxdeg-ff", bench_limit = "1000000", bench_report = "text";
  auto* bench = app.add_subcommand("bench", "Compare DFS and DDS on random graph-coloring instances");
  bench->add_option("--nodes", bench_config.nodes, "Nodes per graph")->capture_default_str();
  bench->add_option("--edge-prob", bench_config.edge_probs, "Edge probabilities")->capture_default_str();
  bench->add_option("--colors", bench_config.colors, "Number of colors")->capture_default_str();
  bench->add_option("--instances", bench_config.instances, "Instances per edge probability")->capture_default_str();
  bench->add_option("--seed", bench_config.seed, "Base seed")->capture_default_str();
  bench->add_option("--heuristic", bench_heuristic, "Variable selection")
      ->check(CLI::IsMember({"input", "ff", "maxdeg", "maxdeg-ff"}))
      ->capture_default_str();
  bench->add_option("--limit", bench_limit, "Cut-off per run ('none' disables)")->capture_default_str();
  bench->add_option("--report", bench_report, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*count) return detail::cmd_count(count_args, out);
    if (*enumerate) return detail::cmd_enumerate(enum_args, max_solutions, out);
    if (*gen_coloring) {
      coloring.graph = erdos_renyi(coloring.graph.n, edge_prob, seed);
      std::string text = serialize_model(document_from(coloring_model(coloring), "v"));
      if (output.empty()) out << text;
      else detail::write_file(output, text);
      return 0;
    }
    if (*gen_saw) {
      walk.bound = bound > 0 ? bound : walk.length;
      std::string text = serialize_model(document_from(saw_model(walk), "m"));
      if (output.empty()) out << text;
      else detail::write_file(output, text);
      return 0;
    }
    if (*bench) {
      bench_config.heuristic = *parse_heuristic(bench_heuristic);
      bench_config.limit = detail::parse_limit(bench_limit);
      auto rows = run_bench(bench_config);
      detail::print_bench(bench_config, rows, bench_report == "json", out);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace dds::cli
