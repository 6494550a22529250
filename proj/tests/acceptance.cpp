// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any of them fails.

#include "dds/cli/bench.hpp"
#include "dds/dds.hpp"
#include "support/random_csp.hpp"
#include "support/walk_oracle.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace dds;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream note;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) note << what;
    ok = ok && condition;
  }
};

ProblemState intro() {
  auto s = new_problem({{3, 5}, {3, 4}, {1, 2}, {1, 2}});
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) post(s, Neq{VarRef{i}, VarRef{j}});
  return s;
}

Count projected_count(const std::vector<Assignment>& solutions, const Scope& part) {
  std::set<std::vector<int>> seen;
  for (const auto& a : solutions) {
    std::vector<int> t;
    for (VarRef x : part) t.push_back(a[static_cast<std::size_t>(x.index)]);
    seen.insert(std::move(t));
  }
  return seen.size();
}

// The random CSP corpus shared by criteria 1, 4 and 9.
std::vector<testing::RandomCsp> corpus() {
  testing::CspGenerator gen(20240601);
  std::vector<testing::RandomCsp> out;
  for (int i = 0; i < 600; ++i) out.push_back(gen.make(4, 8, 4, testing::Kinds::WithoutSlide));
  return out;
}

// Both counters against brute force, every heuristic.
void engines_match_brute_force(Verdict& v, std::ostream& detail) {
  auto instances = corpus();
  std::size_t runs = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& csp = instances[i];
    Count truth = brute_force_count(csp.domains, csp.constraints);
    for (Heuristic h : all_heuristics) {
      auto dfs = dfs_count(csp.state(), h);
      auto dds = dds_count(csp.state(), h);
      ++runs;
      v.expect(dfs.count == truth && dds.count == truth && dfs.exact && dds.exact,
               "instance " + std::to_string(i) + " heuristic " + to_string(h) + " disagrees");
    }
  }
  detail << instances.size() << " instances, " << runs << " runs per engine";
}

void intro_structure(Verdict& v, std::ostream& detail) {
  auto dfs = dfs_count(intro(), Heuristic::InputOrder);
  auto dds = dds_count(intro(), Heuristic::InputOrder);
  v.expect(dfs.count == 6 && dds.count == 6, "count is not 6");
  v.expect(dfs.stats.choice_nodes == 5 && dfs.stats.decomposition_nodes == 0, "dfs shape");
  v.expect(dds.stats.choice_nodes == 2 && dds.stats.decomposition_nodes == 1, "dds shape");

  auto s = intro();
  v.expect(s.propagate() == StateStatus::Branchable, "intro root fails");
  v.expect(s.store_size() == 2, "store should keep A!=B and C!=D only");
  auto d = try_decompose(s);
  v.expect(d && d->parts == std::vector<Scope>{{VarRef{0}, VarRef{1}}, {VarRef{2}, VarRef{3}}}, "root parts");
  detail << "dfs " << dfs.stats.choice_nodes << " choices, dds " << dds.stats.choice_nodes << " choices and "
         << dds.stats.decomposition_nodes << " decomposition";
}

void alldifferent_hyperedges(Verdict& v, std::ostream& detail) {
  const VarRef w{0}, x{1}, y{2}, z{3};
  auto s = new_problem({{0, 1}, {0, 1}, {2, 3}, {2, 3}});
  std::vector<VarRef> vars{w, x, y, z};
  v.expect(filter_alldiff(s, vars) == PropagationResult::Stable, "filter should be stable");
  auto edges = alldiff_hyperedges(s, vars);
  v.expect(edges == HyperedgeSet{{w, x}, {y, z}}, "hyperedges differ");
  post(s, AllDifferent{vars});
  v.expect(s.propagate() == StateStatus::Branchable, "propagation fails");
  auto d = try_decompose(s);
  v.expect(d && d->parts.size() == 2, "no decomposition");
  detail << "hyperedges {w,x} {y,z}";
}

void decomposition_factorizes(Verdict& v, std::ostream& detail) {
  auto instances = corpus();
  std::size_t checked = 0;
  for (const auto& csp : instances) {
    SearchOptions o;
    o.on_decompose = [&](const ProblemState& s, const Decomposition& d) {
      ++checked;
      Scope scope = d.free;
      for (const auto& part : d.parts) scope.insert(scope.end(), part.begin(), part.end());
      std::sort(scope.begin(), scope.end());
      auto solutions = brute_force_solutions(s.domains(), s.constraints());
      Count product = 1;
      for (VarRef x : d.free) product *= s.domain(x).size();
      for (const auto& part : d.parts) product *= projected_count(solutions, part);
      v.expect(product == projected_count(solutions, scope), "a decomposition does not factorize");
    };
    for (Heuristic h : all_heuristics) {
      o.heuristic = h;
      dds_count(csp.state(), o);
    }
  }
  v.expect(checked >= 100, "too few decompositions to be meaningful");
  detail << checked << " decompositions checked";
}

void coloring_matches_chromatic(Verdict& v, std::ostream& detail) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 30; ++i) {
    int n = std::uniform_int_distribution<int>(4, 9)(rng);
    int k = std::uniform_int_distribution<int>(2, 4)(rng);
    double p = std::uniform_real_distribution<double>(0.1, 0.7)(rng);
    auto g = erdos_renyi(n, p, rng());
    Count truth = chromatic_oracle(g, k);
    v.expect(dds_count(coloring_model({g, k})).count == truth, "dds differs on graph " + std::to_string(i));
    v.expect(dfs_count(coloring_model({g, k})).count == truth, "dfs differs on graph " + std::to_string(i));
  }
  detail << "30 graphs, n <= 9, k <= 4";
}

void saw_counts(Verdict& v, std::ostream& detail) {
  const std::uint64_t expected[] = {4, 12, 36, 100, 284};
  for (int steps = 1; steps <= 5; ++steps) {
    int monomers = steps + 1;
    Count walks = testing::count_walks(monomers);
    v.expect(walks == expected[steps - 1], "walk oracle disagrees with the known series");
    v.expect(dds_count(saw_model({monomers, monomers})).count == walks, "dds walk count");
    v.expect(dfs_count(saw_model({monomers, monomers})).count == walks, "dfs walk count");
  }
  detail << "4 12 36 100 284";
}

void bench_trend(Verdict& v, std::ostream& detail) {
  auto start = std::chrono::steady_clock::now();
  cli::BenchConfig config;  // 15 nodes, 4 colors, 50 instances at 0.2, 0.3, 0.4
  auto rows = cli::run_bench(config);
  auto summary = cli::summarize(config, rows);
  double minutes = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 60.0;
  v.expect(summary.size() == 3, "missing densities");
  v.expect(summary[0].mean_tree_ratio > 1.0, "no gain at the sparsest density");
  for (std::size_t i = 1; i < summary.size(); ++i)
    v.expect(summary[i].mean_tree_ratio <= summary[i - 1].mean_tree_ratio, "gain grows with density");
  v.expect(minutes < 10.0, "bench took longer than ten minutes");
  detail << std::fixed << std::setprecision(2);
  for (const auto& s : summary)
    detail << "p=" << s.edge_prob << " ratio " << s.mean_tree_ratio << " (" << s.cut_off << " cut off); ";
  detail << minutes * 60.0 << " s";
}

// A satisfiable sparse graph on 0..m-1 whose maximum degree is exactly k-1,
// plus a (k+1)-clique on the following nodes.
UGraph short_circuit_graph(std::mt19937_64& rng, int k, int m) {
  UGraph g(m + k + 1);
  for (int i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m);
  std::vector<int> degree(static_cast<std::size_t>(m), 2);
  std::uniform_int_distribution<int> node(0, m - 1);
  for (int tries = 0; tries < 4 * m; ++tries) {
    int u = node(rng), w = node(rng);
    if (u == w || g.adjacent(u, w) || degree[u] >= k - 1 || degree[w] >= k - 1) continue;
    g.add_edge(u, w);
    ++degree[u];
    ++degree[w];
  }
  for (int i = m; i < m + k + 1; ++i)
    for (int j = i + 1; j < m + k + 1; ++j) g.add_edge(i, j);
  return g;
}

void short_circuit(Verdict& v, std::ostream& detail) {
  std::mt19937_64 rng(8);
  int instances = 0;
  std::uint64_t dfs_nodes = 0, dds_nodes = 0;
  for (int k : {3, 4}) {
    for (int i = 0; i < 10; ++i) {
      auto g = short_circuit_graph(rng, k, 6);
      UGraph sparse(6);
      for (auto [a, b] : g.edges)
        if (b < 6) sparse.add_edge(a, b);
      if (chromatic_oracle(sparse, k) == 0) continue;
      ++instances;

      auto make = [&] {
        ProblemState s(std::vector<Domain>(static_cast<std::size_t>(g.n), Domain::range(0, k - 1)));
        for (auto [a, b] : g.edges) post(s, Neq{VarRef{a}, VarRef{b}});
        return s;
      };
      SearchTrace trace;
      SearchOptions o;
      o.heuristic = Heuristic::MaxDegree;
      o.limit = std::nullopt;
      o.trace = &trace;
      auto dds = dds_count(make(), o);
      auto dfs = dfs_count(make(), Heuristic::MaxDegree, std::nullopt);
      v.expect(dds.count == 0 && dfs.count == 0, "instance should be unsatisfiable");
      v.expect(!trace.nodes.empty() && trace.nodes[0].kind == TraceKind::Decomposition, "root is not a decomposition");
      v.expect(trace.children(0).size() == 1, "a second part was explored after a failed one");
      v.expect(dds.stats.nodes < dfs.stats.nodes, "no node saving over dfs");
      dfs_nodes += dfs.stats.nodes;
      dds_nodes += dds.stats.nodes;
    }
  }
  v.expect(instances >= 10, "too few satisfiable sparse parts");
  detail << instances << " instances, nodes dfs " << dfs_nodes << " vs dds " << dds_nodes;
}

void cut_off(Verdict& v, std::ostream& detail) {
  auto instances = corpus();
  int truncated = 0;
  for (const auto& csp : instances) {
    Count truth = brute_force_count(csp.domains, csp.constraints);
    for (bool decompose : {false, true}) {
      SearchOptions o;
      o.limit = Count(10);
      auto r = decompose ? dds_count(csp.state(), o) : dfs_count(csp.state(), o);
      if (r.exact) {
        v.expect(r.count == truth, "exact count is wrong");
      } else {
        ++truncated;
        v.expect(truth > 10, "cut off below the limit");
        v.expect(r.count >= 10 && r.count <= truth, "cut-off count out of range");
      }
    }
  }
  detail << truncated << " truncated runs";
}

void linear_degenerates(Verdict& v, std::ostream& detail) {
  auto make = [] {
    auto s = new_problem(std::vector<std::vector<int>>(6, {0, 1, 2, 3}));
    Scope vars;
    for (int i = 0; i < 6; ++i) vars.push_back(VarRef{i});
    post(s, Linear{{1, 2, 3, 1, 2, 3}, vars, LinearRel::Eq, 15});
    return s;
  };
  for (Heuristic h : all_heuristics) {
    auto dfs = dfs_count(make(), h);
    auto dds = dds_count(make(), h);
    v.expect(dds.count == dfs.count && dds.count == brute_force_count(make()), "counts differ");
    v.expect(dds.stats.decomposition_nodes == 0, "decomposed under a global linear constraint");
    v.expect(dds.stats.nodes == dfs.stats.nodes && dds.stats.fails == dfs.stats.fails &&
                 dds.stats.choice_nodes == dfs.stats.choice_nodes,
             std::string("search trees differ under ") + to_string(h));
  }
  detail << "identical trees for every heuristic";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&, std::ostream&)>>> criteria{
      {"engines agree with brute force", engines_match_brute_force},
      {"intro example structure", intro_structure},
      {"alldifferent hyperedges", alldifferent_hyperedges},
      {"decomposition factorizes the count", decomposition_factorizes},
      {"coloring counts match the chromatic polynomial", coloring_matches_chromatic},
      {"self-avoiding walk counts", saw_counts},
      {"benchmark gain falls with density", bench_trend},
      {"short-circuit on a failed part", short_circuit},
      {"cut-off semantics", cut_off},
      {"degeneration under a global linear constraint", linear_degenerates},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    std::ostringstream detail;
    try {
      criteria[i].second(v, detail);
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (v.ok ? "PASS " : "FAIL ") << i + 1 << ": " << criteria[i].first << " (" << detail.str();
    if (!v.ok) std::cout << "; " << v.note.str();
    std::cout << ")" << std::endl;
    failed += v.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
