#include "dds/dds.hpp"
#include "support/random_csp.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace dds;

namespace {

const VarRef A{0}, B{1}, C{2}, D{3};

ProblemState intro() {
  auto s = new_problem({{3, 5}, {3, 4}, {1, 2}, {1, 2}});
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) post(s, Neq{VarRef{i}, VarRef{j}});
  return s;
}

void check_stats_shape(const SearchStats& s) {
  CHECK(s.nodes == s.choice_nodes + s.decomposition_nodes + s.leaves());
  CHECK(s.fails <= s.nodes);
}

}  // namespace

TEST_CASE("choose") {
  auto s = new_problem({{3, 5}, {0, 1, 2}});
  Scope both{A, B};
  auto b = choose(s, Heuristic::FirstFail, both);
  CHECK(b.variable == A);
  CHECK(b.value == 3);

  auto t = new_problem({{0, 1}, {0, 1}, {0, 1}});
  Scope all{A, B, C};
  CHECK(choose(t, Heuristic::MaxDegree, all, {1, 3, 1}).variable == B);
  CHECK(choose(t, Heuristic::InputOrder, all, {}).variable == A);
  CHECK(choose(t, Heuristic::FirstFail, all, {}).variable == A);
  CHECK(choose(t, Heuristic::MaxDegreeThenFirstFail, all, {2, 2, 2}).variable == A);

  auto u = new_problem({{0, 1, 2}, {0, 1}, {0, 1}});
  CHECK(choose(u, Heuristic::MaxDegreeThenFirstFail, all, {2, 1, 2}).variable == C);
  CHECK(choose(u, Heuristic::MaxDegree, all, {2, 1, 2}).variable == A);
}

TEST_CASE("heuristic names round-trip") {
  for (Heuristic h : all_heuristics) CHECK(parse_heuristic(to_string(h)) == h);
  CHECK_FALSE(parse_heuristic("random"));
}

TEST_CASE("counting the intro example") {
  auto dfs = dfs_count(intro(), Heuristic::InputOrder);
  CHECK(dfs.count == 6);
  CHECK(dfs.exact);
  CHECK(dfs.stats.choice_nodes == 5);
  CHECK(dfs.stats.decomposition_nodes == 0);
  check_stats_shape(dfs.stats);

  auto dds = dds_count(intro(), Heuristic::InputOrder);
  CHECK(dds.count == 6);
  CHECK(dds.stats.decomposition_nodes == 1);
  CHECK(dds.stats.choice_nodes == 2);
  check_stats_shape(dds.stats);

  for (Heuristic h : all_heuristics) {
    CHECK(dds_count(intro(), h).count == 6);
    CHECK(dfs_count(intro(), h).count == 6);
    CHECK(dds_count(intro(), h).stats.decomposition_nodes == 1);
  }
}

TEST_CASE("failed and trivial roots") {
  auto f = new_problem({{1}, {1}});
  post(f, Neq{A, B});
  CHECK(dfs_count(f.clone()).count == 0);
  CHECK(dds_count(f.clone()).count == 0);
  CHECK(dds_count(f.clone()).stats.nodes == 1);

  auto tri = coloring_model({[] {
                               UGraph g(3);
                               g.add_edge(0, 1);
                               g.add_edge(1, 2);
                               g.add_edge(0, 2);
                               return g;
                             }(),
                             3});
  CHECK(dfs_count(tri.clone()).count == 6);
  CHECK(dds_count(tri.clone()).count == 6);
}

TEST_CASE("engines agree with brute force for every heuristic") {
  testing::CspGenerator gen(17);
  for (int i = 0; i < 250; ++i) {
    auto csp = gen.make(3, 8, 5, testing::Kinds::All);
    Count truth = brute_force_count(csp.domains, csp.constraints);
    for (Heuristic h : all_heuristics) {
      auto dfs = dfs_count(csp.state(), h);
      auto dds = dds_count(csp.state(), h);
      CHECK(dfs.count == truth);
      CHECK(dds.count == truth);
      CHECK(dfs.exact);
      CHECK(dds.exact);
      check_stats_shape(dfs.stats);
      check_stats_shape(dds.stats);
    }
  }
}

TEST_CASE("cut-off counts only full solutions") {
  testing::CspGenerator gen(55);
  int truncated = 0;
  for (int i = 0; i < 300; ++i) {
    auto csp = gen.make(4, 8, 4, testing::Kinds::All);
    Count truth = brute_force_count(csp.domains, csp.constraints);
    for (int limit : {0, 1, 3, 10}) {
      for (bool decompose : {false, true}) {
        SearchOptions o;
        o.limit = Count(limit);
        auto r = decompose ? dds_count(csp.state(), o) : dfs_count(csp.state(), o);
        if (r.exact) {
          CHECK(r.count == truth);
        } else {
          ++truncated;
          CHECK(truth > limit);
          CHECK(r.count > limit);
          CHECK(r.count <= truth);
        }
      }
    }
  }
  CHECK(truncated > 100);
}

TEST_CASE("cut-off prunes search") {
  ColoringSpec spec{erdos_renyi(14, 0.15, 3), 4};
  SearchOptions unlimited, limited;
  unlimited.limit = std::nullopt;
  limited.limit = Count(100);
  auto full = dds_count(coloring_model(spec), unlimited);
  auto cut = dds_count(coloring_model(spec), limited);
  REQUIRE(full.count > 100);
  CHECK_FALSE(cut.exact);
  CHECK(cut.count > 100);
  CHECK(cut.stats.nodes < full.stats.nodes);
}

TEST_CASE("degeneration to depth-first search under one linear constraint") {
  auto make = [] {
    auto s = new_problem({{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}});
    post(s, Linear{{1, 2, 3, 1, 2}, {VarRef{0}, VarRef{1}, VarRef{2}, VarRef{3}, VarRef{4}}, LinearRel::Eq, 12});
    return s;
  };
  for (Heuristic h : all_heuristics) {
    auto dfs = dfs_count(make(), h);
    auto dds = dds_count(make(), h);
    CHECK(dds.count == dfs.count);
    CHECK(dds.count == brute_force_count(make()));
    CHECK(dds.stats.decomposition_nodes == 0);
    CHECK(dds.stats.nodes == dfs.stats.nodes);
    CHECK(dds.stats.fails == dfs.stats.fails);
    CHECK(dds.stats.choice_nodes == dfs.stats.choice_nodes);
  }
}

TEST_CASE("order_components") {
  // parts {A,B} and {C,D}; D has the largest degree
  auto s = new_problem({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  std::vector<Scope> parts{{A, B}, {C, D, VarRef{4}}};
  CHECK(order_components(parts, s, Heuristic::MaxDegree, {1, 1, 1, 2, 1}) == std::vector<Scope>{{C, D, VarRef{4}}, {A, B}});
  CHECK(order_components(parts, s, Heuristic::MaxDegree, {2, 1, 1, 1, 1}) == parts);
  CHECK(order_components(parts, s, Heuristic::InputOrder, {}) == parts);
  std::vector<Scope> reversed{{C, D, VarRef{4}}, {A, B}};
  CHECK(order_components(reversed, s, Heuristic::InputOrder, {}) == parts);

  auto f = new_problem({{0, 1, 2}, {0, 1, 2}, {0, 1}, {0, 1, 2}, {0, 1, 2}});
  CHECK(order_components(parts, f, Heuristic::FirstFail, {}).front() == Scope{C, D, VarRef{4}});
}

TEST_CASE("short-circuit skips the remaining partial problems") {
  // A 4-cycle (3-colorable) on 0..3 and a K4 on 4..7, both with 3 colors. Only
  // search finds the K4 infeasible; its higher degree puts it first.
  auto make = [] {
    UGraph g(8);
    for (int i = 0; i < 4; ++i) g.add_edge(i, (i + 1) % 4);
    for (int i = 4; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j) g.add_edge(i, j);
    auto s = new_problem(std::vector<std::vector<int>>(8, {0, 1, 2}));
    for (auto [u, v] : g.edges) post(s, Neq{VarRef{u}, VarRef{v}});
    return s;
  };
  REQUIRE(brute_force_count(make()) == 0);

  SearchTrace trace;
  SearchOptions o;
  o.heuristic = Heuristic::MaxDegree;
  o.trace = &trace;
  auto r = dds_count(make(), o);
  CHECK(r.count == 0);
  REQUIRE(trace.nodes[0].kind == TraceKind::Decomposition);
  CHECK(trace.children(0).size() == 1);  // the cycle was never entered

  auto dfs = dfs_count(make(), Heuristic::MaxDegree);
  CHECK(dfs.count == 0);
  CHECK(r.stats.nodes < dfs.stats.nodes);
}

TEST_CASE("solution trees") {
  auto t = dds_tree(intro(), {.heuristic = Heuristic::InputOrder});
  CHECK(t.tree.kind == SolutionTree::Kind::And);
  REQUIRE(t.tree.children.size() == 2);
  CHECK(t.tree.children[0].kind == SolutionTree::Kind::Or);
  CHECK(t.tree.children[0].leaf_count() == 3);
  CHECK(t.tree.children[1].leaf_count() == 2);
  CHECK(tree_count(t.tree.children[0]) == 3);
  CHECK(tree_count(t.tree.children[1]) == 2);
  CHECK(tree_count(t.tree) == 6);

  auto all = tree_expand(t.tree, 10);
  CHECK(all.size() == 6);
  std::set<Assignment> distinct(all.begin(), all.end());
  CHECK(distinct.size() == 6);
  auto truth = brute_force_solutions(intro().domains(), intro().constraints());
  CHECK(distinct == std::set<Assignment>(truth.begin(), truth.end()));
  CHECK(tree_expand(t.tree, 0).empty());
  CHECK(tree_expand(t.tree, 4).size() == 4);

  auto solved = new_problem({{1}, {2}});
  auto st = dds_tree(solved);
  CHECK(st.tree.kind == SolutionTree::Kind::Leaf);
  CHECK(tree_expand(st.tree, 5) == std::vector<Assignment>{{1, 2}});

  auto failed = new_problem({{1}, {1}});
  post(failed, Neq{A, B});
  auto ft = dds_tree(failed);
  CHECK(ft.tree.kind == SolutionTree::Kind::Or);
  CHECK(ft.tree.children.empty());
  CHECK(tree_count(ft.tree) == 0);
}

TEST_CASE("tree_count") {
  auto leaf = SolutionTree::leaf({{A, 1}});
  CHECK(tree_count(leaf) == 1);
  auto or3 = [&](VarRef x) {
    return SolutionTree::any_of({SolutionTree::leaf({{x, 0}}), SolutionTree::leaf({{x, 1}}), SolutionTree::leaf({{x, 2}})});
  };
  CHECK(tree_count(SolutionTree::all_of({}, {or3(A), or3(B)})) == 9);
  auto or2 = SolutionTree::any_of({SolutionTree::leaf({{B, 0}}), SolutionTree::leaf({{B, 1}})});
  auto and23 = SolutionTree::all_of({}, {or2, or3(C)});
  CHECK(tree_count(SolutionTree::any_of({and23, SolutionTree::leaf({{B, 5}, {C, 5}})})) == 7);
}

TEST_CASE("trees expand to the solution set") {
  testing::CspGenerator gen(606);
  for (int i = 0; i < 200; ++i) {
    auto csp = gen.make(3, 7, 4, testing::Kinds::All);
    auto truth = brute_force_solutions(csp.domains, csp.constraints);
    for (bool decompose : {false, true}) {
      auto t = decompose ? dds_tree(csp.state()) : dfs_tree(csp.state());
      auto counted = decompose ? dds_count(csp.state()).count : dfs_count(csp.state()).count;
      CHECK(tree_count(t.tree) == counted);
      CHECK(t.count == counted);
      auto expanded = tree_expand(t.tree, 1'000'000);
      std::multiset<Assignment> got(expanded.begin(), expanded.end()), want(truth.begin(), truth.end());
      CHECK(got == want);
    }
  }
}

TEST_CASE("trace export") {
  SearchTrace trace;
  SearchOptions o;
  o.heuristic = Heuristic::InputOrder;
  o.trace = &trace;
  auto r = dds_count(intro(), o);
  CHECK(trace.count(TraceKind::Decomposition) == 1);
  CHECK(trace.count(TraceKind::Choice) == r.stats.choice_nodes);
  CHECK(trace.nodes.size() == r.stats.nodes);
  std::string dot = trace_dot(trace);
  CHECK(dot.starts_with("digraph"));
  std::size_t decomposition_nodes = 0;
  for (std::size_t p = dot.find("kind=\"decomposition\""); p != std::string::npos;
       p = dot.find("kind=\"decomposition\"", p + 1))
    ++decomposition_nodes;
  CHECK(decomposition_nodes == 1);
  CHECK(dot.find("<table") != std::string::npos);
  CHECK(dot.find("shape=diamond") != std::string::npos);

  SearchTrace dfs_trace;
  o.trace = &dfs_trace;
  dfs_count(intro(), o);
  CHECK(dfs_trace.count(TraceKind::Decomposition) == 0);
  CHECK(trace_dot(dfs_trace).find("kind=\"decomposition\"") == std::string::npos);

  auto failed = new_problem({{1}, {1}});
  post(failed, Neq{A, B});
  SearchTrace ft;
  o.trace = &ft;
  dds_count(std::move(failed), o);
  REQUIRE(ft.nodes.size() == 1);
  CHECK(ft.nodes[0].kind == TraceKind::Failure);
  CHECK(trace_dot(ft).find("shape=box, style=filled") != std::string::npos);

  SearchTrace capped(3);
  o.trace = &capped;
  dfs_count(intro(), o);
  CHECK(capped.nodes.size() == 3);
  CHECK(capped.truncated);
}
