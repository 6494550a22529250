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

std::vector<Scope> edge_sets(const ConstraintGraph& g) {
  std::vector<Scope> out;
  for (const auto& e : g.edges) out.push_back(e.vars);
  return out;
}

// Number of distinct restrictions of the solutions to `part`.
Count projected_count(const std::vector<Assignment>& solutions, const Scope& part) {
  std::set<std::vector<int>> seen;
  for (const auto& a : solutions) {
    std::vector<int> t;
    for (VarRef x : part) t.push_back(a[static_cast<std::size_t>(x.index)]);
    seen.insert(std::move(t));
  }
  return seen.size();
}

}  // namespace

TEST_CASE("constraint graph of the intro example") {
  auto s = intro();
  REQUIRE(s.propagate() == StateStatus::Branchable);
  auto g = build_constraint_graph(s);
  CHECK(g.nodes == Scope{A, B, C, D});
  CHECK(edge_sets(g) == std::vector<Scope>{{A, B}, {C, D}});
  CHECK(g.degrees() == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("constraint graph sees inside alldifferent") {
  auto s = new_problem({{0, 1}, {0, 1}, {2, 3}, {2, 3}});
  post(s, AllDifferent{{A, B, C, D}});
  REQUIRE(s.propagate() == StateStatus::Branchable);
  CHECK(edge_sets(build_constraint_graph(s)) == std::vector<Scope>{{A, B}, {C, D}});
}

TEST_CASE("linear over everything is one edge") {
  auto s = new_problem({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  post(s, Linear{{1, 2, 1, 3}, {A, B, C, D}, LinearRel::Leq, 9});
  REQUIRE(s.propagate() == StateStatus::Branchable);
  CHECK(edge_sets(build_constraint_graph(s)) == std::vector<Scope>{{A, B, C, D}});
}

TEST_CASE("components") {
  ConstraintGraph g;
  g.var_count = 4;
  g.nodes = {A, B, C, D};
  g.edges = {{{A, B}, {0}}, {{C, D}, {1}}};
  CHECK(components(g).components == std::vector<Scope>{{A, B}, {C, D}});

  ConstraintGraph chain;
  chain.var_count = 4;
  chain.nodes = {B, C, D};
  chain.edges = {{{B, C}, {0}}, {{C, D}, {1}}};
  CHECK(components(chain).components == std::vector<Scope>{{B, C, D}});

  ConstraintGraph none;
  none.var_count = 3;
  none.nodes = {A, B, C};
  CHECK(components(none).components == std::vector<Scope>{{A}, {B}, {C}});
}

TEST_CASE("try_decompose") {
  auto s = intro();
  REQUIRE(s.propagate() == StateStatus::Branchable);
  auto d = try_decompose(s);
  REQUIRE(d);
  CHECK(d->parts == std::vector<Scope>{{A, B}, {C, D}});
  CHECK(d->free.empty());
  CHECK(d->assigned.empty());

  auto clique = new_problem({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  post(clique, AllDifferent{{A, B, C}});
  REQUIRE(clique.propagate() == StateStatus::Branchable);
  CHECK_FALSE(try_decompose(clique));

  // one real component plus two assigned variables
  auto one = new_problem({{1}, {0, 1, 2}, {0, 1, 2}, {2}});
  post(one, Neq{B, C});
  REQUIRE(one.propagate() == StateStatus::Branchable);
  CHECK_FALSE(try_decompose(one));
  auto g = build_constraint_graph(one);
  auto analysis = analyze_components(one, g, std::vector<VarRef>{A, B, C, D});
  CHECK(analysis.parts == std::vector<Scope>{{B, C}});
  CHECK(analysis.assigned == Scope{A, D});

  // unconstrained unassigned variables are free, not parts
  auto loose = new_problem({{0, 1}, {0, 1}, {0, 1, 2}, {0, 1}});
  post(loose, Neq{A, B});
  REQUIRE(loose.propagate() == StateStatus::Branchable);
  auto lg = build_constraint_graph(loose);
  auto la = analyze_components(loose, lg, std::vector<VarRef>{A, B, C, D});
  CHECK(la.parts == std::vector<Scope>{{A, B}});
  CHECK(la.free == Scope{C, D});
}

TEST_CASE("decomposition factorizes the count") {
  // Every partial problem counted on its own multiplies up to the whole.
  testing::CspGenerator gen(4242);
  int decompositions = 0;
  for (int i = 0; i < 1000; ++i) {
    auto csp = gen.make(4, 8, 4, testing::Kinds::All);
    auto state = csp.state();
    Count whole = brute_force_count(csp.domains, csp.constraints);
    SearchOptions options;
    options.on_decompose = [&](const ProblemState& s, const Decomposition& d) {
      ++decompositions;
      // nested decompositions cover only the scope of the enclosing part
      Scope scope = d.free;
      for (const auto& part : d.parts) scope.insert(scope.end(), part.begin(), part.end());
      std::sort(scope.begin(), scope.end());
      CHECK(std::adjacent_find(scope.begin(), scope.end()) == scope.end());

      auto solutions = brute_force_solutions(s.domains(), s.constraints());
      Count product = 1;
      for (VarRef x : d.free) product *= s.domain(x).size();
      for (const auto& part : d.parts) product *= projected_count(solutions, part);
      CHECK(product == projected_count(solutions, scope));
    };
    CHECK(dds_count(std::move(state), options).count == whole);
  }
  CHECK(decompositions > 25);
}

TEST_CASE("partition is deterministic") {
  testing::CspGenerator gen(8);
  for (int i = 0; i < 50; ++i) {
    auto csp = gen.make();
    auto a = csp.state(), b = csp.state();
    if (a.propagate() == StateStatus::Failed) continue;
    b.propagate();
    CHECK(components(build_constraint_graph(a)).components == components(build_constraint_graph(b)).components);
  }
}
