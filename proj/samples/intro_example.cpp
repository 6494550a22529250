// Counts the four-variable pairwise-different CSP with both engines and
// prints its solutions from the AND/OR solution tree.
#include "dds/dds.hpp"

#include <iostream>

using namespace dds;

static ProblemState intro() {
  auto s = new_problem({{3, 5}, {3, 4}, {1, 2}, {1, 2}});
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) post(s, Neq{VarRef{i}, VarRef{j}});
  return s;
}

int main() {
  auto dfs = dfs_count(intro(), Heuristic::InputOrder);
  auto dds = dds_count(intro(), Heuristic::InputOrder);
  std::cout << "dfs: " << dfs.count << " solutions, " << dfs.stats.choice_nodes << " choices\n";
  std::cout << "dds: " << dds.count << " solutions, " << dds.stats.choice_nodes << " choices, "
            << dds.stats.decomposition_nodes << " decomposition\n";

  auto tree = dds_tree(intro());
  for (const auto& a : tree_expand(tree.tree, 10)) {
    const char* names = "ABCD";
    for (std::size_t i = 0; i < a.size(); ++i) std::cout << names[i] << "=" << a[i] << (i + 1 < a.size() ? " " : "\n");
  }
}
