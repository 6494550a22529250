// Counts 4-colorings of a sparse random graph and compares the search-tree
// sizes of plain depth-first search and decomposition during search.
#include "dds/dds.hpp"

#include <cstdlib>
#include <iostream>

using namespace dds;

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 20;
  double p = argc > 2 ? std::atof(argv[2]) : 0.15;
  ColoringSpec spec{erdos_renyi(n, p, 7), 4};

  SearchOptions options;
  options.limit = std::nullopt;
  auto dfs = dfs_count(coloring_model(spec), options);
  auto dds = dds_count(coloring_model(spec), options);
  std::cout << n << " nodes, " << spec.graph.edges.size() << " edges, " << dds.count << " colorings\n";
  std::cout << "dfs nodes " << dfs.stats.nodes << ", dds nodes " << dds.stats.nodes << " ("
            << dds.stats.decomposition_nodes << " decompositions)\n";
}
