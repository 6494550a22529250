#pragma once

#include "dds/models/coloring.hpp"
#include "dds/search/engine.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace dds::cli {

/// Graph-coloring benchmark: DFS against DDS on seeded random graphs.
struct BenchConfig {
  int nodes = 15;
  std::vector<double> edge_probs{0.20, 0.30, 0.40};
  int instances = 50;
  int colors = 4;
  std::uint64_t seed = 1;
  Heuristic heuristic = Heuristic::MaxDegreeThenFirstFail;
  std::optional<Count> limit = Count(1'000'000);
};

struct BenchRow {
  double edge_prob = 0;
  std::uint64_t seed = 0;
  std::size_t edges = 0;
  Count count = 0;
  bool exact = true;
  SearchStats dfs, dds;

  [[nodiscard]] double tree_ratio() const {
    return static_cast<double>(dfs.nodes) / static_cast<double>(std::max<std::uint64_t>(dds.nodes, 1));
  }
  [[nodiscard]] double time_ratio() const {
    return static_cast<double>(dfs.wall_time.count()) / static_cast<double>(std::max<std::int64_t>(dds.wall_time.count(), 1));
  }
};

struct BenchSummary {
  double edge_prob = 0;
  int instances = 0;
  double mean_time_ratio = 0;  // mean over instances of DFS time / DDS time
  double mean_tree_ratio = 0;  // mean over instances of DFS nodes / DDS nodes
  int cut_off = 0;
};

/// Instance seeds are fixed by (base seed, density index, instance index).
inline std::uint64_t bench_instance_seed(std::uint64_t base, std::size_t density, int instance) {
  return base * 1'000'003ULL + density * 10'007ULL + static_cast<std::uint64_t>(instance);
}

inline std::vector<BenchRow> run_bench(const BenchConfig& config) {
  std::vector<BenchRow> rows;
  SearchOptions options;
  options.heuristic = config.heuristic;
  options.limit = config.limit;
  for (std::size_t pi = 0; pi < config.edge_probs.size(); ++pi) {
    for (int i = 0; i < config.instances; ++i) {
      BenchRow row;
      row.edge_prob = config.edge_probs[pi];
      row.seed = bench_instance_seed(config.seed, pi, i);
      ColoringSpec spec{erdos_renyi(config.nodes, row.edge_prob, row.seed), config.colors};
      row.edges = spec.graph.edges.size();
      CountResult dfs = dfs_count(coloring_model(spec), options);
      CountResult dds = dds_count(coloring_model(spec), options);
      row.count = dds.count;
      row.exact = dds.exact && dfs.exact;
      row.dfs = dfs.stats;
      row.dds = dds.stats;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// One summary per edge probability, in configuration order.
inline std::vector<BenchSummary> summarize(const BenchConfig& config, const std::vector<BenchRow>& rows) {
  std::vector<BenchSummary> out;
  for (double p : config.edge_probs) {
    BenchSummary s;
    s.edge_prob = p;
    for (const auto& r : rows) {
      if (r.edge_prob != p) continue;
      ++s.instances;
      s.mean_time_ratio += r.time_ratio();
      s.mean_tree_ratio += r.tree_ratio();
      s.cut_off += !r.exact;
    }
    if (s.instances > 0) {
      s.mean_time_ratio /= s.instances;
      s.mean_tree_ratio /= s.instances;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace dds::cli
