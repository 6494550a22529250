#pragma once

#include "dds/count.hpp"

#include <chrono>
#include <cstdint>

namespace dds {

/// Per-run search statistics.
///
/// Every visited node is exactly one of: a choice node, a decomposition node,
/// a failure leaf or a solution leaf. A solution leaf can stand for more than
/// one solution when its remaining variables are unconstrained, so
/// `solutions_found` counts leaves, not solutions.
struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t choice_nodes = 0;
  std::uint64_t decomposition_nodes = 0;
  std::uint64_t fails = 0;
  std::uint64_t solutions_found = 0;
  std::uint64_t propagations = 0;
  std::uint64_t max_depth = 0;
  std::chrono::nanoseconds wall_time{0};

  [[nodiscard]] std::uint64_t leaves() const { return fails + solutions_found; }
  [[nodiscard]] double seconds() const { return std::chrono::duration<double>(wall_time).count(); }
};

struct CountResult {
  Count count = 0;
  bool exact = true;  // false iff the cut-off stopped exploration
  SearchStats stats;
};

}  // namespace dds
