#pragma once

#include "dds/search/heuristic.hpp"
#include "dds/search/stats.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace dds::cli {

struct RunReport {
  Count count = 0;
  bool exact = true;
  std::string engine;
  std::string heuristic;
  SearchStats stats;
};

inline RunReport make_report(const CountResult& r, const std::string& engine, Heuristic h) {
  return {r.count, r.exact, engine, to_string(h), r.stats};
}

inline nlohmann::ordered_json report_json(const RunReport& r) {
  return {{"count", to_decimal(r.count)},
          {"exact", r.exact},
          {"engine", r.engine},
          {"heuristic", r.heuristic},
          {"stats",
           {{"nodes", r.stats.nodes},
            {"choice_nodes", r.stats.choice_nodes},
            {"decomposition_nodes", r.stats.decomposition_nodes},
            {"fails", r.stats.fails},
            {"solutions_found", r.stats.solutions_found},
            {"propagations", r.stats.propagations},
            {"max_depth", r.stats.max_depth},
            {"wall_time_ns", r.stats.wall_time.count()}}}};
}

inline RunReport report_from_json(const nlohmann::json& j) {
  RunReport r;
  r.count = from_decimal(j.at("count").get<std::string>());
  r.exact = j.at("exact").get<bool>();
  r.engine = j.at("engine").get<std::string>();
  r.heuristic = j.at("heuristic").get<std::string>();
  const auto& s = j.at("stats");
  r.stats.nodes = s.at("nodes").get<std::uint64_t>();
  r.stats.choice_nodes = s.at("choice_nodes").get<std::uint64_t>();
  r.stats.decomposition_nodes = s.at("decomposition_nodes").get<std::uint64_t>();
  r.stats.fails = s.at("fails").get<std::uint64_t>();
  r.stats.solutions_found = s.at("solutions_found").get<std::uint64_t>();
  r.stats.propagations = s.at("propagations").get<std::uint64_t>();
  r.stats.max_depth = s.at("max_depth").get<std::uint64_t>();
  r.stats.wall_time = std::chrono::nanoseconds(s.at("wall_time_ns").get<std::int64_t>());
  return r;
}

inline std::string report_text(const RunReport& r) {
  std::ostringstream out;
  out << "count:               " << to_decimal(r.count) << (r.exact ? "" : " (cut off)") << "\n"
      << "exact:               " << (r.exact ? "true" : "false") << "\n"
      << "engine:              " << r.engine << "\n"
      << "heuristic:           " << r.heuristic << "\n"
      << "nodes:               " << r.stats.nodes << "\n"
      << "choice_nodes:        " << r.stats.choice_nodes << "\n"
      << "decomposition_nodes: " << r.stats.decomposition_nodes << "\n"
      << "fails:               " << r.stats.fails << "\n"
      << "solutions_found:     " << r.stats.solutions_found << "\n"
      << "propagations:        " << r.stats.propagations << "\n"
      << "max_depth:           " << r.stats.max_depth << "\n"
      << "wall_time_ms:        " << r.stats.seconds() * 1e3 << "\n";
  return out.str();
}

}  // namespace dds::cli
