#pragma once

#include "dds/count.hpp"
#include "dds/graph.hpp"
#include "dds/search/heuristic.hpp"
#include "dds/search/stats.hpp"
#include "dds/search/trace.hpp"
#include "dds/search/tree.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <string>

namespace dds {

struct SearchOptions {
  Heuristic heuristic = Heuristic::MaxDegreeThenFirstFail;
  /// Cut-off: exploration stops once more than `limit` full solutions are
  /// proven to exist. Partial-problem solutions never count on their own.
  std::optional<Count> limit;
  SearchTrace* trace = nullptr;
  /// Called at every decomposition node with the propagated state.
  std::function<void(const ProblemState&, const Decomposition&)> on_decompose;
};

/// Orders partial problems: the one containing the variable the heuristic
/// picks over all of them goes first, the rest by lowest contained variable.
inline std::vector<Scope> order_components(std::vector<Scope> parts, const ProblemState& state, Heuristic h,
                                           const std::vector<int>& degrees) {
  std::sort(parts.begin(), parts.end(), [](const Scope& a, const Scope& b) {
    return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
  });
  Scope all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  VarRef selected = choose(state, h, all, degrees).variable;
  auto it = std::find_if(parts.begin(), parts.end(),
                         [&](const Scope& p) { return std::find(p.begin(), p.end(), selected) != p.end(); });
  if (it != parts.end()) std::rotate(parts.begin(), it, it + 1);
  return parts;
}

inline std::vector<Scope> order_components(std::vector<Scope> parts, const ProblemState& state, Heuristic h) {
  std::vector<int> degrees;
  if (uses_degree(h)) degrees = build_constraint_graph(state).degrees();
  return order_components(std::move(parts), state, h, degrees);
}

namespace detail {

inline Count domain_product(const ProblemState& state, std::span<const VarRef> vars) {
  Count p = 1;
  for (VarRef x : vars) p *= state.domain(x).size();
  return p;
}

inline PartialAssignment fixed_values(const ProblemState& state, std::span<const VarRef> vars) {
  PartialAssignment a;
  for (VarRef x : vars)
    if (state.assigned(x)) a.emplace_back(x, state.domain(x).value());
  return a;
}

// Solutions counted as numbers.
struct CountAlgebra {
  using Value = Count;
  Value failure() const { return 0; }
  Value solution(const ProblemState&, std::span<const VarRef>) const { return 1; }
  Value free_leaf(const ProblemState& state, std::span<const VarRef>, std::span<const VarRef> free) const {
    return domain_product(state, free);
  }
  Value choice(Value left, Value right) const { return left + right; }
  Value decomposition(const ProblemState& state, const Decomposition& d, std::vector<Value> parts) const {
    Value p = domain_product(state, d.free);
    for (auto& v : parts) p *= v;
    return p;
  }
};

// Solutions collected into an AND/OR tree: addition is union, multiplication
// is combination of partial solutions.
struct TreeAlgebra {
  using Value = SolutionTree;
  Value failure() const { return SolutionTree::empty(); }
  Value solution(const ProblemState& state, std::span<const VarRef> scope) const {
    PartialAssignment a = fixed_values(state, scope);
    std::sort(a.begin(), a.end());
    return SolutionTree::leaf(std::move(a));
  }
  Value free_leaf(const ProblemState& state, std::span<const VarRef> scope, std::span<const VarRef> free) const {
    PartialAssignment fixed = fixed_values(state, scope);
    std::sort(fixed.begin(), fixed.end());
    return SolutionTree::all_of(std::move(fixed), free_children(state, free));
  }
  Value choice(Value left, Value right) const {
    std::vector<SolutionTree> both;
    both.push_back(std::move(left));
    both.push_back(std::move(right));
    return SolutionTree::any_of(std::move(both));
  }
  Value decomposition(const ProblemState& state, const Decomposition& d, std::vector<Value> parts) const {
    PartialAssignment fixed = fixed_values(state, d.assigned);
    for (auto& c : free_children(state, d.free)) parts.push_back(std::move(c));
    return SolutionTree::all_of(std::move(fixed), std::move(parts));
  }

  static std::vector<SolutionTree> free_children(const ProblemState& state, std::span<const VarRef> free) {
    std::vector<SolutionTree> out;
    for (VarRef x : free) {
      std::vector<SolutionTree> leaves;
      for (int v : state.domain(x)) leaves.push_back(SolutionTree::leaf({{x, v}}));
      out.push_back(SolutionTree::any_of(std::move(leaves)));
    }
    return out;
  }
};

inline std::string branch_label(const BranchDecision& b, bool left) {
  return "x" + std::to_string(b.variable.index) + (left ? " = " : " != ") + std::to_string(b.value);
}

// Depth-first AND/OR search over a result algebra. With `decompose` off it
// is plain depth-first search: same propagation, same heuristic, no
// decomposition nodes.
template <class Algebra>
class Engine {
 public:
  struct Outcome {
    typename Algebra::Value value;
    Count count;
    bool exact;
  };

  Engine(const SearchOptions& options, bool decompose) : options_(options), decompose_(decompose) {}

  Outcome run(ProblemState root) {
    auto started = std::chrono::steady_clock::now();
    auto sink = std::make_shared<PropagationCounters>();
    root.set_counters(sink);
    Scope all;
    for (std::size_t i = 0; i < root.var_count(); ++i) all.push_back(VarRef{static_cast<int>(i)});
    Count cap = options_.limit ? *options_.limit + 1 : Count(0);
    Outcome out = solve(std::move(root), all, cap, 0, -1, "");
    stats_.propagations = sink->propagations;
    stats_.wall_time = std::chrono::steady_clock::now() - started;
    return out;
  }

  [[nodiscard]] const SearchStats& stats() const { return stats_; }

 private:
  // Only the root may be parentless; below a node dropped by the cap, nothing is recorded.
  int record(int parent, TraceKind kind, const std::string& label, std::string info = {}) {
    if (!options_.trace || (parent < 0 && !options_.trace->nodes.empty())) return -1;
    return options_.trace->add(parent, kind, label, std::move(info));
  }

  // `cap` == 0 means unlimited; otherwise stop once count >= cap.
  Outcome solve(ProblemState state, const Scope& scope, const Count& cap, std::uint64_t depth, int tparent,
                const std::string& label) {
    ++stats_.nodes;
    stats_.max_depth = std::max(stats_.max_depth, depth);

    if (state.propagate() == StateStatus::Failed) {
      ++stats_.fails;
      record(tparent, TraceKind::Failure, label);
      return {alg_.failure(), 0, true};
    }
    Scope open = unassigned_of(state, scope);
    if (open.empty()) {
      ++stats_.solutions_found;
      record(tparent, TraceKind::Solution, label);
      return {alg_.solution(state, scope), 1, true};
    }

    std::optional<ConstraintGraph> graph;
    std::vector<int> degrees;
    if (decompose_ || uses_degree(options_.heuristic)) {
      graph = build_constraint_graph(state);
      degrees = graph->degrees();
    }

    if (decompose_) {
      Decomposition d = analyze_components(state, *graph, scope);
      if (d.parts.empty()) return free_leaf(state, scope, d.free, tparent, label);
      if (d.parts.size() >= 2) return decompose(std::move(state), std::move(d), degrees, cap, depth, tparent, label);
    } else if (state.store_size() == 0) {
      return free_leaf(state, scope, open, tparent, label);
    }

    ++stats_.choice_nodes;
    BranchDecision b = choose(state, options_.heuristic, open, degrees);
    int id = record(tparent, TraceKind::Choice, label);

    ProblemState left = state.clone();
    left.tell(b.variable, Relation::Eq, b.value);
    Outcome l = solve(std::move(left), scope, cap, depth + 1, id, branch_label(b, true));
    if (cap != 0 && l.count >= cap) return {std::move(l.value), std::move(l.count), false};

    state.tell(b.variable, Relation::Neq, b.value);
    Count rest = cap == 0 ? Count(0) : Count(cap - l.count);
    Outcome r = solve(std::move(state), scope, rest, depth + 1, id, branch_label(b, false));
    return {alg_.choice(std::move(l.value), std::move(r.value)), l.count + r.count, r.exact};
  }

  Outcome free_leaf(const ProblemState& state, const Scope& scope, const Scope& free, int tparent,
                    const std::string& label) {
    ++stats_.solutions_found;
    record(tparent, TraceKind::Solution, label, std::to_string(free.size()) + " unconstrained");
    return {alg_.free_leaf(state, scope, free), domain_product(state, free), true};
  }

  Outcome decompose(ProblemState state, Decomposition d, const std::vector<int>& degrees, const Count& cap,
                    std::uint64_t depth, int tparent, const std::string& label) {
    ++stats_.decomposition_nodes;
    int id = record(tparent, TraceKind::Decomposition, label, std::to_string(d.parts.size()) + " parts");
    if (options_.on_decompose) options_.on_decompose(state, d);

    d.parts = order_components(std::move(d.parts), state, options_.heuristic, degrees);
    Count product = domain_product(state, d.free);
    bool exact = true;
    std::vector<typename Algebra::Value> values;
    for (std::size_t i = 0; i < d.parts.size(); ++i) {
      // Each later part contributes at least one solution if satisfiable, so
      // this part alone must reach cap / (what is already established).
      Count part_cap = cap == 0 ? Count(0) : dds::ceil_div(cap, product);
      Outcome o = solve(state.clone(), d.parts[i], part_cap, depth + 1, id, "part " + std::to_string(i + 1));
      if (o.count == 0) return {alg_.failure(), 0, true};  // short-circuit
      product *= o.count;
      exact = exact && o.exact;
      values.push_back(std::move(o.value));
    }
    return {alg_.decomposition(state, d, std::move(values)), product, exact};
  }

  SearchOptions options_;
  bool decompose_;
  Algebra alg_{};
  SearchStats stats_;
};

}  // namespace detail

/// Plain depth-first counting: choice nodes only, counts of the two branches added.
inline CountResult dfs_count(ProblemState root, const SearchOptions& options = {}) {
  detail::Engine<detail::CountAlgebra> engine(options, false);
  auto out = engine.run(std::move(root));
  return {std::move(out.count), out.exact, engine.stats()};
}

/// Counting by decomposition during search: wherever the propagated
/// constraint graph of the current scope falls apart into independent
/// partial problems, each is counted separately and the counts multiplied.
inline CountResult dds_count(ProblemState root, const SearchOptions& options = {}) {
  detail::Engine<detail::CountAlgebra> engine(options, true);
  auto out = engine.run(std::move(root));
  return {std::move(out.count), out.exact, engine.stats()};
}

inline CountResult dfs_count(ProblemState root, Heuristic h, std::optional<Count> limit = std::nullopt) {
  SearchOptions o;
  o.heuristic = h;
  o.limit = std::move(limit);
  return dfs_count(std::move(root), o);
}

inline CountResult dds_count(ProblemState root, Heuristic h, std::optional<Count> limit = std::nullopt) {
  SearchOptions o;
  o.heuristic = h;
  o.limit = std::move(limit);
  return dds_count(std::move(root), o);
}

struct TreeResult {
  SolutionTree tree;
  Count count = 0;
  bool exact = true;
  SearchStats stats;
};

inline TreeResult dds_tree(ProblemState root, const SearchOptions& options = {}) {
  detail::Engine<detail::TreeAlgebra> engine(options, true);
  auto out = engine.run(std::move(root));
  return {std::move(out.value), std::move(out.count), out.exact, engine.stats()};
}

/// Depth-first counterpart of dds_tree(): an Or tree of full solutions.
inline TreeResult dfs_tree(ProblemState root, const SearchOptions& options = {}) {
  detail::Engine<detail::TreeAlgebra> engine(options, false);
  auto out = engine.run(std::move(root));
  return {std::move(out.value), std::move(out.count), out.exact, engine.stats()};
}

}  // namespace dds
