#pragma once

#include "dds/domain.hpp"
#include "dds/spec.hpp"

#include <cstdint>
#include <deque>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace dds {

enum class PropagationResult { Failed, Entailed, Stable };

enum class StateStatus { Failed, Solved, Branchable };

inline const char* to_string(StateStatus s) {
  switch (s) {
    case StateStatus::Failed: return "failed";
    case StateStatus::Solved: return "solved";
    case StateStatus::Branchable: return "branchable";
  }
  return "?";
}

/// Branching relation posted by tell().
enum class Relation { Eq, Neq };

struct PropagatorHandle {
  int index = -1;
  friend auto operator<=>(const PropagatorHandle&, const PropagatorHandle&) = default;
};

/// Scopes of the independent fragments a constraint currently splits into,
/// restricted to its unassigned variables. Edges are pairwise disjoint and
/// cover the unassigned part of the scope (singletons included).
using HyperedgeSet = std::vector<Scope>;

/// Run-level counters. Shared by a state and all of its clones.
struct PropagationCounters {
  std::uint64_t propagations = 0;
  std::uint64_t domain_events = 0;
};

/// Total assignment, indexed by variable.
using Assignment = std::vector<int>;

class ProblemState;

class Propagator {
 public:
  explicit Propagator(Scope scope) : scope_(std::move(scope)) {}
  virtual ~Propagator() = default;

  [[nodiscard]] const Scope& scope() const { return scope_; }

  /// Filters the domains of the scope to this propagator's own fixpoint.
  virtual PropagationResult propagate(ProblemState& state) = 0;

  /// Internal decomposition of the constraint under the current domains.
  /// Only meaningful for an active propagator at fixpoint.
  [[nodiscard]] virtual HyperedgeSet hyperedges(const ProblemState& state) const = 0;

  [[nodiscard]] virtual std::unique_ptr<Propagator> clone() const = 0;
  [[nodiscard]] virtual const char* name() const = 0;

 protected:
  Propagator(const Propagator&) = default;
  Propagator& operator=(const Propagator&) = default;

 private:
  Scope scope_;
};

/// Variables, their domains and the store of active propagators.
///
/// Copying a state deep-copies domains and propagators; the resulting state
/// evolves independently, except for the run-level counters which stay shared.
class ProblemState {
 public:
  ProblemState() : counters_(std::make_shared<PropagationCounters>()) {}

  explicit ProblemState(std::vector<Domain> domains)
      : domains_(std::move(domains)),
        subscribers_(domains_.size()),
        counters_(std::make_shared<PropagationCounters>()) {
    for (const auto& d : domains_)
      if (d.empty()) failed_ = true;
  }

  ProblemState(const ProblemState& other)
      : domains_(other.domains_),
        specs_(other.specs_),
        subscribers_(other.subscribers_),
        queue_(other.queue_),
        queued_(other.queued_),
        active_(other.active_),
        failed_(other.failed_),
        counters_(other.counters_) {
    store_.reserve(other.store_.size());
    for (const auto& p : other.store_) store_.push_back(p ? p->clone() : nullptr);
  }

  ProblemState& operator=(const ProblemState& other) {
    if (this != &other) *this = ProblemState(other);
    return *this;
  }

  ProblemState(ProblemState&&) noexcept = default;
  ProblemState& operator=(ProblemState&&) noexcept = default;

  [[nodiscard]] ProblemState clone() const { return ProblemState(*this); }

  [[nodiscard]] std::size_t var_count() const { return domains_.size(); }
  [[nodiscard]] const Domain& domain(VarRef x) const { return domains_.at(static_cast<std::size_t>(x.index)); }
  [[nodiscard]] const std::vector<Domain>& domains() const { return domains_; }
  [[nodiscard]] bool assigned(VarRef x) const { return domain(x).assigned(); }

  [[nodiscard]] bool failed() const { return failed_; }
  [[nodiscard]] bool all_assigned() const {
    for (const auto& d : domains_)
      if (!d.assigned()) return false;
    return true;
  }

  /// Number of active (neither entailed nor failed) propagators.
  [[nodiscard]] std::size_t store_size() const { return active_; }

  /// Number of constraints ever posted; handles index this range.
  [[nodiscard]] std::size_t posted_count() const { return store_.size(); }
  [[nodiscard]] bool active(PropagatorHandle h) const { return store_.at(static_cast<std::size_t>(h.index)) != nullptr; }
  [[nodiscard]] const Propagator* propagator(PropagatorHandle h) const {
    return store_.at(static_cast<std::size_t>(h.index)).get();
  }
  [[nodiscard]] const ConstraintSpec& spec(PropagatorHandle h) const { return *specs_.at(static_cast<std::size_t>(h.index)); }

  /// All posted constraints, including the ones since removed as entailed.
  [[nodiscard]] std::vector<ConstraintSpec> constraints() const {
    std::vector<ConstraintSpec> out;
    out.reserve(specs_.size());
    for (const auto& s : specs_) out.push_back(*s);
    return out;
  }

  template <class Fn>
  void for_each_active(Fn&& fn) const {
    for (std::size_t i = 0; i < store_.size(); ++i)
      if (store_[i]) fn(PropagatorHandle{static_cast<int>(i)}, *store_[i]);
  }

  [[nodiscard]] PropagationCounters& counters() const { return *counters_; }
  [[nodiscard]] std::shared_ptr<PropagationCounters> counters_handle() const { return counters_; }
  /// Redirects this state's counters, e.g. to a fresh sink for a new run.
  void set_counters(std::shared_ptr<PropagationCounters> sink) { counters_ = std::move(sink); }

  /// Adds a propagator built for `spec`. Prefer dds::post(), which validates.
  PropagatorHandle add_propagator(std::unique_ptr<Propagator> p, ConstraintSpec spec) {
    int id = static_cast<int>(store_.size());
    for (VarRef x : p->scope()) subscribers_.at(static_cast<std::size_t>(x.index)).push_back(id);
    store_.push_back(std::move(p));
    specs_.push_back(std::make_shared<const ConstraintSpec>(std::move(spec)));
    queued_.push_back(0);
    ++active_;
    enqueue(id);
    return PropagatorHandle{id};
  }

  /// Runs queued propagators to a common fixpoint.
  StateStatus propagate() {
    if (failed_) {
      clear_queue();
      return StateStatus::Failed;
    }
    while (!queue_.empty()) {
      int id = queue_.front();
      queue_.pop_front();
      queued_[static_cast<std::size_t>(id)] = 0;
      auto& slot = store_[static_cast<std::size_t>(id)];
      if (!slot) continue;
      current_ = id;
      ++counters_->propagations;
      PropagationResult r = slot->propagate(*this);
      current_ = -1;
      if (r == PropagationResult::Failed || failed_) {
        failed_ = true;
        clear_queue();
        return StateStatus::Failed;
      }
      if (r == PropagationResult::Entailed) {
        slot.reset();
        --active_;
      }
    }
    return all_assigned() ? StateStatus::Solved : StateStatus::Branchable;
  }

  void tell(VarRef x, Relation rel, int value) {
    check_var(x);
    if (rel == Relation::Eq) assign(x, value);
    else remove(x, value);
  }

  Assignment solution() const {
    if (failed_ || !queue_.empty() || !all_assigned())
      throw std::logic_error("solution() requires a solved state");
    Assignment a;
    a.reserve(domains_.size());
    for (const auto& d : domains_) a.push_back(d.value());
    return a;
  }

  // Domain narrowing. Each returns true when the domain changed; dependent
  // propagators other than the running one are scheduled.

  bool remove(VarRef x, int v) { return modified(x, mut(x).remove(v)); }
  bool assign(VarRef x, int v) { return modified(x, mut(x).assign(v)); }
  bool restrict_range(VarRef x, int lo, int hi) { return modified(x, mut(x).restrict_range(lo, hi)); }
  bool intersect(VarRef x, std::span<const int> sorted_keep) { return modified(x, mut(x).intersect(sorted_keep)); }
  template <class Pred>
  bool remove_if(VarRef x, Pred pred) {
    return modified(x, mut(x).remove_if(pred));
  }

 private:
  void check_var(VarRef x) const {
    if (x.index < 0 || static_cast<std::size_t>(x.index) >= domains_.size())
      throw ModelError("unknown variable index " + std::to_string(x.index));
  }

  Domain& mut(VarRef x) { return domains_.at(static_cast<std::size_t>(x.index)); }

  bool modified(VarRef x, bool changed) {
    if (!changed) return false;
    ++counters_->domain_events;
    if (domains_[static_cast<std::size_t>(x.index)].empty()) failed_ = true;
    for (int id : subscribers_[static_cast<std::size_t>(x.index)])
      if (id != current_ && store_[static_cast<std::size_t>(id)]) enqueue(id);
    return true;
  }

  void enqueue(int id) {
    if (queued_[static_cast<std::size_t>(id)]) return;
    queued_[static_cast<std::size_t>(id)] = 1;
    queue_.push_back(id);
  }

  void clear_queue() {
    for (int id : queue_) queued_[static_cast<std::size_t>(id)] = 0;
    queue_.clear();
  }

  std::vector<Domain> domains_;
  std::vector<std::unique_ptr<Propagator>> store_;
  std::vector<std::shared_ptr<const ConstraintSpec>> specs_;
  std::vector<std::vector<int>> subscribers_;
  std::deque<int> queue_;
  std::vector<char> queued_;
  std::size_t active_ = 0;
  int current_ = -1;
  bool failed_ = false;
  std::shared_ptr<PropagationCounters> counters_;
};

/// One variable per input set.
inline ProblemState new_problem(const std::vector<std::vector<int>>& domains) {
  std::vector<Domain> ds;
  ds.reserve(domains.size());
  for (const auto& d : domains) ds.emplace_back(d);
  return ProblemState(std::move(ds));
}

/// Unassigned members of `vars`, in order.
inline Scope unassigned_of(const ProblemState& state, std::span<const VarRef> vars) {
  Scope out;
  for (VarRef x : vars)
    if (!state.assigned(x)) out.push_back(x);
  return out;
}

}  // namespace dds
