#pragma once

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <span>
#include <vector>

namespace dds {

/// Finite set of integers kept as a sorted, duplicate-free vector.
///
/// All narrowing operations report whether the set changed. Nothing in the
/// public interface can add a value after construction, so the size of a
/// domain never grows over the lifetime of a state.
class Domain {
 public:
  using const_iterator = std::vector<int>::const_iterator;

  Domain() = default;

  explicit Domain(std::vector<int> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  }

  Domain(std::initializer_list<int> values) : Domain(std::vector<int>(values)) {}

  /// Closed interval [lo, hi]; empty when lo > hi.
  static Domain range(int lo, int hi) {
    Domain d;
    if (lo <= hi) {
      d.values_.reserve(static_cast<std::size_t>(hi - lo) + 1);
      for (int v = lo; v <= hi; ++v) d.values_.push_back(v);
    }
    return d;
  }

  [[nodiscard]] bool empty() const { return values_.empty(); }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] bool assigned() const { return values_.size() == 1; }

  [[nodiscard]] int min() const {
    assert(!empty());
    return values_.front();
  }
  [[nodiscard]] int max() const {
    assert(!empty());
    return values_.back();
  }
  /// Value of an assigned domain.
  [[nodiscard]] int value() const {
    assert(assigned());
    return values_.front();
  }

  [[nodiscard]] bool contains(int v) const {
    return std::binary_search(values_.begin(), values_.end(), v);
  }

  [[nodiscard]] const_iterator begin() const { return values_.begin(); }
  [[nodiscard]] const_iterator end() const { return values_.end(); }
  [[nodiscard]] std::span<const int> values() const { return values_; }

  bool remove(int v) {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v) return false;
    values_.erase(it);
    return true;
  }

  bool assign(int v) {
    if (assigned() && values_.front() == v) return false;
    bool had = contains(v);
    values_.clear();
    if (had) values_.push_back(v);
    return true;
  }

  bool restrict_range(int lo, int hi) {
    auto first = std::lower_bound(values_.begin(), values_.end(), lo);
    auto last = std::upper_bound(first, values_.end(), hi);
    if (first == values_.begin() && last == values_.end()) return false;
    std::vector<int> kept(first, last);
    values_ = std::move(kept);
    return true;
  }

  template <class Pred>
  bool remove_if(Pred pred) {
    auto it = std::remove_if(values_.begin(), values_.end(), pred);
    if (it == values_.end()) return false;
    values_.erase(it, values_.end());
    return true;
  }

  /// Keeps only values also present in `sorted_keep` (sorted ascending).
  bool intersect(std::span<const int> sorted_keep) {
    return remove_if([&](int v) { return !std::binary_search(sorted_keep.begin(), sorted_keep.end(), v); });
  }

  [[nodiscard]] bool disjoint(const Domain& other) const {
    auto a = values_.begin();
    auto b = other.values_.begin();
    while (a != values_.end() && b != other.values_.end()) {
      if (*a == *b) return false;
      if (*a < *b) ++a; else ++b;
    }
    return true;
  }

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::vector<int> values_;
};

}  // namespace dds
