#pragma once

#include <boost/pending/disjoint_sets.hpp>

#include <map>
#include <vector>

namespace dds::detail {

// Union-find over 0..n-1 that reports the groups of selected members.
class Grouping {
 public:
  explicit Grouping(std::size_t n) : sets_(n) {}

  void join(int a, int b) { sets_.union_set(a, b); }

  template <class Range>
  void join_all(const Range& members) {
    auto it = std::begin(members);
    if (it == std::end(members)) return;
    int first = static_cast<int>(*it);
    for (++it; it != std::end(members); ++it) join(first, static_cast<int>(*it));
  }

  int root(int a) { return sets_.find_set(a); }

  // Groups of `members`, each in input order, groups ordered by first appearance.
  std::vector<std::vector<int>> groups(const std::vector<int>& members) {
    std::map<int, std::size_t> slot;
    std::vector<std::vector<int>> out;
    for (int m : members) {
      auto [it, fresh] = slot.try_emplace(root(m), out.size());
      if (fresh) out.emplace_back();
      out[it->second].push_back(m);
    }
    return out;
  }

 private:
  boost::disjoint_sets_with_storage<> sets_;
};

}  // namespace dds::detail
