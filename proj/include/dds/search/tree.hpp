#pragma once

#include "dds/count.hpp"
#include "dds/state.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dds {

using PartialAssignment = std::vector<std::pair<VarRef, int>>;

/// AND/OR representation of a solution set.
///
/// A Leaf is one partial assignment. An Or node is the union of its
/// children's solution sets. An And node combines its `fixed` assignment with
/// one solution from each child; its children have disjoint scopes. A failed
/// search yields an Or node without children.
struct SolutionTree {
  enum class Kind { Leaf, Or, And };

  Kind kind = Kind::Or;
  PartialAssignment fixed;
  std::vector<SolutionTree> children;

  static SolutionTree leaf(PartialAssignment a) { return {Kind::Leaf, std::move(a), {}}; }
  static SolutionTree empty() { return {Kind::Or, {}, {}}; }

  static SolutionTree any_of(std::vector<SolutionTree> children) {
    SolutionTree t{Kind::Or, {}, {}};
    for (auto& c : children) {
      if (c.kind == Kind::Or) {
        for (auto& cc : c.children) t.children.push_back(std::move(cc));
      } else {
        t.children.push_back(std::move(c));
      }
    }
    return t;
  }

  static SolutionTree all_of(PartialAssignment fixed, std::vector<SolutionTree> children) {
    return {Kind::And, std::move(fixed), std::move(children)};
  }

  [[nodiscard]] std::size_t leaf_count() const {
    if (kind == Kind::Leaf) return 1;
    std::size_t n = 0;
    for (const auto& c : children) n += c.leaf_count();
    return n;
  }
};

/// Leaf = 1, Or = sum, And = product.
inline Count tree_count(const SolutionTree& t) {
  switch (t.kind) {
    case SolutionTree::Kind::Leaf: return 1;
    case SolutionTree::Kind::Or: {
      Count sum = 0;
      for (const auto& c : t.children) sum += tree_count(c);
      return sum;
    }
    case SolutionTree::Kind::And: {
      Count product = 1;
      for (const auto& c : t.children) {
        product *= tree_count(c);
        if (product == 0) break;
      }
      return product;
    }
  }
  return 0;
}

namespace detail {

inline void expand_into(const SolutionTree& t, std::size_t max, std::vector<PartialAssignment>& out) {
  switch (t.kind) {
    case SolutionTree::Kind::Leaf:
      if (out.size() < max) out.push_back(t.fixed);
      return;
    case SolutionTree::Kind::Or:
      for (const auto& c : t.children) {
        if (out.size() >= max) return;
        expand_into(c, max, out);
      }
      return;
    case SolutionTree::Kind::And: {
      // Cartesian product, first child varying slowest. Each child needs at
      // most `max` of its own solutions.
      std::vector<PartialAssignment> acc{t.fixed};
      for (const auto& c : t.children) {
        std::vector<PartialAssignment> part;
        expand_into(c, max, part);
        std::vector<PartialAssignment> next;
        for (const auto& a : acc) {
          for (const auto& b : part) {
            if (next.size() >= max) break;
            PartialAssignment merged = a;
            merged.insert(merged.end(), b.begin(), b.end());
            next.push_back(std::move(merged));
          }
          if (next.size() >= max) break;
        }
        acc = std::move(next);
        if (acc.empty()) return;
      }
      for (auto& a : acc) {
        if (out.size() >= max) return;
        out.push_back(std::move(a));
      }
      return;
    }
  }
}

}  // namespace detail

/// Partial assignments of the first `max` solutions, each sorted by variable.
inline std::vector<PartialAssignment> tree_expand_partial(const SolutionTree& t, std::size_t max) {
  std::vector<PartialAssignment> out;
  detail::expand_into(t, max, out);
  for (auto& a : out) std::sort(a.begin(), a.end());
  return out;
}

/// First `max` solutions of a tree whose scope is variables 0..n-1, as total
/// assignments. Order: And children as a Cartesian product with the first
/// child varying slowest, Or children concatenated.
inline std::vector<Assignment> tree_expand(const SolutionTree& t, std::size_t max) {
  std::vector<Assignment> out;
  for (const auto& partial : tree_expand_partial(t, max)) {
    Assignment a(partial.size());
    for (std::size_t i = 0; i < partial.size(); ++i) {
      if (partial[i].first.index != static_cast<int>(i))
        throw std::logic_error("tree_expand: tree does not cover a contiguous variable range");
      a[i] = partial[i].second;
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace dds
