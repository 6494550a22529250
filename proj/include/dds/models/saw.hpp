#pragma once

#include "dds/propagators.hpp"

#include <utility>
#include <vector>

namespace dds {

/// Self-avoiding walk of `length` monomers on the square lattice, inside the
/// box [-bound, bound]^2 around the origin.
struct WalkSpec {
  int length = 1;
  int bound = 1;
};

/// Point (x, y) of the box [-b, b]^2 as the integer (x + b) * (2b + 1) + (y + b).
struct LatticeCodec {
  int bound;

  [[nodiscard]] int side() const { return 2 * bound + 1; }
  [[nodiscard]] int encode(int x, int y) const { return (x + bound) * side() + (y + bound); }
  [[nodiscard]] std::pair<int, int> decode(int code) const { return {code / side() - bound, code % side() - bound}; }
  [[nodiscard]] bool inside(int x, int y) const { return x >= -bound && x <= bound && y >= -bound && y <= bound; }
};

inline constexpr std::pair<int, int> square_lattice_steps[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

/// All ordered pairs of 4-neighboring lattice points inside the box.
inline std::vector<std::vector<int>> lattice_neighbor_pairs(const LatticeCodec& codec) {
  std::vector<std::vector<int>> pairs;
  for (int x = -codec.bound; x <= codec.bound; ++x)
    for (int y = -codec.bound; y <= codec.bound; ++y)
      for (auto [dx, dy] : square_lattice_steps)
        if (codec.inside(x + dx, y + dy)) pairs.push_back({codec.encode(x, y), codec.encode(x + dx, y + dy)});
  return pairs;
}

/// Lattice-walk core: one position variable per monomer, the first fixed at
/// the origin, a neighbor table between consecutive monomers and one global
/// AllDifferent for self-avoidance. Walks are counted without symmetry
/// reduction.
inline ProblemState saw_model(const WalkSpec& spec) {
  if (spec.length < 1) throw ModelError("saw: length must be at least 1");
  if (spec.bound < spec.length) throw ModelError("saw: bound must be at least the walk length");
  LatticeCodec codec{spec.bound};
  const int cells = codec.side() * codec.side();
  std::vector<Domain> domains(static_cast<std::size_t>(spec.length), Domain::range(0, cells - 1));
  domains[0] = Domain{codec.encode(0, 0)};
  ProblemState state(std::move(domains));

  auto pairs = lattice_neighbor_pairs(codec);
  for (int i = 0; i + 1 < spec.length; ++i) post(state, Table{{VarRef{i}, VarRef{i + 1}}, pairs});
  if (spec.length >= 2) {
    AllDifferent all;
    for (int i = 0; i < spec.length; ++i) all.vars.push_back(VarRef{i});
    post(state, std::move(all));
  }
  return state;
}

}  // namespace dds
