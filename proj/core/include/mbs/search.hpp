#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbs/canonical.hpp"
#include "mbs/moves.hpp"

namespace mbs {

struct SearchBudget {
  int max_depth = 4;                // moves per side
  std::size_t max_states = 200000;  // visited states over both sides
  std::size_t max_cell_count = 40;  // piece_count cap for every explored surface
  std::chrono::milliseconds time_limit{10000};
};

struct Neighbor {
  Move move;
  MultibranchedSurface surface;
};

/// All IX results (enumerate_ix order) followed by all XI results (locus
/// order, then enumerate_xi order).
std::vector<Neighbor> neighbors(const MultibranchedSurface& surface);

enum class SearchStatus { Found, ExhaustedWithinBudget, InvariantMismatch };

std::string_view to_string(SearchStatus status);

struct SearchOutcome {
  SearchStatus status = SearchStatus::ExhaustedWithinBudget;
  MoveRecord record;                    // Found: replays from source to a surface isomorphic to target
  std::string mismatch;                 // "euler_characteristic", "connected_components" or "homology_mod2"
  std::size_t states_explored = 0;
};

/// Bidirectional breadth-first search over IX/XI moves, after a quick reject
/// on Euler characteristic, component count and mod-2 Betti numbers. States are
/// identified by Rotational canonical form; the final surface is checked
/// against `target` in `mode` before returning Found. Running out of budget
/// says nothing about equivalence.
SearchOutcome search_equivalence(const MultibranchedSurface& source, const MultibranchedSurface& target,
                                 const SearchBudget& budget = {},
                                 SymmetryMode mode = SymmetryMode::Rotational);

struct WalkResult {
  MultibranchedSurface surface;
  MoveRecord record;
  bool stopped_early = false;  // reached a surface without neighbors
};

/// Each step picks uniformly among neighbors(). Deterministic in seed.
WalkResult random_walk(const MultibranchedSurface& surface, std::uint64_t seed, std::size_t length);

}  // namespace mbs
