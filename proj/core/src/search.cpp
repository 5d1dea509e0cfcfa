#include "mbs/search.hpp"

#include <stdexcept>
#include <unordered_map>

#include "mbs/homology.hpp"
#include "rng.hpp"

namespace mbs {

std::string_view to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::Found: return "found";
    case SearchStatus::ExhaustedWithinBudget: return "exhausted_within_budget";
    case SearchStatus::InvariantMismatch: return "invariant_mismatch";
  }
  return "exhausted_within_budget";
}

std::vector<Neighbor> neighbors(const MultibranchedSurface& surface) {
  std::vector<Neighbor> out;
  for (const auto& site : enumerate_ix(surface)) out.push_back({site, apply_ix(surface, site)});
  for (const auto& locus : surface.loci())
    for (const auto& choice : enumerate_xi(surface, locus.id)) out.push_back({choice, apply_xi(surface, choice)});
  return out;
}

namespace {

struct Node {
  std::string parent;
  std::optional<Move> move;
  MultibranchedSurface surface;
};

using Side = std::unordered_map<std::string, Node>;

std::string state_key(const MultibranchedSurface& s) {
  return canonical_form(s, SymmetryMode::Rotational).bytes;
}

class BidirectionalSearch {
 public:
  BidirectionalSearch(const MultibranchedSurface& source, const MultibranchedSurface& target,
                      const SearchBudget& budget, SymmetryMode mode)
      : source_(source), target_(target), budget_(budget), mode_(mode),
        started_(std::chrono::steady_clock::now()) {}

  SearchOutcome run() {
    SearchOutcome outcome;
    const std::string source_key = state_key(source_);
    forward_.emplace(source_key, Node{"", std::nullopt, source_});
    std::vector<std::string> forward_frontier{source_key};

    std::vector<std::string> backward_frontier;
    auto seed = [&](const MultibranchedSurface& s) {
      std::string key = state_key(s);
      if (backward_.emplace(key, Node{"", std::nullopt, s}).second) backward_frontier.push_back(key);
    };
    seed(target_);
    if (mode_ != SymmetryMode::Rotational) seed(mirror_image(target_));
    states_ = forward_.size() + backward_.size();

    for (const auto& key : backward_frontier)
      if (forward_.contains(key)) return found(key, outcome);

    int forward_depth = 0;
    int backward_depth = 0;
    while (forward_depth < budget_.max_depth || backward_depth < budget_.max_depth) {
      const bool forward_open = forward_depth < budget_.max_depth;
      const bool backward_open = backward_depth < budget_.max_depth;
      const bool go_forward =
          forward_open && (!backward_open || forward_frontier.size() <= backward_frontier.size());
      auto& frontier = go_forward ? forward_frontier : backward_frontier;
      if (frontier.empty()) break;
      Side& mine = go_forward ? forward_ : backward_;
      Side& other = go_forward ? backward_ : forward_;

      std::vector<std::string> next;
      for (const auto& key : frontier) {
        const MultibranchedSurface current = mine.at(key).surface;
        for (auto& nb : neighbors(current)) {
          if (piece_count(nb.surface) > budget_.max_cell_count) continue;
          std::string nkey = state_key(nb.surface);
          if (mine.contains(nkey)) continue;
          mine.emplace(nkey, Node{key, std::move(nb.move), std::move(nb.surface)});
          ++states_;
          if (other.contains(nkey)) return found(nkey, outcome);
          next.push_back(std::move(nkey));
          if (over_budget()) return exhausted(outcome);
        }
        if (over_budget()) return exhausted(outcome);
      }
      frontier = std::move(next);
      (go_forward ? forward_depth : backward_depth) += 1;
    }
    return exhausted(outcome);
  }

 private:
  bool over_budget() const {
    if (states_ >= budget_.max_states) return true;
    return std::chrono::steady_clock::now() - started_ > budget_.time_limit;
  }

  SearchOutcome& exhausted(SearchOutcome& outcome) const {
    outcome.status = SearchStatus::ExhaustedWithinBudget;
    outcome.states_explored = states_;
    return outcome;
  }

  SearchOutcome& found(const std::string& meet, SearchOutcome& outcome) const {
    // Forward half: replay stored moves from the source.
    std::vector<Move> moves;
    for (std::string key = meet; !forward_.at(key).parent.empty() || forward_.at(key).move;) {
      const Node& node = forward_.at(key);
      if (!node.move) break;
      moves.push_back(*node.move);
      key = node.parent;
    }
    MoveRecord record = empty_record(source_);
    MultibranchedSurface current = source_;
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) current = record_move(record, current, *it);

    // Backward half: walk the stored chain towards the target, picking at
    // each step the neighbor of the current surface that matches it.
    for (std::string key = meet; backward_.at(key).move;) {
      const std::string& wanted = backward_.at(key).parent;
      bool stepped = false;
      for (auto& nb : neighbors(current)) {
        if (state_key(nb.surface) != wanted) continue;
        record.steps.push_back({nb.move, canonical_hash(current), canonical_hash(nb.surface)});
        current = std::move(nb.surface);
        stepped = true;
        break;
      }
      if (!stepped) throw std::logic_error("search: backward step has no matching forward move");
      key = wanted;
    }

    if (canonical_form(current, mode_) != canonical_form(target_, mode_))
      throw std::logic_error("search: connecting sequence does not end at the target");
    outcome.status = SearchStatus::Found;
    outcome.record = std::move(record);
    outcome.states_explored = states_;
    return outcome;
  }

  const MultibranchedSurface& source_;
  const MultibranchedSurface& target_;
  SearchBudget budget_;
  SymmetryMode mode_;
  std::chrono::steady_clock::time_point started_;
  Side forward_;
  Side backward_;
  std::size_t states_ = 0;
};

}  // namespace

SearchOutcome search_equivalence(const MultibranchedSurface& source, const MultibranchedSurface& target,
                                 const SearchBudget& budget, SymmetryMode mode) {
  SearchOutcome outcome;
  if (euler_characteristic(source) != euler_characteristic(target)) {
    outcome.status = SearchStatus::InvariantMismatch;
    outcome.mismatch = "euler_characteristic";
    return outcome;
  }
  if (connected_components(source) != connected_components(target)) {
    outcome.status = SearchStatus::InvariantMismatch;
    outcome.mismatch = "connected_components";
    return outcome;
  }
  if (mod2_betti(homology_profile(source)) != mod2_betti(homology_profile(target))) {
    outcome.status = SearchStatus::InvariantMismatch;
    outcome.mismatch = "homology_mod2";
    return outcome;
  }
  if (canonical_form(source, mode) == canonical_form(target, mode)) {
    outcome.status = SearchStatus::Found;
    outcome.record = empty_record(source);
    outcome.states_explored = 1;
    return outcome;
  }
  return BidirectionalSearch(source, target, budget, mode).run();
}

WalkResult random_walk(const MultibranchedSurface& surface, std::uint64_t seed, std::size_t length) {
  detail::Rng rng(seed);
  WalkResult result{surface, empty_record(surface), false};
  for (std::size_t step = 0; step < length; ++step) {
    auto options = neighbors(result.surface);
    if (options.empty()) {
      result.stopped_early = true;
      break;
    }
    Neighbor& pick = options[rng.below(options.size())];
    result.record.steps.push_back({pick.move, canonical_hash(result.surface), canonical_hash(pick.surface)});
    result.surface = std::move(pick.surface);
  }
  return result;
}

}  // namespace mbs
