#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mbs/canonical.hpp"
#include "mbs/surface.hpp"

namespace mbs {

enum class IxKind { NormalAnnulus, QuasiNormalAnnulus, NormalMoebius };

std::string_view to_string(IxKind kind);

/// A region that can be shrunk onto its core circle.
struct IxSite {
  std::string region;
  IxKind kind = IxKind::NormalAnnulus;

  friend bool operator==(const IxSite&, const IxSite&) = default;
};

// Gap g sits immediately before slot g in the cyclic order, so gap 0 lies
// between the last slot and slot 0.

/// Split a normal locus at two gaps into arcs [gap_a, gap_b) and [gap_b, gap_a).
struct NormalSplit {
  int gap_a = 0;
  int gap_b = 0;
  friend bool operator==(const NormalSplit&, const NormalSplit&) = default;
};

/// Move the arc of `length` consecutive slots starting at `start` of an
/// unnormal locus onto a new normal locus. When length equals the slot count
/// the arc is the whole cycle and `start` is the cut gap.
struct QuasiSplit {
  int start = 0;
  int length = 0;
  friend bool operator==(const QuasiSplit&, const QuasiSplit&) = default;
};

/// Unwrap a wrapping-2 locus into a normal locus carrying a new Moebius band,
/// cutting the cycle open at `cut_gap`.
struct MoebiusSplit {
  int cut_gap = 0;
  friend bool operator==(const MoebiusSplit&, const MoebiusSplit&) = default;
};

struct XiChoice {
  std::string locus;
  std::variant<NormalSplit, QuasiSplit, MoebiusSplit> split;

  friend bool operator==(const XiChoice&, const XiChoice&) = default;
};

struct IhSite {
  std::string region;
  friend bool operator==(const IhSite&, const IhSite&) = default;
};

using Move = std::variant<IxSite, XiChoice, IhSite>;

std::string describe(const Move& move);

// IX

/// Regions classified as normal annulus, quasi-normal annulus or normal
/// Moebius band, in region order. Strict surfaces.
std::vector<IxSite> enumerate_ix(const MultibranchedSurface& surface);

struct IxOutcome {
  MultibranchedSurface surface;
  std::string merged_locus;         // empty when the merged cycle vanished (minor mode only)
  std::optional<XiChoice> inverse;  // XI at merged_locus that undoes the move
};

/// Throws std::invalid_argument when the site is not eligible.
IxOutcome apply_ix_detailed(const MultibranchedSurface& surface, const IxSite& site);
MultibranchedSurface apply_ix(const MultibranchedSurface& surface, const IxSite& site);

// XI

/// Every reversal of an IX move available at the locus, ordered by kind and
/// then gap index. Empty exactly when the locus is not spreadable.
std::vector<XiChoice> enumerate_xi(const MultibranchedSurface& surface, std::string_view locus_id);

struct XiOutcome {
  MultibranchedSurface surface;
  std::string fresh_region;
};

/// Throws std::invalid_argument when the choice is not in enumerate_xi.
XiOutcome apply_xi_detailed(const MultibranchedSurface& surface, const XiChoice& choice);
MultibranchedSurface apply_xi(const MultibranchedSurface& surface, const XiChoice& choice);

// Spreading

bool is_maximally_spread_region(const MultibranchedSurface& surface, std::string_view region_id);
bool is_maximally_spread_surface(const MultibranchedSurface& surface);

/// Sum over loci of: k - 3 for normal loci, 0 for pure loci, 2k - 3 for
/// unnormal non-pure loci. Zero iff maximally spread; every XI lowers it and
/// every IX raises it.
long long spread_potential(const MultibranchedSurface& surface);

/// IX along a maximally spread region followed by the XI at the merged locus
/// that does not undo it. Throws std::invalid_argument for an ineligible site
/// and std::logic_error if the merged locus does not admit exactly two XI
/// moves.
MultibranchedSurface apply_ih(const MultibranchedSurface& surface, const IhSite& site);

/// IX sites whose region is maximally spread, in region order.
std::vector<IhSite> enumerate_ih(const MultibranchedSurface& surface);

MultibranchedSurface apply_move(const MultibranchedSurface& surface, const Move& move);

// Records

struct MoveStep {
  Move move;
  std::uint64_t hash_before = 0;
  std::uint64_t hash_after = 0;

  friend bool operator==(const MoveStep&, const MoveStep&) = default;
};

/// Replayable move sequence. Hashes are Rotational canonical hashes.
struct MoveRecord {
  std::uint64_t initial_hash = 0;
  std::vector<MoveStep> steps;

  std::uint64_t final_hash() const { return steps.empty() ? initial_hash : steps.back().hash_after; }
  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

/// Applies a move and appends it to the record.
MultibranchedSurface record_move(MoveRecord& record, const MultibranchedSurface& surface, const Move& move);
MoveRecord empty_record(const MultibranchedSurface& surface);

/// Replays the record from `surface`; throws std::runtime_error when a hash
/// does not match.
MultibranchedSurface replay(const MultibranchedSurface& surface, const MoveRecord& record);

enum class SpreadPolicy { First, Exhaustive };

struct SpreadResult {
  MultibranchedSurface surface;
  MoveRecord record;
};

/// Applies XI moves until no locus is spreadable. `First` always takes the
/// first enumerated choice; `Exhaustive` explores every sequence and returns
/// the result with the least canonical form.
SpreadResult maximally_spread(const MultibranchedSurface& surface, SpreadPolicy policy = SpreadPolicy::First);

/// All pairwise non-isomorphic (Rotational) maximally spread results
/// reachable by XI moves, ordered by canonical form.
std::vector<SpreadResult> all_maximal_spreads(const MultibranchedSurface& surface);

}  // namespace mbs
