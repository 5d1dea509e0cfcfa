#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mbs/canonical.hpp"
#include "mbs/surface.hpp"

namespace mbs {

struct RemoveRegion {
  std::string region;
  friend bool operator==(const RemoveRegion&, const RemoveRegion&) = default;
};

/// Shrinks a normal annulus, quasi-normal annulus or normal Moebius region
/// onto its core circle, with the degree thresholds of strict mode lifted.
struct ContractRegion {
  std::string region;
  friend bool operator==(const ContractRegion&, const ContractRegion&) = default;
};

using ReductionStep = std::variant<RemoveRegion, ContractRegion>;

std::string describe(const ReductionStep& step);

/// One RemoveRegion per region (region order), then one ContractRegion per
/// eligible region (region order).
std::vector<ReductionStep> enumerate_reductions(const MultibranchedSurface& surface);

/// Deletes the region and excises its circles from every slot cycle. Loci
/// left without slots disappear. The result is in minor mode.
/// Throws std::out_of_range for an unknown region.
MultibranchedSurface remove_region(const MultibranchedSurface& surface, std::string_view region_id);

/// Same splice as apply_ix. The result is in minor mode. Throws
/// std::out_of_range for an unknown region and std::invalid_argument when the
/// region is not eligible.
MultibranchedSurface contract_region(const MultibranchedSurface& surface, std::string_view region_id);

MultibranchedSurface apply_reduction(const MultibranchedSurface& surface, const ReductionStep& step);

struct MinorBudget {
  int max_depth = 8;
  std::size_t max_states = 100000;
  SymmetryMode mode = SymmetryMode::Mirror;  // endpoint matching
};

/// A single reduction taking Y to a surface isomorphic to X.
std::optional<std::vector<ReductionStep>> less_than(const MultibranchedSurface& x, const MultibranchedSurface& y,
                                                    const MinorBudget& budget = {});

/// Isomorphic, or each reduces to the other in one step.
bool tilde_equivalent(const MultibranchedSurface& x, const MultibranchedSurface& y, const MinorBudget& budget = {});

/// Breadth-first search for a chain of reductions from Y ending at a surface
/// isomorphic to X. The empty chain is returned when X and Y are already
/// isomorphic. std::nullopt only means nothing was found within the budget.
std::optional<std::vector<ReductionStep>> is_minor(const MultibranchedSurface& x, const MultibranchedSurface& y,
                                                   const MinorBudget& budget = {});

/// Cheap screens against embeddability in the 3-sphere. A set flag (a closed
/// non-orientable region, or a wrapping gcd above 1) matches a known family
/// of non-embeddable complexes. Clear flags prove nothing: this is not a
/// decision procedure for embeddability or for the obstruction set.
struct ObstructionFlags {
  bool has_nonorientable_closed_region = false;
  int locus_wrapping_gcd = 1;  // 1 when there are no loci
};

ObstructionFlags obstruction_screen(const MultibranchedSurface& surface);

}  // namespace mbs
