#pragma once

#include <cstddef>

#include "mbs/moves.hpp"

namespace mbs::detail {

/// Shrinks region `region_index` (of class `cls`, one of the three
/// contractible classes) onto its core circle. Degree thresholds are not
/// checked, so minor-mode contractions share this path; a merged locus left
/// without slots is dropped.
IxOutcome contract(const MultibranchedSurface& surface, std::size_t region_index, RegionClass cls);

bool contractible(RegionClass cls);

}  // namespace mbs::detail
