#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "mbs/smith.hpp"
#include "mbs/surface.hpp"

namespace mbs {

/// Cellular chain complex C2 -> C1 -> C0 of a multibranched surface.
///
/// 0-cells: one per locus (v), then one per region (u).
/// 1-cells: one loop per locus (e); then for each region its handle loops
///   (a_m, b_m) or crosscap loops (x_m), one tether per attached boundary
///   circle from u to the locus vertex, and one free loop per unattached
///   boundary circle.
/// 2-cells: one per region. An attached circle of wrapping w contributes
///   t e^w t^-1 to the boundary word, so its column entry is w on e.
struct ChainComplex {
  IntegerMatrix boundary1;  // |C0| x |C1|
  IntegerMatrix boundary2;  // |C1| x |C2|
  std::vector<std::string> vertex_labels;
  std::vector<std::string> edge_labels;
  std::vector<std::string> face_labels;
};

ChainComplex build_chain_complex(const MultibranchedSurface& surface);

struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<Integer> torsion;  // invariant factors >= 2, each dividing the next

  /// "0", "Z", "Z^3", "Z + Z/4", "Z/2 + Z/6", ...
  std::string to_string() const;

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct HomologyProfile {
  std::array<HomologyGroup, 3> groups;

  const HomologyGroup& h(std::size_t q) const { return groups.at(q); }
  long long euler() const;

  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

HomologyProfile homology_from_complex(const ChainComplex& complex);
HomologyProfile homology_profile(const MultibranchedSurface& surface);

/// Dimensions of H_q with Z/2 coefficients, by universal coefficients.
///
/// The surface data records wrapping numbers but not the orientation with
/// which each boundary circle runs around its locus, and the chain complex
/// above takes every attachment positively. Integer homology therefore
/// depends on that choice and can change under IX and XI moves. Reduced mod
/// 2 the boundary matrices do not see orientations, so these numbers are
/// genuine move invariants.
std::array<std::size_t, 3> mod2_betti(const HomologyProfile& profile);

/// Counts of the pieces cut out by the characteristic annulus system.
struct DecompositionSummary {
  std::size_t solid_torus_count = 0;
  std::size_t product_bundle_count = 0;
  std::size_t twisted_bundle_count = 0;
  std::size_t characteristic_annuli_count = 0;

  friend bool operator==(const DecompositionSummary&, const DecompositionSummary&) = default;
};

/// Strict surfaces only; throws std::invalid_argument for minor mode.
DecompositionSummary decomposition_summary(const MultibranchedSurface& surface);

/// Euler characteristic of the boundary of a regular neighborhood, 2 chi(X).
/// Strict surfaces only.
int boundary_euler(const MultibranchedSurface& surface);

}  // namespace mbs
