#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mbs/surface.hpp"

namespace mbs {

/// Which relabelings count as the same surface.
///
/// Every mode allows renaming regions, loci and circles, permuting the
/// boundary circles of a region, and rotating slot cycles.
///  - Rotational: nothing more.
///  - Mirror: additionally one simultaneous reversal of every slot cycle.
///  - DihedralPerLocus: each cycle may be reversed independently. Coarser
///    than any move-compatible notion; meant for diagnostics.
enum class SymmetryMode { Rotational, Mirror, DihedralPerLocus };

std::string_view to_string(SymmetryMode mode);
std::optional<SymmetryMode> symmetry_mode_from_string(std::string_view text);

/// Canonical encoding; equal bytes in the same mode iff isomorphic. Bytes
/// start with the version tag "mbscf1".
struct CanonicalForm {
  SymmetryMode mode = SymmetryMode::Rotational;
  std::string bytes;

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

inline constexpr std::string_view kCanonicalFormTag = "mbscf1";

CanonicalForm canonical_form(const MultibranchedSurface& surface,
                             SymmetryMode mode = SymmetryMode::Rotational);

/// 64-bit FNV-1a of the canonical bytes. Equality of surfaces is decided by
/// the bytes, never by the hash.
std::uint64_t canonical_hash(const MultibranchedSurface& surface,
                             SymmetryMode mode = SymmetryMode::Rotational);
std::uint64_t fnv1a64(std::string_view bytes);

/// Slot correspondence for one locus pair: slot j of the target locus is
/// the image of slot (reversed ? rotation - j : rotation + j) mod
/// slot_count of the source locus.
struct SlotAlignment {
  int rotation = 0;
  bool reversed = false;
  int slot_count = 0;

  friend bool operator==(const SlotAlignment&, const SlotAlignment&) = default;
};

/// Witness that a source surface maps onto a target surface.
struct IsoCertificate {
  std::map<std::string, std::string> region_map;
  std::map<std::string, std::string> locus_map;
  std::map<std::string, std::string> circle_map;
  std::map<std::string, SlotAlignment> alignment;  // keyed by source locus id

  friend bool operator==(const IsoCertificate&, const IsoCertificate&) = default;
};

std::optional<IsoCertificate> are_isomorphic(const MultibranchedSurface& source,
                                             const MultibranchedSurface& target,
                                             SymmetryMode mode = SymmetryMode::Rotational);

/// Checks that the certificate carries `source` literally onto `target`
/// using only symmetries permitted by `mode`.
bool verify_certificate(const MultibranchedSurface& source, const MultibranchedSurface& target,
                        const IsoCertificate& cert, SymmetryMode mode);

IsoCertificate invert(const IsoCertificate& cert);
/// first: X -> Y, second: Y -> Z; result X -> Z.
IsoCertificate compose(const IsoCertificate& first, const IsoCertificate& second);

/// Same surface with every slot cycle reversed (basepoint kept first).
MultibranchedSurface mirror_image(const MultibranchedSurface& surface);

}  // namespace mbs
