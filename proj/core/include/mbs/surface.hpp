#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mbs {

/// Which set of well-formedness rules a surface is held to.
///
/// Strict surfaces have every locus of degree at least 3 and every region
/// attached along all of its boundary circles. Minor surfaces are the
/// relaxed objects produced by region removal and contraction: loci may
/// have degree 1 or 2, regions may be closed, and boundary circles may be
/// left unattached.
enum class ValidityMode { Strict, Minor };

std::string_view to_string(ValidityMode mode);

/// Compact surface type of a region. For non-orientable regions `genus` is
/// the crosscap number.
struct RegionTopology {
  bool orientable = true;
  int genus = 0;
  int boundary_count = 0;

  int euler() const;
  bool is_disk() const { return orientable && genus == 0 && boundary_count == 1; }
  bool is_annulus() const { return orientable && genus == 0 && boundary_count == 2; }
  bool is_moebius() const { return !orientable && genus == 1 && boundary_count == 1; }
  bool is_closed() const { return boundary_count == 0; }

  friend auto operator<=>(const RegionTopology&, const RegionTopology&) = default;
};

RegionTopology annulus_topology();
RegionTopology moebius_topology();

struct Region {
  std::string id;
  RegionTopology topology;
  std::vector<std::string> boundary_circles;

  friend bool operator==(const Region&, const Region&) = default;
};

/// A branch circle together with the boundary circles wrapped around it.
///
/// `slots` is the cyclic order of attached circles around the locus; the
/// first entry is an arbitrary basepoint. Every attached circle wraps
/// `wrapping` times, so the degree is `wrapping * slots.size()`.
struct BranchLocus {
  std::string id;
  int wrapping = 1;
  std::vector<std::string> slots;

  int component_count() const { return static_cast<int>(slots.size()); }
  int degree() const { return wrapping * component_count(); }

  friend bool operator==(const BranchLocus&, const BranchLocus&) = default;
};

/// Where a boundary circle sits: locus index and slot index within it.
struct Attachment {
  std::size_t locus = 0;
  std::size_t slot = 0;
};

/// Immutable combinatorial model of a multibranched surface.
///
/// Construction never fails; structural problems (duplicate ids, dangling
/// slots, disk regions, ...) are reported by `validate`. Lookup helpers
/// resolve the first occurrence of an identifier.
class MultibranchedSurface {
 public:
  MultibranchedSurface() = default;
  MultibranchedSurface(std::vector<Region> regions, std::vector<BranchLocus> loci,
                       ValidityMode mode = ValidityMode::Strict);

  const std::vector<Region>& regions() const { return regions_; }
  const std::vector<BranchLocus>& loci() const { return loci_; }
  ValidityMode mode() const { return mode_; }

  std::optional<std::size_t> region_index(std::string_view id) const;
  std::optional<std::size_t> locus_index(std::string_view id) const;
  const Region& region(std::string_view id) const;        // throws std::out_of_range
  const BranchLocus& locus(std::string_view id) const;    // throws std::out_of_range

  /// Region owning a boundary circle.
  std::optional<std::size_t> circle_owner(std::string_view circle) const;
  std::optional<Attachment> attachment(std::string_view circle) const;

  bool is_attached(std::string_view circle) const { return attachment(circle).has_value(); }
  bool empty() const { return regions_.empty() && loci_.empty(); }

  MultibranchedSurface with_mode(ValidityMode mode) const;

  friend bool operator==(const MultibranchedSurface& a, const MultibranchedSurface& b) {
    return a.mode_ == b.mode_ && a.regions_ == b.regions_ && a.loci_ == b.loci_;
  }

 private:
  std::vector<Region> regions_;
  std::vector<BranchLocus> loci_;
  ValidityMode mode_ = ValidityMode::Strict;

  std::unordered_map<std::string, std::size_t> region_by_id_;
  std::unordered_map<std::string, std::size_t> locus_by_id_;
  std::unordered_map<std::string, std::size_t> owner_by_circle_;
  std::unordered_map<std::string, Attachment> attachment_by_circle_;
};

struct Violation {
  std::string rule;     // stable machine-readable code, e.g. "disk-region"
  std::string subject;  // offending identifier
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

/// Lists every violated invariant; an empty report means the surface is valid.
ValidationReport validate(const MultibranchedSurface& surface);
inline bool is_valid(const MultibranchedSurface& surface) { return validate(surface).empty(); }

struct LocusProfile {
  int degree = 0;
  int wrapping = 0;
  int component_count = 0;
  bool is_normal = false;
  bool is_pure = false;
  bool is_tribranched = false;
  bool is_spreadable = false;
};

LocusProfile locus_profile(const BranchLocus& locus);
LocusProfile locus_profile(const MultibranchedSurface& surface, std::string_view locus_id);

enum class RegionClass {
  NormalAnnulus,
  QuasiNormalAnnulus,
  UnnormalAnnulus,
  ClosingAnnulus,
  NormalMoebius,
  UnnormalMoebius,
  Other,
};

std::string_view to_string(RegionClass cls);

/// Throws std::out_of_range for an unknown region and std::invalid_argument
/// when an annulus or Moebius region has an unattached boundary circle.
/// Closed regions classify as Other.
RegionClass classify_region(const MultibranchedSurface& surface, std::string_view region_id);

/// True when every boundary circle of the region occupies a slot.
bool boundaries_attached(const MultibranchedSurface& surface, const Region& region);

/// Sum of region Euler characteristics; branch circles contribute nothing.
int euler_characteristic(const MultibranchedSurface& surface);

/// Components of the region-locus incidence graph. Zero for the empty surface.
int connected_components(const MultibranchedSurface& surface);

/// Component index for every region and every locus, numbered by first
/// appearance (regions first, then loci).
struct ComponentLabels {
  int count = 0;
  std::vector<int> region_component;
  std::vector<int> locus_component;
};
ComponentLabels component_labels(const MultibranchedSurface& surface);

/// Pieces of the characteristic decomposition: one solid torus per locus and
/// one interval bundle per region. This is the size measure used by random
/// generation budgets and search caps.
std::size_t piece_count(const MultibranchedSurface& surface);

/// Smallest "<prefix><n>" (n >= 1) not contained in `taken`.
std::string fresh_id(std::string_view prefix, const std::vector<std::string>& taken);

}  // namespace mbs
