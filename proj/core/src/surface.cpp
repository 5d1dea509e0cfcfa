#include "mbs/surface.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace mbs {

std::string_view to_string(ValidityMode mode) {
  return mode == ValidityMode::Strict ? "strict" : "minor";
}

int RegionTopology::euler() const {
  return orientable ? 2 - 2 * genus - boundary_count : 2 - genus - boundary_count;
}

RegionTopology annulus_topology() { return {true, 0, 2}; }
RegionTopology moebius_topology() { return {false, 1, 1}; }

MultibranchedSurface::MultibranchedSurface(std::vector<Region> regions,
                                           std::vector<BranchLocus> loci, ValidityMode mode)
    : regions_(std::move(regions)), loci_(std::move(loci)), mode_(mode) {
  for (std::size_t r = 0; r < regions_.size(); ++r) {
    region_by_id_.try_emplace(regions_[r].id, r);
    for (const auto& circle : regions_[r].boundary_circles) owner_by_circle_.try_emplace(circle, r);
  }
  for (std::size_t l = 0; l < loci_.size(); ++l) {
    locus_by_id_.try_emplace(loci_[l].id, l);
    for (std::size_t s = 0; s < loci_[l].slots.size(); ++s)
      attachment_by_circle_.try_emplace(loci_[l].slots[s], Attachment{l, s});
  }
}

std::optional<std::size_t> MultibranchedSurface::region_index(std::string_view id) const {
  auto it = region_by_id_.find(std::string(id));
  if (it == region_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> MultibranchedSurface::locus_index(std::string_view id) const {
  auto it = locus_by_id_.find(std::string(id));
  if (it == locus_by_id_.end()) return std::nullopt;
  return it->second;
}

const Region& MultibranchedSurface::region(std::string_view id) const {
  auto idx = region_index(id);
  if (!idx) throw std::out_of_range("unknown region '" + std::string(id) + "'");
  return regions_[*idx];
}

const BranchLocus& MultibranchedSurface::locus(std::string_view id) const {
  auto idx = locus_index(id);
  if (!idx) throw std::out_of_range("unknown locus '" + std::string(id) + "'");
  return loci_[*idx];
}

std::optional<std::size_t> MultibranchedSurface::circle_owner(std::string_view circle) const {
  auto it = owner_by_circle_.find(std::string(circle));
  if (it == owner_by_circle_.end()) return std::nullopt;
  return it->second;
}

std::optional<Attachment> MultibranchedSurface::attachment(std::string_view circle) const {
  auto it = attachment_by_circle_.find(std::string(circle));
  if (it == attachment_by_circle_.end()) return std::nullopt;
  return it->second;
}

MultibranchedSurface MultibranchedSurface::with_mode(ValidityMode mode) const {
  return MultibranchedSurface(regions_, loci_, mode);
}

ValidationReport validate(const MultibranchedSurface& surface) {
  ValidationReport report;
  auto add = [&](std::string rule, std::string subject, std::string message) {
    report.push_back({std::move(rule), std::move(subject), std::move(message)});
  };
  const bool strict = surface.mode() == ValidityMode::Strict;

  std::unordered_set<std::string> region_ids;
  std::unordered_set<std::string> circles;
  for (const auto& region : surface.regions()) {
    if (region.id.empty()) add("empty-id", region.id, "region with empty id");
    if (!region_ids.insert(region.id).second)
      add("duplicate-region-id", region.id, "region id '" + region.id + "' used twice");
    const auto& topo = region.topology;
    if (topo.genus < 0) add("negative-genus", region.id, "genus must be non-negative");
    if (topo.boundary_count < 0)
      add("negative-boundary-count", region.id, "boundary count must be non-negative");
    if (!topo.orientable && topo.genus < 1)
      add("nonorientable-genus", region.id, "non-orientable region needs crosscap number >= 1");
    if (topo.is_disk()) add("disk-region", region.id, "disk region '" + region.id + "'");
    if (static_cast<int>(region.boundary_circles.size()) != topo.boundary_count)
      add("boundary-count-mismatch", region.id,
          "region lists " + std::to_string(region.boundary_circles.size()) +
              " boundary circles but boundary_count is " + std::to_string(topo.boundary_count));
    if (strict && topo.boundary_count == 0)
      add("closed-region", region.id, "closed region '" + region.id + "' is allowed in minor mode only");
    for (const auto& circle : region.boundary_circles) {
      if (!circles.insert(circle).second)
        add("duplicate-circle", circle, "boundary circle '" + circle + "' listed twice");
    }
  }

  std::unordered_set<std::string> locus_ids;
  std::unordered_set<std::string> occupied;
  for (const auto& locus : surface.loci()) {
    if (locus.id.empty()) add("empty-id", locus.id, "locus with empty id");
    if (!locus_ids.insert(locus.id).second)
      add("duplicate-locus-id", locus.id, "locus id '" + locus.id + "' used twice");
    if (locus.wrapping < 1)
      add("wrapping", locus.id, "wrapping number must be positive");
    if (locus.slots.empty()) add("empty-locus", locus.id, "locus has no slots");
    for (const auto& circle : locus.slots) {
      if (!circles.contains(circle))
        add("dangling-slot", locus.id,
            "slot of locus '" + locus.id + "' refers to unknown circle '" + circle + "'");
      if (!occupied.insert(circle).second)
        add("circle-reused", circle, "circle '" + circle + "' occupies more than one slot");
    }
    if (strict && locus.wrapping >= 1 && !locus.slots.empty() && locus.degree() < 3)
      add("degree", locus.id,
          "locus degree " + std::to_string(locus.degree()) + " < 3");
  }

  if (strict) {
    for (const auto& region : surface.regions())
      for (const auto& circle : region.boundary_circles)
        if (!occupied.contains(circle))
          add("unattached-circle", circle, "boundary circle '" + circle + "' is not attached to a locus");
  }
  return report;
}

LocusProfile locus_profile(const BranchLocus& locus) {
  LocusProfile p;
  p.degree = locus.degree();
  p.wrapping = locus.wrapping;
  p.component_count = locus.component_count();
  p.is_normal = locus.wrapping == 1;
  p.is_pure = p.component_count == 1;
  p.is_tribranched = p.degree == 3;
  p.is_spreadable = !(p.is_normal && p.is_tribranched) && !p.is_pure;
  return p;
}

LocusProfile locus_profile(const MultibranchedSurface& surface, std::string_view locus_id) {
  return locus_profile(surface.locus(locus_id));
}

std::string_view to_string(RegionClass cls) {
  switch (cls) {
    case RegionClass::NormalAnnulus: return "normal_annulus";
    case RegionClass::QuasiNormalAnnulus: return "quasi_normal_annulus";
    case RegionClass::UnnormalAnnulus: return "unnormal_annulus";
    case RegionClass::ClosingAnnulus: return "closing_annulus";
    case RegionClass::NormalMoebius: return "normal_moebius";
    case RegionClass::UnnormalMoebius: return "unnormal_moebius";
    case RegionClass::Other: return "other";
  }
  return "other";
}

bool boundaries_attached(const MultibranchedSurface& surface, const Region& region) {
  return std::all_of(region.boundary_circles.begin(), region.boundary_circles.end(),
                     [&](const std::string& c) { return surface.is_attached(c); });
}

RegionClass classify_region(const MultibranchedSurface& surface, std::string_view region_id) {
  const Region& region = surface.region(region_id);
  const auto& topo = region.topology;
  if (!topo.is_annulus() && !topo.is_moebius()) return RegionClass::Other;
  if (!boundaries_attached(surface, region))
    throw std::invalid_argument("region '" + region.id + "' has an unattached boundary circle");

  auto locus_of = [&](const std::string& circle) { return surface.attachment(circle)->locus; };
  auto normal = [&](std::size_t l) { return surface.loci()[l].wrapping == 1; };

  if (topo.is_moebius()) {
    return normal(locus_of(region.boundary_circles[0])) ? RegionClass::NormalMoebius
                                                        : RegionClass::UnnormalMoebius;
  }
  const std::size_t a = locus_of(region.boundary_circles[0]);
  const std::size_t b = locus_of(region.boundary_circles[1]);
  if (a == b) return RegionClass::ClosingAnnulus;
  const int normal_ends = int(normal(a)) + int(normal(b));
  if (normal_ends == 2) return RegionClass::NormalAnnulus;
  if (normal_ends == 1) return RegionClass::QuasiNormalAnnulus;
  return RegionClass::UnnormalAnnulus;
}

int euler_characteristic(const MultibranchedSurface& surface) {
  int chi = 0;
  for (const auto& region : surface.regions()) chi += region.topology.euler();
  return chi;
}

ComponentLabels component_labels(const MultibranchedSurface& surface) {
  const std::size_t nr = surface.regions().size();
  const std::size_t nl = surface.loci().size();
  std::vector<std::size_t> parent(nr + nl);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t l = 0; l < nl; ++l) {
    for (const auto& circle : surface.loci()[l].slots) {
      if (auto owner = surface.circle_owner(circle)) parent[find(nr + l)] = find(*owner);
    }
  }
  ComponentLabels labels;
  labels.region_component.assign(nr, -1);
  labels.locus_component.assign(nl, -1);
  std::unordered_map<std::size_t, int> number;
  auto label = [&](std::size_t node) {
    auto [it, inserted] = number.try_emplace(find(node), labels.count);
    if (inserted) ++labels.count;
    return it->second;
  };
  for (std::size_t r = 0; r < nr; ++r) labels.region_component[r] = label(r);
  for (std::size_t l = 0; l < nl; ++l) labels.locus_component[l] = label(nr + l);
  return labels;
}

int connected_components(const MultibranchedSurface& surface) {
  return component_labels(surface).count;
}

std::size_t piece_count(const MultibranchedSurface& surface) {
  return surface.regions().size() + surface.loci().size();
}

std::string fresh_id(std::string_view prefix, const std::vector<std::string>& taken) {
  std::unordered_set<std::string> used(taken.begin(), taken.end());
  for (int n = 1;; ++n) {
    std::string candidate = std::string(prefix) + std::to_string(n);
    if (!used.contains(candidate)) return candidate;
  }
}

}  // namespace mbs
