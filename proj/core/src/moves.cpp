#include "mbs/moves.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "splice.hpp"

namespace mbs {

std::string_view to_string(IxKind kind) {
  switch (kind) {
    case IxKind::NormalAnnulus: return "normal_annulus";
    case IxKind::QuasiNormalAnnulus: return "quasi_normal_annulus";
    case IxKind::NormalMoebius: return "normal_moebius";
  }
  return "normal_annulus";
}

std::string describe(const Move& move) {
  std::ostringstream os;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, IxSite>) {
          os << "IX(" << m.region << ", " << to_string(m.kind) << ")";
        } else if constexpr (std::is_same_v<T, IhSite>) {
          os << "IH(" << m.region << ")";
        } else {
          os << "XI(" << m.locus << ", ";
          std::visit(
              [&](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, NormalSplit>)
                  os << "normal gaps " << s.gap_a << "," << s.gap_b;
                else if constexpr (std::is_same_v<S, QuasiSplit>)
                  os << "quasi start " << s.start << " length " << s.length;
                else
                  os << "moebius cut " << s.cut_gap;
              },
              m.split);
          os << ")";
        }
      },
      move);
  return os.str();
}

namespace {

std::optional<IxKind> ix_kind(RegionClass cls) {
  switch (cls) {
    case RegionClass::NormalAnnulus: return IxKind::NormalAnnulus;
    case RegionClass::QuasiNormalAnnulus: return IxKind::QuasiNormalAnnulus;
    case RegionClass::NormalMoebius: return IxKind::NormalMoebius;
    default: return std::nullopt;
  }
}

// Slots after `slot`, going around once, excluding `slot` itself.
std::vector<std::string> cut_open(const BranchLocus& locus, std::size_t slot) {
  std::vector<std::string> out;
  const std::size_t k = locus.slots.size();
  for (std::size_t i = 1; i < k; ++i) out.push_back(locus.slots[(slot + i) % k]);
  return out;
}

std::vector<std::string> cyclic_run(const std::vector<std::string>& slots, int start, int length) {
  std::vector<std::string> out;
  const int k = static_cast<int>(slots.size());
  for (int i = 0; i < length; ++i) out.push_back(slots[(start + i) % k]);
  return out;
}

std::vector<std::string> ids_of(const std::vector<Region>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(r.id);
  return out;
}
std::vector<std::string> ids_of(const std::vector<BranchLocus>& v) {
  std::vector<std::string> out;
  for (const auto& l : v) out.push_back(l.id);
  return out;
}
std::vector<std::string> circles_of(const std::vector<Region>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.insert(out.end(), r.boundary_circles.begin(), r.boundary_circles.end());
  return out;
}

}  // namespace

namespace detail {

bool contractible(RegionClass cls) { return ix_kind(cls).has_value(); }

IxOutcome contract(const MultibranchedSurface& surface, std::size_t region_index, RegionClass cls) {
  const Region& region = surface.regions()[region_index];
  std::vector<Region> regions = surface.regions();
  regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(region_index));
  std::vector<BranchLocus> loci = surface.loci();

  BranchLocus merged;
  std::size_t keep = 0;
  std::optional<std::size_t> drop;
  std::optional<XiChoice> inverse;

  if (cls == RegionClass::NormalMoebius) {
    const Attachment at = *surface.attachment(region.boundary_circles[0]);
    const BranchLocus& l1 = loci[at.locus];
    merged = {l1.id, 2, cut_open(l1, at.slot)};
    keep = at.locus;
    inverse = XiChoice{merged.id, MoebiusSplit{0}};
  } else {
    Attachment first = *surface.attachment(region.boundary_circles[0]);
    Attachment second = *surface.attachment(region.boundary_circles[1]);
    if (cls == RegionClass::NormalAnnulus) {
      const BranchLocus& l1 = loci[first.locus];
      const BranchLocus& l2 = loci[second.locus];
      auto lin1 = cut_open(l1, first.slot);
      auto lin2 = cut_open(l2, second.slot);
      const int a = static_cast<int>(lin1.size());
      merged = {l1.id, 1, std::move(lin1)};
      merged.slots.insert(merged.slots.end(), lin2.begin(), lin2.end());
      keep = first.locus;
      drop = second.locus;
      inverse = XiChoice{merged.id, NormalSplit{0, a}};
    } else {
      if (loci[first.locus].wrapping != 1) std::swap(first, second);
      const BranchLocus& normal = loci[first.locus];
      const BranchLocus& unnormal = loci[second.locus];
      auto lin = cut_open(normal, first.slot);
      const int a = static_cast<int>(lin.size());
      merged = {unnormal.id, unnormal.wrapping, {}};
      for (std::size_t s = 0; s < unnormal.slots.size(); ++s) {
        if (s == second.slot)
          merged.slots.insert(merged.slots.end(), lin.begin(), lin.end());
        else
          merged.slots.push_back(unnormal.slots[s]);
      }
      keep = second.locus;
      drop = first.locus;
      inverse = XiChoice{merged.id, QuasiSplit{static_cast<int>(second.slot), a}};
    }
  }

  IxOutcome out;
  if (merged.slots.empty()) {
    inverse.reset();
    std::vector<std::size_t> gone{keep};
    if (drop) gone.push_back(*drop);
    std::sort(gone.rbegin(), gone.rend());
    for (std::size_t g : gone) loci.erase(loci.begin() + static_cast<std::ptrdiff_t>(g));
  } else {
    out.merged_locus = merged.id;
    loci[keep] = std::move(merged);
    if (drop) loci.erase(loci.begin() + static_cast<std::ptrdiff_t>(*drop));
  }
  out.inverse = std::move(inverse);
  out.surface = MultibranchedSurface(std::move(regions), std::move(loci), surface.mode());
  return out;
}

}  // namespace detail

std::vector<IxSite> enumerate_ix(const MultibranchedSurface& surface) {
  std::vector<IxSite> sites;
  for (const auto& region : surface.regions()) {
    if (!boundaries_attached(surface, region)) continue;
    if (auto kind = ix_kind(classify_region(surface, region.id))) sites.push_back({region.id, *kind});
  }
  return sites;
}

IxOutcome apply_ix_detailed(const MultibranchedSurface& surface, const IxSite& site) {
  auto idx = surface.region_index(site.region);
  if (!idx) throw std::invalid_argument("IX site: unknown region '" + site.region + "'");
  const Region& region = surface.regions()[*idx];
  if (!boundaries_attached(surface, region))
    throw std::invalid_argument("IX site: region '" + site.region + "' has an unattached boundary circle");
  const RegionClass cls = classify_region(surface, site.region);
  auto kind = ix_kind(cls);
  if (!kind || *kind != site.kind)
    throw std::invalid_argument("IX site: region '" + site.region + "' is " + std::string(to_string(cls)) +
                                ", not an eligible " + std::string(to_string(site.kind)));
  return detail::contract(surface, *idx, cls);
}

MultibranchedSurface apply_ix(const MultibranchedSurface& surface, const IxSite& site) {
  return apply_ix_detailed(surface, site).surface;
}

std::vector<XiChoice> enumerate_xi(const MultibranchedSurface& surface, std::string_view locus_id) {
  const BranchLocus& locus = surface.locus(locus_id);
  const int k = locus.component_count();
  const int w = locus.wrapping;
  std::vector<XiChoice> out;
  if (w == 1) {
    for (int i = 0; i < k; ++i)
      for (int j = i + 2; j < k; ++j)
        if (k - (j - i) >= 2) out.push_back({locus.id, NormalSplit{i, j}});
    return out;
  }
  if (k < 2) return out;
  for (int a = 2; a <= k; ++a) {
    if ((k - a + 1) * w < 3) continue;
    for (int start = 0; start < k; ++start) out.push_back({locus.id, QuasiSplit{start, a}});
  }
  if (w == 2)
    for (int g = 0; g < k; ++g) out.push_back({locus.id, MoebiusSplit{g}});
  return out;
}

XiOutcome apply_xi_detailed(const MultibranchedSurface& surface, const XiChoice& choice) {
  auto lidx = surface.locus_index(choice.locus);
  if (!lidx) throw std::invalid_argument("XI choice: unknown locus '" + choice.locus + "'");
  const auto available = enumerate_xi(surface, choice.locus);
  if (std::find(available.begin(), available.end(), choice) == available.end())
    throw std::invalid_argument("XI choice " + describe(choice) + " is not available");

  const BranchLocus& locus = surface.loci()[*lidx];
  const int k = locus.component_count();
  std::vector<Region> regions = surface.regions();
  std::vector<BranchLocus> loci = surface.loci();
  std::vector<std::string> circles = circles_of(regions);

  XiOutcome out;
  out.fresh_region = fresh_id("R", ids_of(regions));
  const std::string c1 = fresh_id("c", circles);
  circles.push_back(c1);
  const std::string c2 = fresh_id("c", circles);
  const std::string new_locus = fresh_id("B", ids_of(loci));

  std::visit(
      [&](const auto& split) {
        using S = std::decay_t<decltype(split)>;
        if constexpr (std::is_same_v<S, NormalSplit>) {
          auto arc1 = cyclic_run(locus.slots, split.gap_a, split.gap_b - split.gap_a);
          auto arc2 = cyclic_run(locus.slots, split.gap_b, k - (split.gap_b - split.gap_a));
          arc1.insert(arc1.begin(), c1);
          arc2.insert(arc2.begin(), c2);
          loci[*lidx] = {locus.id, 1, std::move(arc1)};
          loci.push_back({new_locus, 1, std::move(arc2)});
          regions.push_back({out.fresh_region, annulus_topology(), {c1, c2}});
        } else if constexpr (std::is_same_v<S, QuasiSplit>) {
          auto arc = cyclic_run(locus.slots, split.start, split.length);
          auto rest = cyclic_run(locus.slots, split.start + split.length, k - split.length);
          arc.insert(arc.begin(), c1);
          rest.insert(rest.begin(), c2);
          loci[*lidx] = {locus.id, locus.wrapping, std::move(rest)};
          loci.push_back({new_locus, 1, std::move(arc)});
          regions.push_back({out.fresh_region, annulus_topology(), {c1, c2}});
        } else {
          auto cycle = cyclic_run(locus.slots, split.cut_gap, k);
          cycle.insert(cycle.begin(), c1);
          loci[*lidx] = {locus.id, 1, std::move(cycle)};
          regions.push_back({out.fresh_region, moebius_topology(), {c1}});
        }
      },
      choice.split);

  out.surface = MultibranchedSurface(std::move(regions), std::move(loci), surface.mode());
  return out;
}

MultibranchedSurface apply_xi(const MultibranchedSurface& surface, const XiChoice& choice) {
  return apply_xi_detailed(surface, choice).surface;
}

bool is_maximally_spread_region(const MultibranchedSurface& surface, std::string_view region_id) {
  const Region& region = surface.region(region_id);
  for (const auto& circle : region.boundary_circles) {
    if (auto at = surface.attachment(circle)) {
      if (locus_profile(surface.loci()[at->locus]).is_spreadable) return false;
    }
  }
  return true;
}

bool is_maximally_spread_surface(const MultibranchedSurface& surface) {
  return std::none_of(surface.loci().begin(), surface.loci().end(),
                      [](const BranchLocus& l) { return locus_profile(l).is_spreadable; });
}

long long spread_potential(const MultibranchedSurface& surface) {
  long long total = 0;
  for (const auto& locus : surface.loci()) {
    const LocusProfile p = locus_profile(locus);
    if (p.is_pure) continue;
    total += p.is_normal ? p.component_count - 3 : 2LL * p.component_count - 3;
  }
  return total;
}

std::vector<IhSite> enumerate_ih(const MultibranchedSurface& surface) {
  std::vector<IhSite> sites;
  for (const auto& site : enumerate_ix(surface))
    if (is_maximally_spread_region(surface, site.region)) sites.push_back({site.region});
  return sites;
}

MultibranchedSurface apply_ih(const MultibranchedSurface& surface, const IhSite& site) {
  auto idx = surface.region_index(site.region);
  if (!idx) throw std::invalid_argument("IH site: unknown region '" + site.region + "'");
  if (!boundaries_attached(surface, surface.regions()[*idx]))
    throw std::invalid_argument("IH site: region '" + site.region + "' has an unattached boundary circle");
  auto kind = ix_kind(classify_region(surface, site.region));
  if (!kind) throw std::invalid_argument("IH site: region '" + site.region + "' admits no IX move");
  if (!is_maximally_spread_region(surface, site.region))
    throw std::invalid_argument("IH site: region '" + site.region + "' is not maximally spread");

  const IxOutcome ix = apply_ix_detailed(surface, {site.region, *kind});
  const auto choices = enumerate_xi(ix.surface, ix.merged_locus);
  if (choices.size() != 2)
    throw std::logic_error("IH: merged locus '" + ix.merged_locus + "' admits " + std::to_string(choices.size()) +
                           " XI moves instead of exactly two");

  const CanonicalForm original = canonical_form(surface, SymmetryMode::Rotational);
  for (std::size_t i = 0; i < 2; ++i) {
    if (canonical_form(apply_xi(ix.surface, choices[i]), SymmetryMode::Rotational) == original)
      return apply_xi(ix.surface, choices[1 - i]);
  }
  throw std::logic_error("IH: neither XI move at '" + ix.merged_locus + "' undoes the IX move");
}

MultibranchedSurface apply_move(const MultibranchedSurface& surface, const Move& move) {
  return std::visit(
      [&](const auto& m) -> MultibranchedSurface {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, IxSite>)
          return apply_ix(surface, m);
        else if constexpr (std::is_same_v<T, XiChoice>)
          return apply_xi(surface, m);
        else
          return apply_ih(surface, m);
      },
      move);
}

MoveRecord empty_record(const MultibranchedSurface& surface) {
  return {canonical_hash(surface, SymmetryMode::Rotational), {}};
}

MultibranchedSurface record_move(MoveRecord& record, const MultibranchedSurface& surface, const Move& move) {
  MultibranchedSurface next = apply_move(surface, move);
  const std::uint64_t before = canonical_hash(surface, SymmetryMode::Rotational);
  record.steps.push_back({move, before, canonical_hash(next, SymmetryMode::Rotational)});
  return next;
}

MultibranchedSurface replay(const MultibranchedSurface& surface, const MoveRecord& record) {
  MultibranchedSurface current = surface;
  if (canonical_hash(current) != record.initial_hash)
    throw std::runtime_error("replay: initial surface does not match the record");
  for (std::size_t i = 0; i < record.steps.size(); ++i) {
    const MoveStep& step = record.steps[i];
    if (canonical_hash(current) != step.hash_before)
      throw std::runtime_error("replay: hash mismatch before step " + std::to_string(i));
    current = apply_move(current, step.move);
    if (canonical_hash(current) != step.hash_after)
      throw std::runtime_error("replay: hash mismatch after step " + std::to_string(i));
  }
  return current;
}

namespace {

std::optional<XiChoice> first_xi(const MultibranchedSurface& surface) {
  for (const auto& locus : surface.loci()) {
    auto choices = enumerate_xi(surface, locus.id);
    if (!choices.empty()) return choices.front();
  }
  return std::nullopt;
}

void explore_spreads(const MultibranchedSurface& surface, const MoveRecord& record,
                     std::map<std::string, bool>& seen, std::map<std::string, SpreadResult>& results) {
  const std::string key = canonical_form(surface).bytes;
  if (!seen.emplace(key, true).second) return;
  if (is_maximally_spread_surface(surface)) {
    results.emplace(key, SpreadResult{surface, record});
    return;
  }
  for (const auto& locus : surface.loci()) {
    for (const auto& choice : enumerate_xi(surface, locus.id)) {
      MoveRecord next_record = record;
      MultibranchedSurface next = record_move(next_record, surface, choice);
      explore_spreads(next, next_record, seen, results);
    }
  }
}

}  // namespace

std::vector<SpreadResult> all_maximal_spreads(const MultibranchedSurface& surface) {
  std::map<std::string, bool> seen;
  std::map<std::string, SpreadResult> results;
  explore_spreads(surface, empty_record(surface), seen, results);
  std::vector<SpreadResult> out;
  for (auto& [key, result] : results) out.push_back(std::move(result));
  return out;
}

SpreadResult maximally_spread(const MultibranchedSurface& surface, SpreadPolicy policy) {
  if (policy == SpreadPolicy::Exhaustive) return all_maximal_spreads(surface).front();
  SpreadResult result{surface, empty_record(surface)};
  while (auto choice = first_xi(result.surface)) result.surface = record_move(result.record, result.surface, *choice);
  return result;
}

}  // namespace mbs
