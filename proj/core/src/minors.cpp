#include "mbs/minors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "splice.hpp"

namespace mbs {

std::string describe(const ReductionStep& step) {
  if (const auto* r = std::get_if<RemoveRegion>(&step)) return "remove " + r->region;
  return "contract " + std::get<ContractRegion>(step).region;
}

namespace {

bool eligible(const MultibranchedSurface& surface, const Region& region) {
  if (!region.topology.is_annulus() && !region.topology.is_moebius()) return false;
  if (!boundaries_attached(surface, region)) return false;
  return detail::contractible(classify_region(surface, region.id));
}

}  // namespace

std::vector<ReductionStep> enumerate_reductions(const MultibranchedSurface& surface) {
  std::vector<ReductionStep> steps;
  for (const auto& region : surface.regions()) steps.emplace_back(RemoveRegion{region.id});
  for (const auto& region : surface.regions())
    if (eligible(surface, region)) steps.emplace_back(ContractRegion{region.id});
  return steps;
}

MultibranchedSurface remove_region(const MultibranchedSurface& surface, std::string_view region_id) {
  const auto idx = surface.region_index(region_id);
  if (!idx) throw std::out_of_range("unknown region '" + std::string(region_id) + "'");
  const Region& gone = surface.regions()[*idx];
  std::unordered_set<std::string> circles(gone.boundary_circles.begin(), gone.boundary_circles.end());

  std::vector<Region> regions = surface.regions();
  regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(*idx));

  std::vector<BranchLocus> loci;
  for (BranchLocus locus : surface.loci()) {
    std::erase_if(locus.slots, [&](const std::string& c) { return circles.contains(c); });
    if (!locus.slots.empty()) loci.push_back(std::move(locus));
  }
  return {std::move(regions), std::move(loci), ValidityMode::Minor};
}

MultibranchedSurface contract_region(const MultibranchedSurface& surface, std::string_view region_id) {
  const auto idx = surface.region_index(region_id);
  if (!idx) throw std::out_of_range("unknown region '" + std::string(region_id) + "'");
  const Region& region = surface.regions()[*idx];
  if (!eligible(surface, region))
    throw std::invalid_argument("region '" + region.id + "' cannot be contracted");
  return detail::contract(surface, *idx, classify_region(surface, region.id)).surface.with_mode(ValidityMode::Minor);
}

MultibranchedSurface apply_reduction(const MultibranchedSurface& surface, const ReductionStep& step) {
  if (const auto* r = std::get_if<RemoveRegion>(&step)) return remove_region(surface, r->region);
  return contract_region(surface, std::get<ContractRegion>(step).region);
}

std::optional<std::vector<ReductionStep>> less_than(const MultibranchedSurface& x, const MultibranchedSurface& y,
                                                    const MinorBudget& budget) {
  const MultibranchedSurface ym = y.with_mode(ValidityMode::Minor);
  const auto goal = canonical_form(x.with_mode(ValidityMode::Minor), budget.mode);
  for (const auto& step : enumerate_reductions(ym))
    if (canonical_form(apply_reduction(ym, step), budget.mode) == goal) return std::vector<ReductionStep>{step};
  return std::nullopt;
}

bool tilde_equivalent(const MultibranchedSurface& x, const MultibranchedSurface& y, const MinorBudget& budget) {
  if (canonical_form(x.with_mode(ValidityMode::Minor), budget.mode) ==
      canonical_form(y.with_mode(ValidityMode::Minor), budget.mode))
    return true;
  return less_than(x, y, budget).has_value() && less_than(y, x, budget).has_value();
}

std::optional<std::vector<ReductionStep>> is_minor(const MultibranchedSurface& x, const MultibranchedSurface& y,
                                                   const MinorBudget& budget) {
  struct State {
    MultibranchedSurface surface;
    std::string parent;
    std::optional<ReductionStep> step;
    int depth = 0;
  };
  const MultibranchedSurface xm = x.with_mode(ValidityMode::Minor);
  const std::string goal = canonical_form(xm, budget.mode).bytes;

  std::unordered_map<std::string, State> seen;
  auto chain_to = [&](std::string key) {
    std::vector<ReductionStep> steps;
    for (const State* s = &seen.at(key); s->step; s = &seen.at(s->parent)) steps.push_back(*s->step);
    std::reverse(steps.begin(), steps.end());
    return steps;
  };

  MultibranchedSurface start = y.with_mode(ValidityMode::Minor);
  std::string start_key = canonical_form(start, budget.mode).bytes;
  if (start_key == goal) return std::vector<ReductionStep>{};
  seen.emplace(start_key, State{std::move(start), "", std::nullopt, 0});

  // Neither reduction adds regions or loci, so states smaller than X are dead ends.
  auto too_small = [&](const MultibranchedSurface& s) {
    return s.regions().size() < xm.regions().size() || s.loci().size() < xm.loci().size();
  };

  std::deque<std::string> queue{start_key};
  while (!queue.empty()) {
    const std::string key = queue.front();
    queue.pop_front();
    const State& here = seen.at(key);
    if (here.depth >= budget.max_depth) continue;
    const MultibranchedSurface current = here.surface;
    const int depth = here.depth;
    for (const auto& step : enumerate_reductions(current)) {
      MultibranchedSurface next = apply_reduction(current, step);
      if (too_small(next)) continue;
      std::string next_key = canonical_form(next, budget.mode).bytes;
      if (seen.contains(next_key)) continue;
      seen.emplace(next_key, State{std::move(next), key, step, depth + 1});
      if (next_key == goal) return chain_to(next_key);
      if (seen.size() >= budget.max_states) return std::nullopt;
      queue.push_back(std::move(next_key));
    }
  }
  return std::nullopt;
}

ObstructionFlags obstruction_screen(const MultibranchedSurface& surface) {
  ObstructionFlags flags;
  for (const auto& region : surface.regions())
    if (!region.topology.orientable && region.topology.is_closed()) flags.has_nonorientable_closed_region = true;
  int g = 0;
  for (const auto& locus : surface.loci()) g = std::gcd(g, locus.wrapping);
  flags.locus_wrapping_gcd = g == 0 ? 1 : g;
  return flags;
}

}  // namespace mbs
