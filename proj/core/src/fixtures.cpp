#include "mbs/fixtures.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "rng.hpp"

namespace mbs {

MultibranchedSurface theta_fixture(int n, ValidityMode mode) {
  if (n < 1 || (mode == ValidityMode::Strict && n < 3))
    throw std::invalid_argument("theta(" + std::to_string(n) + ") needs n >= 3 in strict mode");
  std::vector<Region> regions;
  BranchLocus b1{"B1", 1, {}};
  BranchLocus b2{"B2", 1, {}};
  for (int i = 1; i <= n; ++i) {
    const std::string id = "R" + std::to_string(i);
    regions.push_back({id, annulus_topology(), {id + "@B1", id + "@B2"}});
    b1.slots.push_back(id + "@B1");
    b2.slots.push_back(id + "@B2");
  }
  return MultibranchedSurface(std::move(regions), {std::move(b1), std::move(b2)}, mode);
}

MultibranchedSurface moebius_fixture(ValidityMode mode) {
  return MultibranchedSurface({{"M", moebius_topology(), {"m"}}, {"C", annulus_topology(), {"c1", "c2"}}},
                              {{"B", 1, {"m", "c1", "c2"}}}, mode);
}

MultibranchedSurface quasi_fixture(ValidityMode mode) {
  return MultibranchedSurface({{"A", annulus_topology(), {"a", "a2"}}, {"C", annulus_topology(), {"c1", "c2"}}},
                              {{"Bn", 1, {"a", "c1", "c2"}}, {"Bp", 3, {"a2"}}}, mode);
}

MultibranchedSurface closed_surface_fixture(bool orientable, int genus, ValidityMode mode) {
  if (mode == ValidityMode::Strict)
    throw std::invalid_argument("closed surfaces are minor-mode fixtures");
  if (genus < 0 || (!orientable && genus < 1))
    throw std::invalid_argument("invalid genus for closed surface");
  return MultibranchedSurface({{"S", {orientable, genus, 0}, {}}}, {}, mode);
}

namespace {

int parse_int(const std::string& text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("expected an integer, got '" + text + "'");
  return value;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "orientable" || text == "1") return true;
  if (text == "false" || text == "nonorientable" || text == "0") return false;
  throw std::invalid_argument("expected true/false, got '" + text + "'");
}

void expect_params(std::string_view name, std::span<const std::string> params, std::size_t n) {
  if (params.size() != n)
    throw std::invalid_argument(std::string(name) + " takes " + std::to_string(n) + " parameter(s)");
}

}  // namespace

MultibranchedSurface build_fixture(std::string_view name, std::span<const std::string> params,
                                   ValidityMode mode) {
  if (name == "theta") {
    expect_params(name, params, 1);
    return theta_fixture(parse_int(params[0]), mode);
  }
  if (name == "mb") {
    expect_params(name, params, 0);
    return moebius_fixture(mode);
  }
  if (name == "qn") {
    expect_params(name, params, 0);
    return quasi_fixture(mode);
  }
  if (name == "closed_surface") {
    expect_params(name, params, 2);
    return closed_surface_fixture(parse_bool(params[0]), parse_int(params[1]), mode);
  }
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

namespace {

RegionTopology draw_topology(detail::Rng& rng, bool allow_closed) {
  if (allow_closed && rng.below(10) == 0) {
    const bool orientable = rng.below(2) == 0;
    return {orientable, orientable ? int(rng.below(3)) : 1 + int(rng.below(2)), 0};
  }
  const auto r = rng.below(100);
  if (r < 45) return annulus_topology();
  if (r < 60) return moebius_topology();
  if (r < 72) return {true, 0, 3};
  if (r < 82) return {true, 1, 1};
  if (r < 90) return {true, 1, 2};
  if (r < 95) return {false, 2, 1};
  return {false, 1, 2};
}

int draw_wrapping(detail::Rng& rng) {
  const auto r = rng.below(100);
  if (r < 60) return 1;
  if (r < 80) return 2;
  if (r < 95) return 3;
  return 4;
}

}  // namespace

MultibranchedSurface random_surface(std::uint64_t seed, std::size_t size_budget, ValidityMode mode) {
  if (size_budget < 2)
    throw std::invalid_argument("size budget " + std::to_string(size_budget) +
                                " is too small; the smallest surface has one locus and one region");
  const bool strict = mode == ValidityMode::Strict;
  detail::Rng rng(seed);

  const std::size_t max_loci = std::max<std::size_t>(1, size_budget / 3);
  const std::size_t m = 1 + rng.below(max_loci);
  const std::size_t n = 1 + rng.below(size_budget - m);

  std::vector<Region> regions;
  std::vector<std::string> circles;
  for (std::size_t j = 1; j <= n; ++j) {
    Region region{"R" + std::to_string(j), draw_topology(rng, !strict && j > 1), {}};
    regions.push_back(std::move(region));
  }

  auto min_slots = [&](int w) -> std::size_t {
    if (!strict) return 1;
    return w >= 3 ? 1 : (w == 2 ? 2 : 3);
  };
  std::vector<int> wrapping(m);
  for (auto& w : wrapping) w = draw_wrapping(rng);

  auto open_regions = [&] {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < regions.size(); ++j)
      if (!regions[j].topology.is_closed()) idx.push_back(j);
    return idx;
  };
  auto circle_total = [&] {
    int total = 0;
    for (const auto& r : regions) total += r.topology.boundary_count;
    return static_cast<std::size_t>(total);
  };
  if (open_regions().empty()) regions.front().topology = annulus_topology();

  // Shrink demands first by raising wrapping numbers, then add boundary.
  auto demand = [&] {
    std::size_t d = 0;
    for (int w : wrapping) d += min_slots(w);
    return d;
  };
  for (std::size_t i = 0; demand() > circle_total() && i < m; ++i)
    if (wrapping[i] < 3) wrapping[i] = 3;
  while (demand() > circle_total()) {
    const auto open = open_regions();
    regions[open[rng.below(open.size())]].topology.boundary_count += 1;
  }

  for (auto& region : regions) {
    for (int c = 1; c <= region.topology.boundary_count; ++c) {
      region.boundary_circles.push_back(region.id + "." + std::to_string(c));
      circles.push_back(region.boundary_circles.back());
    }
  }
  rng.shuffle(circles);

  std::vector<BranchLocus> loci(m);
  std::size_t next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    loci[i].id = "B" + std::to_string(i + 1);
    loci[i].wrapping = wrapping[i];
    for (std::size_t s = 0; s < min_slots(wrapping[i]); ++s) loci[i].slots.push_back(circles[next++]);
  }
  for (; next < circles.size(); ++next) loci[rng.below(m)].slots.push_back(circles[next]);
  for (auto& locus : loci) rng.shuffle(locus.slots);

  return MultibranchedSurface(std::move(regions), std::move(loci), mode);
}

}  // namespace mbs
