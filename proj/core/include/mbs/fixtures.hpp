#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "mbs/surface.hpp"

namespace mbs {

/// Two normal loci B1, B2 with n slots each and annuli R1..Rn, where Ri sits
/// at slot i of both loci. Circle ids are "Ri@B1" and "Ri@B2".
/// Throws std::invalid_argument for n < 3 in strict mode or n < 1.
MultibranchedSurface theta_fixture(int n, ValidityMode mode = ValidityMode::Strict);

/// Normal tribranched locus B = [m, c1, c2] carrying a Moebius band M at m
/// and a closing annulus C at c1, c2.
MultibranchedSurface moebius_fixture(ValidityMode mode = ValidityMode::Strict);

/// Normal locus Bn = [a, c1, c2] and pure locus Bp = [a2] with w = 3;
/// annulus A joins a and a2, closing annulus C sits at c1, c2.
MultibranchedSurface quasi_fixture(ValidityMode mode = ValidityMode::Strict);

/// A single closed region S with no loci. Minor mode only.
MultibranchedSurface closed_surface_fixture(bool orientable, int genus,
                                            ValidityMode mode = ValidityMode::Minor);

/// Name-based dispatch used by the CLI: "theta" {n}, "mb", "qn",
/// "closed_surface" {orientable, genus}. Throws std::invalid_argument on an
/// unknown name or bad parameters.
MultibranchedSurface build_fixture(std::string_view name, std::span<const std::string> params,
                                   ValidityMode mode);

/// Deterministic pseudo-random strict or minor surface with at most
/// `size_budget` pieces (regions + loci).
///
/// Generation: pick a locus count m and region count n with m + n within
/// budget, draw region topologies (annuli most often, never disks), draw a
/// wrapping number per locus, then give every locus the fewest circles that
/// make its degree legal and spread the remaining circles at random. Slot
/// orders are shuffled. Throws std::invalid_argument when the budget is
/// below 2.
MultibranchedSurface random_surface(std::uint64_t seed, std::size_t size_budget,
                                    ValidityMode mode = ValidityMode::Strict);

}  // namespace mbs
