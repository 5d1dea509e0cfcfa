#include <gtest/gtest.h>

#include "mbs/canonical.hpp"
#include "mbs/fixtures.hpp"
#include "mbs/homology.hpp"
#include "mbs/moves.hpp"
#include "support.hpp"

using namespace mbs;
using namespace mbs::testing;

namespace {

std::vector<std::string> site_regions(const std::vector<IxSite>& sites) {
  std::vector<std::string> out;
  for (const auto& s : sites) out.push_back(s.region);
  return out;
}

IxSite ix_site_for(const MultibranchedSurface& s, const std::string& region) {
  for (const auto& site : enumerate_ix(s))
    if (site.region == region) return site;
  throw std::logic_error("no IX site at " + region);
}

bool isomorphic(const MultibranchedSurface& a, const MultibranchedSurface& b) {
  return canonical_form(a) == canonical_form(b);
}

}  // namespace

TEST(EnumerateIx, Fixtures) {
  const auto theta = enumerate_ix(theta_fixture(3));
  EXPECT_EQ(site_regions(theta), (std::vector<std::string>{"R1", "R2", "R3"}));
  for (const auto& s : theta) EXPECT_EQ(s.kind, IxKind::NormalAnnulus);

  const auto qn = enumerate_ix(quasi_fixture());
  ASSERT_EQ(qn.size(), 1u);
  EXPECT_EQ(qn[0], (IxSite{"A", IxKind::QuasiNormalAnnulus}));

  const auto mb = enumerate_ix(moebius_fixture());
  ASSERT_EQ(mb.size(), 1u);
  EXPECT_EQ(mb[0], (IxSite{"M", IxKind::NormalMoebius}));
}

TEST(ApplyIx, NormalAnnulusSplice) {
  const auto out = apply_ix(theta_fixture(3), {"R1", IxKind::NormalAnnulus});
  ASSERT_EQ(out.loci().size(), 1u);
  const auto& l = out.loci()[0];
  EXPECT_EQ(l.wrapping, 1);
  EXPECT_EQ(l.slots, (std::vector<std::string>{"R2@B1", "R3@B1", "R2@B2", "R3@B2"}));
  EXPECT_EQ(classify_region(out, "R2"), RegionClass::ClosingAnnulus);
  EXPECT_EQ(classify_region(out, "R3"), RegionClass::ClosingAnnulus);
  EXPECT_TRUE(is_valid(out));
}

TEST(ApplyIx, MoebiusSplice) {
  const auto out = apply_ix(moebius_fixture(), {"M", IxKind::NormalMoebius});
  ASSERT_EQ(out.loci().size(), 1u);
  EXPECT_EQ(out.loci()[0].wrapping, 2);
  EXPECT_EQ(out.loci()[0].slots, (std::vector<std::string>{"c1", "c2"}));
  EXPECT_EQ(out.loci()[0].degree(), 4);
  EXPECT_EQ(homology_profile(out).h(1).to_string(), "Z + Z/4");
}

TEST(ApplyIx, QuasiSplice) {
  const auto out = apply_ix(quasi_fixture(), {"A", IxKind::QuasiNormalAnnulus});
  ASSERT_EQ(out.loci().size(), 1u);
  EXPECT_EQ(out.loci()[0].wrapping, 3);
  EXPECT_EQ(out.loci()[0].slots, (std::vector<std::string>{"c1", "c2"}));
  EXPECT_EQ(out.loci()[0].degree(), 6);
  EXPECT_EQ(homology_profile(out).h(1).to_string(), "Z + Z/6");
}

TEST(ApplyIx, IneligibleSitesThrow) {
  EXPECT_THROW(apply_ix(quasi_fixture(), {"C", IxKind::NormalAnnulus}), std::invalid_argument);
  EXPECT_THROW(apply_ix(quasi_fixture(), {"A", IxKind::NormalAnnulus}), std::invalid_argument);
  EXPECT_THROW(apply_ix(quasi_fixture(), {"Z", IxKind::NormalAnnulus}), std::invalid_argument);
}

TEST(ApplyIx, DegreeArithmetic) {
  for (const auto& s : random_corpus(120)) {
    for (const auto& site : enumerate_ix(s)) {
      const Region& r = s.region(site.region);
      const auto& l1 = s.loci()[s.attachment(r.boundary_circles[0])->locus];
      const auto out = apply_ix_detailed(s, site);
      const int merged = out.surface.locus(out.merged_locus).degree();
      if (site.kind == IxKind::NormalAnnulus) {
        const auto& l2 = s.loci()[s.attachment(r.boundary_circles[1])->locus];
        EXPECT_EQ(merged, l1.component_count() + l2.component_count() - 2);
      } else if (site.kind == IxKind::NormalMoebius) {
        EXPECT_EQ(merged, 2 * (l1.degree() - 1));
      } else {
        const auto& l2 = s.loci()[s.attachment(r.boundary_circles[1])->locus];
        const auto& normal = l1.wrapping == 1 ? l1 : l2;
        const auto& other = l1.wrapping == 1 ? l2 : l1;
        EXPECT_EQ(merged, other.degree() + (normal.degree() - 2) * other.wrapping);
      }
    }
  }
}

TEST(EnumerateXi, Examples) {
  EXPECT_TRUE(enumerate_xi(theta_fixture(3), "B1").empty());
  const auto merged = apply_ix_detailed(theta_fixture(3), {"R1", IxKind::NormalAnnulus});
  EXPECT_EQ(enumerate_xi(merged.surface, merged.merged_locus).size(), 2u);

  MultibranchedSurface five({{"P", {true, 1, 5}, {"p1", "p2", "p3", "p4", "p5"}}},
                            {{"L", 1, {"p1", "p2", "p3", "p4", "p5"}}});
  const auto choices = enumerate_xi(five, "L");
  EXPECT_EQ(choices.size(), 5u);
  for (const auto& c : choices) EXPECT_TRUE(std::holds_alternative<NormalSplit>(c.split));

  EXPECT_TRUE(enumerate_xi(quasi_fixture(), "Bp").empty());
  EXPECT_THROW(enumerate_xi(quasi_fixture(), "nope"), std::out_of_range);
}

TEST(EnumerateXi, SpreadabilityEquivalence) {
  for (const auto& s : random_corpus(200))
    for (const auto& l : s.loci())
      EXPECT_EQ(!enumerate_xi(s, l.id).empty(), locus_profile(l).is_spreadable) << l.id;
}

TEST(ApplyXi, RoundTrips) {
  const auto theta = theta_fixture(3);
  const auto ix = apply_ix_detailed(theta, {"R1", IxKind::NormalAnnulus});
  ASSERT_TRUE(ix.inverse);
  EXPECT_TRUE(isomorphic(apply_xi(ix.surface, *ix.inverse), theta));
  for (const auto& choice : enumerate_xi(ix.surface, ix.merged_locus))
    EXPECT_TRUE(isomorphic(apply_xi(ix.surface, choice), theta));

  MultibranchedSurface w2({{"A", {true, 1, 1}, {"a"}}, {"B", {true, 1, 1}, {"b"}}}, {{"L", 2, {"a", "b"}}});
  for (const auto& choice : enumerate_xi(w2, "L")) {
    if (!std::holds_alternative<MoebiusSplit>(choice.split)) continue;
    const auto xi = apply_xi_detailed(w2, choice);
    EXPECT_EQ(classify_region(xi.surface, xi.fresh_region), RegionClass::NormalMoebius);
    EXPECT_TRUE(isomorphic(apply_ix(xi.surface, {xi.fresh_region, IxKind::NormalMoebius}), w2));
  }
}

TEST(ApplyXi, FreshRegionContractsBack) {
  for (const auto& s : random_corpus(120)) {
    for (const auto& l : s.loci()) {
      for (const auto& choice : enumerate_xi(s, l.id)) {
        const auto xi = apply_xi_detailed(s, choice);
        EXPECT_TRUE(is_valid(xi.surface));
        EXPECT_TRUE(isomorphic(apply_ix(xi.surface, ix_site_for(xi.surface, xi.fresh_region)), s));
        EXPECT_LT(spread_potential(xi.surface), spread_potential(s));
      }
    }
  }
}

TEST(ApplyXi, RejectsUnlistedChoice) {
  EXPECT_THROW(apply_xi(theta_fixture(3), {"B1", NormalSplit{0, 1}}), std::invalid_argument);
}

TEST(Spread, Predicates) {
  EXPECT_TRUE(is_maximally_spread_surface(theta_fixture(3)));
  EXPECT_FALSE(is_maximally_spread_surface(apply_ix(theta_fixture(3), {"R1", IxKind::NormalAnnulus})));
  EXPECT_TRUE(is_maximally_spread_region(quasi_fixture(), "A"));
}

TEST(Spread, Potential) {
  EXPECT_EQ(spread_potential(theta_fixture(3)), 0);
  EXPECT_EQ(spread_potential(apply_ix(theta_fixture(3), {"R1", IxKind::NormalAnnulus})), 1);
  EXPECT_EQ(spread_potential(apply_ix(moebius_fixture(), {"M", IxKind::NormalMoebius})), 1);
  for (const auto& s : random_corpus(100)) EXPECT_EQ(spread_potential(s) == 0, is_maximally_spread_surface(s));
}

TEST(Spread, MaximallySpread) {
  const auto theta = theta_fixture(3);
  const auto same = maximally_spread(theta);
  EXPECT_EQ(same.surface, theta);
  EXPECT_TRUE(same.record.empty());

  const auto merged = apply_ix(theta, {"R1", IxKind::NormalAnnulus});
  const auto back = maximally_spread(merged);
  EXPECT_EQ(back.record.size(), 1u);
  EXPECT_TRUE(isomorphic(back.surface, theta));

  const auto mb = apply_ix(moebius_fixture(), {"M", IxKind::NormalMoebius});
  const auto mb_back = maximally_spread(mb);
  EXPECT_EQ(mb_back.record.size(), 1u);
  EXPECT_TRUE(isomorphic(mb_back.surface, moebius_fixture()));
  EXPECT_TRUE(isomorphic(maximally_spread(mb, SpreadPolicy::Exhaustive).surface, moebius_fixture()));
}

TEST(Spread, TerminatesWithinPotential) {
  for (const auto& s : random_corpus(100)) {
    const auto r = maximally_spread(s);
    EXPECT_LE(static_cast<long long>(r.record.size()), spread_potential(s));
    EXPECT_TRUE(is_maximally_spread_surface(r.surface));
    EXPECT_EQ(replay(s, r.record), r.surface);
  }
}

TEST(Spread, AllMaximalSpreadsAreDistinctAndSorted) {
  const auto x = apply_ix(theta_fixture(4), {"R1", IxKind::NormalAnnulus});
  const auto all = all_maximal_spreads(x);
  ASSERT_FALSE(all.empty());
  for (std::size_t i = 0; i + 1 < all.size(); ++i)
    EXPECT_LT(canonical_form(all[i].surface).bytes, canonical_form(all[i + 1].surface).bytes);
  for (const auto& r : all) EXPECT_TRUE(is_maximally_spread_surface(r.surface));
}

TEST(ApplyIh, Fixtures) {
  EXPECT_TRUE(isomorphic(apply_ih(theta_fixture(3), {"R1"}), theta_fixture(3)));
  EXPECT_TRUE(isomorphic(apply_ih(moebius_fixture(), {"M"}), moebius_fixture()));
  EXPECT_TRUE(isomorphic(apply_ih(quasi_fixture(), {"A"}), quasi_fixture()));
  EXPECT_THROW(apply_ih(quasi_fixture(), {"C"}), std::invalid_argument);
  EXPECT_THROW(apply_ih(apply_ix(theta_fixture(4), {"R1", IxKind::NormalAnnulus}), {"R2"}), std::invalid_argument);
}

TEST(ApplyIh, ExactlyTwoChoicesAtMaximallySpreadSites) {
  std::vector<MultibranchedSurface> corpus{theta_fixture(3), theta_fixture(5), moebius_fixture(), quasi_fixture()};
  for (const auto& s : random_corpus(100)) corpus.push_back(maximally_spread(s).surface);
  for (const auto& s : corpus) {
    for (const auto& site : enumerate_ih(s)) {
      const auto ix = apply_ix_detailed(s, ix_site_for(s, site.region));
      EXPECT_EQ(enumerate_xi(ix.surface, ix.merged_locus).size(), 2u);
      const auto ih = apply_ih(s, site);
      EXPECT_TRUE(is_maximally_spread_surface(ih));
      EXPECT_EQ(euler_characteristic(ih), euler_characteristic(s));
    }
  }
}

TEST(Records, ReplayAndHashCheck) {
  const auto theta = theta_fixture(4);
  MoveRecord record = empty_record(theta);
  auto s = record_move(record, theta, IxSite{"R1", IxKind::NormalAnnulus});
  const auto xi = enumerate_xi(s, s.loci()[0].id);
  s = record_move(record, s, xi.front());
  EXPECT_EQ(record.size(), 2u);
  EXPECT_EQ(record.initial_hash, canonical_hash(theta));
  EXPECT_EQ(record.final_hash(), canonical_hash(s));
  EXPECT_EQ(replay(theta, record), s);

  MoveRecord broken = record;
  broken.steps[1].hash_after ^= 1;
  EXPECT_THROW(replay(theta, broken), std::runtime_error);
  EXPECT_THROW(replay(moebius_fixture(), record), std::runtime_error);
}

TEST(Describe, IsReadable) {
  EXPECT_EQ(describe(Move{IxSite{"R1", IxKind::NormalAnnulus}}), "IX(R1, normal_annulus)");
  EXPECT_EQ(describe(Move{IhSite{"A"}}), "IH(A)");
}
