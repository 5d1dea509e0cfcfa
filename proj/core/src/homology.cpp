#include "mbs/homology.hpp"

#include <sstream>
#include <stdexcept>

namespace mbs {

ChainComplex build_chain_complex(const MultibranchedSurface& surface) {
  const auto& loci = surface.loci();
  const auto& regions = surface.regions();

  ChainComplex cc;
  for (const auto& l : loci) cc.vertex_labels.push_back("v:" + l.id);
  for (const auto& r : regions) cc.vertex_labels.push_back("u:" + r.id);
  for (const auto& l : loci) cc.edge_labels.push_back("e:" + l.id);

  struct Column {
    std::vector<std::pair<std::size_t, long long>> entries;
  };
  std::vector<Column> faces;
  struct Tether {
    std::size_t edge;
    std::size_t locus;
    std::size_t region;
  };
  std::vector<Tether> tethers;

  for (std::size_t j = 0; j < regions.size(); ++j) {
    const auto& region = regions[j];
    const auto& topo = region.topology;
    Column face;
    if (topo.orientable) {
      for (int m = 1; m <= topo.genus; ++m) {
        cc.edge_labels.push_back("a" + std::to_string(m) + ":" + region.id);
        cc.edge_labels.push_back("b" + std::to_string(m) + ":" + region.id);
      }
    } else {
      for (int m = 1; m <= topo.genus; ++m) {
        face.entries.emplace_back(cc.edge_labels.size(), 2);
        cc.edge_labels.push_back("x" + std::to_string(m) + ":" + region.id);
      }
    }
    for (const auto& circle : region.boundary_circles) {
      if (auto at = surface.attachment(circle)) {
        tethers.push_back({cc.edge_labels.size(), at->locus, j});
        cc.edge_labels.push_back("t:" + circle);
        face.entries.emplace_back(at->locus, loci[at->locus].wrapping);
      } else {
        face.entries.emplace_back(cc.edge_labels.size(), 1);
        cc.edge_labels.push_back("f:" + circle);
      }
    }
    cc.face_labels.push_back("F:" + region.id);
    faces.push_back(std::move(face));
  }

  cc.boundary1 = IntegerMatrix(cc.vertex_labels.size(), cc.edge_labels.size());
  // Tethers run from the region vertex to the locus vertex.
  for (const auto& t : tethers) {
    cc.boundary1(t.locus, t.edge) += 1;
    cc.boundary1(loci.size() + t.region, t.edge) -= 1;
  }

  cc.boundary2 = IntegerMatrix(cc.edge_labels.size(), faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (const auto& [edge, coeff] : faces[f].entries) cc.boundary2(edge, f) += coeff;
  return cc;
}

std::string HomologyGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " + ";
    first = false;
  };
  if (betti > 0) {
    sep();
    os << "Z";
    if (betti > 1) os << "^" << betti;
  }
  for (const auto& t : torsion) {
    sep();
    os << "Z/" << t;
  }
  if (first) os << "0";
  return os.str();
}

long long HomologyProfile::euler() const {
  return static_cast<long long>(groups[0].betti) - static_cast<long long>(groups[1].betti) +
         static_cast<long long>(groups[2].betti);
}

std::array<std::size_t, 3> mod2_betti(const HomologyProfile& profile) {
  auto even = [](const HomologyGroup& g) {
    std::size_t n = 0;
    for (const auto& t : g.torsion)
      if ((t % 2) == 0) ++n;
    return n;
  };
  std::array<std::size_t, 3> out{};
  for (std::size_t q = 0; q < 3; ++q) {
    out[q] = profile.h(q).betti + even(profile.h(q));
    if (q > 0) out[q] += even(profile.h(q - 1));
  }
  return out;
}

namespace {

std::vector<Integer> nontrivial(const std::vector<Integer>& factors) {
  std::vector<Integer> out;
  for (const auto& f : factors)
    if (f > 1) out.push_back(f);
  return out;
}

}  // namespace

HomologyProfile homology_from_complex(const ChainComplex& cc) {
  const std::size_t n0 = cc.boundary1.rows();
  const std::size_t n1 = cc.boundary1.cols();
  const std::size_t n2 = cc.boundary2.cols();
  const auto f1 = smith_normal_form(cc.boundary1).invariant_factors();
  const auto f2 = smith_normal_form(cc.boundary2).invariant_factors();
  const std::size_t r1 = f1.size();
  const std::size_t r2 = f2.size();

  HomologyProfile p;
  p.groups[0] = {n0 - r1, nontrivial(f1)};
  p.groups[1] = {n1 - r1 - r2, nontrivial(f2)};
  p.groups[2] = {n2 - r2, {}};
  return p;
}

HomologyProfile homology_profile(const MultibranchedSurface& surface) {
  return homology_from_complex(build_chain_complex(surface));
}

DecompositionSummary decomposition_summary(const MultibranchedSurface& surface) {
  if (surface.mode() != ValidityMode::Strict)
    throw std::invalid_argument("decomposition summary is defined for strict surfaces");
  DecompositionSummary d;
  d.solid_torus_count = surface.loci().size();
  for (const auto& region : surface.regions()) {
    if (region.topology.is_closed()) continue;
    (region.topology.orientable ? d.product_bundle_count : d.twisted_bundle_count) += 1;
  }
  for (const auto& locus : surface.loci()) d.characteristic_annuli_count += locus.slots.size();
  return d;
}

int boundary_euler(const MultibranchedSurface& surface) {
  if (surface.mode() != ValidityMode::Strict)
    throw std::invalid_argument("boundary Euler characteristic is defined for strict surfaces");
  return 2 * euler_characteristic(surface);
}

}  // namespace mbs
