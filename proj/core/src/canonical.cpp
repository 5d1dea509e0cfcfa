#include "mbs/canonical.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mbs {

std::string_view to_string(SymmetryMode mode) {
  switch (mode) {
    case SymmetryMode::Rotational: return "rotational";
    case SymmetryMode::Mirror: return "mirror";
    case SymmetryMode::DihedralPerLocus: return "dihedral";
  }
  return "rotational";
}

std::optional<SymmetryMode> symmetry_mode_from_string(std::string_view text) {
  if (text == "rotational") return SymmetryMode::Rotational;
  if (text == "mirror") return SymmetryMode::Mirror;
  if (text == "dihedral" || text == "dihedral_per_locus") return SymmetryMode::DihedralPerLocus;
  return std::nullopt;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

MultibranchedSurface mirror_image(const MultibranchedSurface& surface) {
  std::vector<BranchLocus> loci = surface.loci();
  for (auto& l : loci)
    if (l.slots.size() > 2) std::reverse(l.slots.begin() + 1, l.slots.end());
  return MultibranchedSurface(surface.regions(), std::move(loci), surface.mode());
}

namespace {

using Code = std::vector<int>;

// Region of every slot, indexed [locus][slot]; -1 for a slot whose circle
// has no owning region (invalid input, still encoded deterministically).
struct Incidence {
  std::vector<std::vector<int>> slot_region;
  ComponentLabels components;
};

Incidence incidence_of(const MultibranchedSurface& s) {
  Incidence inc;
  for (const auto& l : s.loci()) {
    std::vector<int> row;
    for (const auto& c : l.slots) {
      auto owner = s.circle_owner(c);
      row.push_back(owner ? static_cast<int>(*owner) : -1);
    }
    inc.slot_region.push_back(std::move(row));
  }
  inc.components = component_labels(s);
  return inc;
}

struct Visit {
  std::size_t locus = 0;
  std::vector<int> slot_order;  // original slot indices in code order
};

struct Leaf {
  Code code;
  std::vector<Visit> visits;
  std::vector<int> region_order;  // label -> region index
};

// Branch-and-bound search for the lexicographically least code of one
// connected component. At each step the next locus word is chosen among all
// unvisited loci and all permitted rotations/directions; only words equal
// to the minimum are expanded, which is exact because every complete code
// must begin with a minimal word.
class ComponentCanonizer {
 public:
  ComponentCanonizer(const MultibranchedSurface& s, const Incidence& inc, std::vector<std::size_t> loci,
                     std::vector<int> directions, bool per_locus_reversal)
      : s_(s),
        inc_(inc),
        loci_(std::move(loci)),
        directions_(std::move(directions)),
        per_locus_(per_locus_reversal),
        label_(s.regions().size(), -1),
        visited_(s.loci().size(), false) {}

  Leaf run() {
    current_.code.push_back(static_cast<int>(loci_.size()));
    dfs(0);
    return *best_;
  }

 private:
  struct Candidate {
    std::size_t locus;
    int start;
    int dir;
    Code word;
  };

  Code word_for(std::size_t l, int start, int dir, std::vector<int>& fresh) const {
    const auto& row = inc_.slot_region[l];
    const int k = static_cast<int>(row.size());
    Code w{s_.loci()[l].wrapping, k};
    int next = next_label_;
    fresh.clear();
    for (int i = 0; i < k; ++i) {
      const int region = row[((start + dir * i) % k + k) % k];
      if (region < 0) {
        w.push_back(-1);
        continue;
      }
      int lab = label_[region];
      if (lab < 0) {
        auto it = std::find(fresh.begin(), fresh.end(), region);
        if (it != fresh.end()) {
          lab = next_label_ + static_cast<int>(it - fresh.begin());
        } else {
          fresh.push_back(region);
          lab = next++;
          const auto& t = s_.regions()[region].topology;
          w.push_back(lab);
          w.push_back(t.orientable ? 1 : 0);
          w.push_back(t.genus);
          w.push_back(t.boundary_count);
          continue;
        }
      }
      w.push_back(lab);
    }
    return w;
  }

  bool worse_than_best() const {
    if (!best_) return false;
    const auto& a = current_.code;
    const auto& b = best_->code;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
  }

  void dfs(std::size_t depth) {
    if (depth == loci_.size()) {
      if (!best_ || current_.code < best_->code) best_ = current_;
      return;
    }
    std::vector<Candidate> candidates;
    std::vector<int> fresh;
    Code min_word;
    for (std::size_t l : loci_) {
      if (visited_[l]) continue;
      const int k = static_cast<int>(inc_.slot_region[l].size());
      for (int start = 0; start < k; ++start) {
        for (int dir : directions_) {
          if (k <= 2 && dir < 0 && per_locus_) continue;  // reversal equals a rotation
          Code w = word_for(l, start, dir, fresh);
          if (!candidates.empty() && w > min_word) continue;
          if (candidates.empty() || w < min_word) min_word = w;
          candidates.push_back({l, start, dir, std::move(w)});
        }
      }
    }
    for (const auto& cand : candidates) {
      if (cand.word == min_word) expand(cand, depth);
    }
  }

  void expand(const Candidate& cand, std::size_t depth) {
    const std::size_t before_code = current_.code.size();
    const std::size_t before_regions = current_.region_order.size();
    const int before_next = next_label_;

    current_.code.insert(current_.code.end(), cand.word.begin(), cand.word.end());
    if (worse_than_best()) {
      current_.code.resize(before_code);
      return;
    }
    const auto& row = inc_.slot_region[cand.locus];
    const int k = static_cast<int>(row.size());
    Visit visit{cand.locus, {}};
    for (int i = 0; i < k; ++i) {
      const int slot = ((cand.start + cand.dir * i) % k + k) % k;
      visit.slot_order.push_back(slot);
      const int region = row[slot];
      if (region >= 0 && label_[region] < 0) {
        label_[region] = next_label_++;
        current_.region_order.push_back(region);
      }
    }
    current_.visits.push_back(std::move(visit));
    visited_[cand.locus] = true;

    dfs(depth + 1);

    visited_[cand.locus] = false;
    current_.visits.pop_back();
    for (std::size_t i = before_regions; i < current_.region_order.size(); ++i)
      label_[current_.region_order[i]] = -1;
    current_.region_order.resize(before_regions);
    next_label_ = before_next;
    current_.code.resize(before_code);
  }

  const MultibranchedSurface& s_;
  const Incidence& inc_;
  std::vector<std::size_t> loci_;
  std::vector<int> directions_;
  bool per_locus_;

  std::vector<int> label_;
  std::vector<bool> visited_;
  int next_label_ = 0;
  Leaf current_;
  std::optional<Leaf> best_;
};

struct Labeling {
  std::vector<Leaf> components;  // sorted by code
  Code flat;
};

Labeling label_surface(const MultibranchedSurface& s, const Incidence& inc, std::vector<int> directions,
                       bool per_locus) {
  const auto& comps = inc.components;
  std::vector<std::vector<std::size_t>> loci_of(comps.count);
  std::vector<std::vector<std::size_t>> regions_of(comps.count);
  for (std::size_t l = 0; l < s.loci().size(); ++l) loci_of[comps.locus_component[l]].push_back(l);
  for (std::size_t r = 0; r < s.regions().size(); ++r) regions_of[comps.region_component[r]].push_back(r);

  Labeling out;
  for (int c = 0; c < comps.count; ++c) {
    if (loci_of[c].empty()) {
      // A lone region: its topology is the whole story.
      Leaf leaf;
      const std::size_t r = regions_of[c].front();
      const auto& t = s.regions()[r].topology;
      leaf.code = {0, t.orientable ? 1 : 0, t.genus, t.boundary_count};
      leaf.region_order = {static_cast<int>(r)};
      out.components.push_back(std::move(leaf));
      continue;
    }
    ComponentCanonizer canon(s, inc, loci_of[c], directions, per_locus);
    out.components.push_back(canon.run());
  }
  std::stable_sort(out.components.begin(), out.components.end(),
                   [](const Leaf& a, const Leaf& b) { return a.code < b.code; });
  out.flat.push_back(static_cast<int>(out.components.size()));
  for (const auto& leaf : out.components) {
    out.flat.push_back(static_cast<int>(leaf.code.size()));
    out.flat.insert(out.flat.end(), leaf.code.begin(), leaf.code.end());
  }
  return out;
}

Labeling canonical_labeling(const MultibranchedSurface& s, SymmetryMode mode) {
  const Incidence inc = incidence_of(s);
  switch (mode) {
    case SymmetryMode::Rotational:
      return label_surface(s, inc, {1}, false);
    case SymmetryMode::Mirror: {
      Labeling forward = label_surface(s, inc, {1}, false);
      Labeling backward = label_surface(s, inc, {-1}, false);
      return backward.flat < forward.flat ? backward : forward;
    }
    case SymmetryMode::DihedralPerLocus:
      return label_surface(s, inc, {1, -1}, true);
  }
  throw std::logic_error("unhandled symmetry mode");
}

void append_varint(std::string& out, int value) {
  // Codes hold small non-negative values; -1 marks an ownerless slot.
  auto v = static_cast<std::uint64_t>(static_cast<std::int64_t>(value) + 1);
  do {
    unsigned char byte = v & 0x7f;
    v >>= 7;
    if (v) byte |= 0x80;
    out.push_back(static_cast<char>(byte));
  } while (v);
}

std::string encode(const Code& flat, SymmetryMode mode) {
  std::string bytes(kCanonicalFormTag);
  bytes.push_back(static_cast<char>('0' + static_cast<int>(mode)));
  for (int v : flat) append_varint(bytes, v);
  return bytes;
}

int mod(int a, int k) { return ((a % k) + k) % k; }

SlotAlignment normalized(int rotation, bool reversed, int k) {
  if (k <= 0) return {0, false, k};
  if (k <= 2) reversed = false;
  return {mod(rotation, k), reversed, k};
}

}  // namespace

CanonicalForm canonical_form(const MultibranchedSurface& surface, SymmetryMode mode) {
  return {mode, encode(canonical_labeling(surface, mode).flat, mode)};
}

std::uint64_t canonical_hash(const MultibranchedSurface& surface, SymmetryMode mode) {
  return fnv1a64(canonical_form(surface, mode).bytes);
}

std::optional<IsoCertificate> are_isomorphic(const MultibranchedSurface& source,
                                             const MultibranchedSurface& target, SymmetryMode mode) {
  if (source.regions().size() != target.regions().size() || source.loci().size() != target.loci().size())
    return std::nullopt;
  const Labeling a = canonical_labeling(source, mode);
  const Labeling b = canonical_labeling(target, mode);
  if (a.flat != b.flat) return std::nullopt;

  IsoCertificate cert;
  for (std::size_t c = 0; c < a.components.size(); ++c) {
    const Leaf& la = a.components[c];
    const Leaf& lb = b.components[c];
    for (std::size_t i = 0; i < la.region_order.size(); ++i) {
      const Region& ra = source.regions()[la.region_order[i]];
      const Region& rb = target.regions()[lb.region_order[i]];
      cert.region_map[ra.id] = rb.id;
      std::vector<std::string> free_a, free_b;
      for (const auto& circle : ra.boundary_circles)
        if (!source.is_attached(circle)) free_a.push_back(circle);
      for (const auto& circle : rb.boundary_circles)
        if (!target.is_attached(circle)) free_b.push_back(circle);
      for (std::size_t f = 0; f < free_a.size() && f < free_b.size(); ++f) cert.circle_map[free_a[f]] = free_b[f];
    }
    for (std::size_t v = 0; v < la.visits.size(); ++v) {
      const Visit& va = la.visits[v];
      const Visit& vb = lb.visits[v];
      const BranchLocus& xa = source.loci()[va.locus];
      const BranchLocus& xb = target.loci()[vb.locus];
      cert.locus_map[xa.id] = xb.id;
      const int k = static_cast<int>(va.slot_order.size());
      for (int i = 0; i < k; ++i) cert.circle_map[xa.slots[va.slot_order[i]]] = xb.slots[vb.slot_order[i]];
      // Source index as a function of target index j: sa + da * db * (j - sb).
      const int sa = va.slot_order[0];
      const int sb = vb.slot_order[0];
      const int da = k > 1 ? mod(va.slot_order[1] - sa, k) == 1 ? 1 : -1 : 1;
      const int db = k > 1 ? mod(vb.slot_order[1] - sb, k) == 1 ? 1 : -1 : 1;
      const bool reversed = da * db < 0;
      cert.alignment[xa.id] = normalized(reversed ? sa + sb : sa - sb, reversed, k);
    }
  }
  return cert;
}

bool verify_certificate(const MultibranchedSurface& source, const MultibranchedSurface& target,
                        const IsoCertificate& cert, SymmetryMode mode) {
  auto bijective = [](const std::map<std::string, std::string>& m, std::size_t n) {
    std::set<std::string> images;
    for (const auto& [k, v] : m) images.insert(v);
    return m.size() == n && images.size() == n;
  };
  if (source.regions().size() != target.regions().size() || source.loci().size() != target.loci().size())
    return false;
  if (!bijective(cert.region_map, source.regions().size()) || !bijective(cert.locus_map, source.loci().size()))
    return false;

  std::size_t circle_count = 0;
  for (const auto& r : source.regions()) circle_count += r.boundary_circles.size();
  if (!bijective(cert.circle_map, circle_count)) return false;

  for (const auto& ra : source.regions()) {
    auto it = cert.region_map.find(ra.id);
    if (it == cert.region_map.end()) return false;
    auto rb_idx = target.region_index(it->second);
    if (!rb_idx) return false;
    const Region& rb = target.regions()[*rb_idx];
    if (ra.topology != rb.topology) return false;
    std::multiset<std::string> mapped, expected(rb.boundary_circles.begin(), rb.boundary_circles.end());
    for (const auto& circle : ra.boundary_circles) {
      auto c = cert.circle_map.find(circle);
      if (c == cert.circle_map.end()) return false;
      if (source.is_attached(circle) != target.is_attached(c->second)) return false;
      mapped.insert(c->second);
    }
    if (mapped != expected) return false;
  }

  std::optional<bool> global_reversal;
  for (const auto& xa : source.loci()) {
    auto it = cert.locus_map.find(xa.id);
    auto al = cert.alignment.find(xa.id);
    if (it == cert.locus_map.end() || al == cert.alignment.end()) return false;
    auto xb_idx = target.locus_index(it->second);
    if (!xb_idx) return false;
    const BranchLocus& xb = target.loci()[*xb_idx];
    const int k = xa.component_count();
    if (xa.wrapping != xb.wrapping || k != xb.component_count() || al->second.slot_count != k) return false;
    const auto& [rotation, reversed, count] = al->second;
    if (reversed && k >= 3) {
      if (mode == SymmetryMode::Rotational) return false;
      if (mode == SymmetryMode::Mirror && global_reversal.value_or(true) != true) return false;
      global_reversal = true;
    } else if (k >= 3) {
      if (mode == SymmetryMode::Mirror && global_reversal.value_or(false) != false) return false;
      global_reversal = false;
    }
    for (int j = 0; j < k; ++j) {
      const int src = mod(reversed ? rotation - j : rotation + j, k);
      auto c = cert.circle_map.find(xa.slots[src]);
      if (c == cert.circle_map.end() || c->second != xb.slots[j]) return false;
    }
  }
  return true;
}

IsoCertificate invert(const IsoCertificate& cert) {
  IsoCertificate out;
  for (const auto& [a, b] : cert.region_map) out.region_map[b] = a;
  for (const auto& [a, b] : cert.locus_map) out.locus_map[b] = a;
  for (const auto& [a, b] : cert.circle_map) out.circle_map[b] = a;
  for (const auto& [a, al] : cert.alignment) {
    const std::string& b = cert.locus_map.at(a);
    out.alignment[b] = normalized(al.reversed ? al.rotation : -al.rotation, al.reversed, al.slot_count);
  }
  return out;
}

IsoCertificate compose(const IsoCertificate& first, const IsoCertificate& second) {
  IsoCertificate out;
  for (const auto& [a, b] : first.region_map) out.region_map[a] = second.region_map.at(b);
  for (const auto& [a, b] : first.locus_map) out.locus_map[a] = second.locus_map.at(b);
  for (const auto& [a, b] : first.circle_map) out.circle_map[a] = second.circle_map.at(b);
  for (const auto& [a, f1] : first.alignment) {
    const SlotAlignment& f2 = second.alignment.at(first.locus_map.at(a));
    const int s1 = f1.reversed ? -1 : 1;
    const int s2 = f2.reversed ? -1 : 1;
    out.alignment[a] = normalized(f1.rotation + s1 * f2.rotation, s1 * s2 < 0, f1.slot_count);
  }
  return out;
}

}  // namespace mbs
