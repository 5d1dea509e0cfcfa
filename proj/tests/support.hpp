#pragma once

// Test-only helpers: independent oracles and corpus builders. Nothing here
// calls the library's Smith normal form or determinant.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>
#include <nlohmann/json.hpp>

#include "mbs/fixtures.hpp"
#include "mbs/smith.hpp"
#include "mbs/surface.hpp"

namespace mbs::testing {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Dense = std::vector<std::vector<BigInt>>;

inline Dense to_dense(const IntegerMatrix& m) {
  Dense d(m.rows(), std::vector<BigInt>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
  return d;
}

inline IntegerMatrix from_dense(const Dense& d, std::size_t cols) {
  IntegerMatrix m(d.size(), cols);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d[i][j];
  return m;
}

/// Determinant by Gaussian elimination over the rationals.
inline BigInt rational_determinant(const Dense& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return boost::multiprecision::numerator(det);
}

/// Determinant by cofactor expansion along the first row. Small matrices only.
inline BigInt laplace_determinant(const Dense& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  BigInt total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    Dense minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<BigInt> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    const BigInt term = a[0][j] * laplace_determinant(minor);
    total += (j % 2 == 0) ? term : BigInt(-term);
  }
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  if (k > n) return;
  while (true) {
    f(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

/// Invariant factors (including 1s, excluding zeros) from determinantal
/// divisors: d_k is the gcd of all k x k minors and s_k = d_k / d_{k-1}.
inline std::vector<BigInt> determinantal_factors(const Dense& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<BigInt> factors;
  BigInt previous = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    BigInt g = 0;
    for_each_subset(rows, k, [&](const std::vector<std::size_t>& rs) {
      for_each_subset(cols, k, [&](const std::vector<std::size_t>& cs) {
        Dense minor(k, std::vector<BigInt>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) minor[i][j] = a[rs[i]][cs[j]];
        g = boost::multiprecision::gcd(g, BigInt(abs(laplace_determinant(minor))));
      });
    });
    if (g == 0) break;
    factors.push_back(g / previous);
    previous = g;
  }
  return factors;
}

struct OracleGroup {
  std::size_t betti = 0;
  std::vector<BigInt> torsion;
};

/// Homology of C2 -> C1 -> C0 from boundary matrices, via determinantal divisors.
inline std::vector<OracleGroup> oracle_homology(const Dense& d1, std::size_t n1, const Dense& d2, std::size_t n2) {
  const std::size_t n0 = d1.size();
  const auto f1 = n1 ? determinantal_factors(d1) : std::vector<BigInt>{};
  const auto f2 = n2 ? determinantal_factors(d2) : std::vector<BigInt>{};
  auto torsion = [](const std::vector<BigInt>& f) {
    std::vector<BigInt> t;
    for (const auto& x : f)
      if (x > 1) t.push_back(x);
    return t;
  };
  return {{n0 - f1.size(), torsion(f1)}, {n1 - f1.size() - f2.size(), torsion(f2)}, {n2 - f2.size(), {}}};
}

inline nlohmann::json load_test_data(const std::string& name) {
  std::ifstream in(std::string(MBS_TEST_DATA_DIR) + "/" + name);
  return nlohmann::json::parse(in);
}

inline Dense dense_from_json(const nlohmann::json& rows) {
  Dense d;
  for (const auto& row : rows) {
    std::vector<BigInt> r;
    for (const auto& x : row) r.emplace_back(x.get<long long>());
    d.push_back(std::move(r));
  }
  return d;
}

/// Seeds 1..count with budgets cycling through 6..30 pieces.
inline std::vector<MultibranchedSurface> random_corpus(std::uint64_t count, ValidityMode mode = ValidityMode::Strict) {
  std::vector<MultibranchedSurface> out;
  for (std::uint64_t seed = 1; seed <= count; ++seed)
    out.push_back(random_surface(seed, 6 + static_cast<std::size_t>(seed % 25), mode));
  return out;
}

/// Renames every region, locus and circle and rotates every slot cycle.
inline MultibranchedSurface scramble(const MultibranchedSurface& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto rename = [&](const std::string& prefix, const std::string& id) { return prefix + "_" + id + "_" + std::to_string(seed); };
  std::vector<Region> regions;
  for (const auto& r : s.regions()) {
    Region copy{rename("r", r.id), r.topology, {}};
    for (const auto& c : r.boundary_circles) copy.boundary_circles.push_back(rename("c", c));
    std::shuffle(copy.boundary_circles.begin(), copy.boundary_circles.end(), rng);
    regions.push_back(std::move(copy));
  }
  std::shuffle(regions.begin(), regions.end(), rng);
  std::vector<BranchLocus> loci;
  for (const auto& l : s.loci()) {
    BranchLocus copy{rename("l", l.id), l.wrapping, {}};
    for (const auto& c : l.slots) copy.slots.push_back(rename("c", c));
    if (!copy.slots.empty())
      std::rotate(copy.slots.begin(), copy.slots.begin() + static_cast<std::ptrdiff_t>(rng() % copy.slots.size()),
                  copy.slots.end());
    loci.push_back(std::move(copy));
  }
  std::shuffle(loci.begin(), loci.end(), rng);
  return {std::move(regions), std::move(loci), s.mode()};
}

/// Torus as a minor-mode complex: one normal locus of degree 2 carrying a
/// closing annulus.
inline MultibranchedSurface torus_complex() {
  return MultibranchedSurface({{"T", annulus_topology(), {"t1", "t2"}}}, {{"L", 1, {"t1", "t2"}}},
                              ValidityMode::Minor);
}

}  // namespace mbs::testing
