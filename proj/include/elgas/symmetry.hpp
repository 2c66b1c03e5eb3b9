#pragma once

// Signed coordinate permutations (the cubic group O_h) acting on Z^3, used to
// fold k-sums over symmetry orbits when every summand is invariant.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "elgas/vec3.hpp"

namespace elgas {

struct SignedPermutation {
  std::array<int, 3> perm{0, 1, 2};
  std::array<std::int64_t, 3> sign{1, 1, 1};

  IVec3 apply(const IVec3& v) const {
    const auto a = v.as_array();
    return {sign[0] * a[perm[0]], sign[1] * a[perm[1]], sign[2] * a[perm[2]]};
  }
};

/// All 48 elements of O_h, identity first.
inline std::vector<SignedPermutation> cubic_group() {
  std::vector<SignedPermutation> out;
  std::array<int, 3> p{0, 1, 2};
  do {
    for (int mask = 0; mask < 8; ++mask) {
      SignedPermutation g;
      g.perm = p;
      for (int i = 0; i < 3; ++i) g.sign[i] = (mask >> i) & 1 ? -1 : 1;
      out.push_back(g);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Elements g of O_h with g(xi) = +-xi, i.e. the stabiliser of the pair {xi, -xi}.
inline std::vector<SignedPermutation> pair_stabilizer(const IVec3& xi) {
  std::vector<SignedPermutation> out;
  for (const auto& g : cubic_group()) {
    const IVec3 img = g.apply(xi);
    if (img == xi || img == -xi) out.push_back(g);
  }
  return out;
}

struct OrbitRep {
  IVec3 k;
  std::int64_t multiplicity;
};

/// Folds a lexicographically ordered list of k (closed under the group) into
/// orbit representatives. The representative is the lexicographic maximum of
/// the orbit; output keeps the input order of the representatives.
inline std::vector<OrbitRep> fold_orbits(const std::vector<IVec3>& ks, const std::vector<SignedPermutation>& group) {
  std::vector<OrbitRep> out;
  std::vector<IVec3> images;
  images.reserve(group.size());
  for (const auto& k : ks) {
    images.clear();
    bool is_rep = true;
    for (const auto& g : group) {
      const IVec3 img = g.apply(k);
      if (img > k) {
        is_rep = false;
        break;
      }
      images.push_back(img);
    }
    if (!is_rep) continue;
    std::sort(images.begin(), images.end());
    const auto distinct = std::unique(images.begin(), images.end()) - images.begin();
    out.push_back({k, static_cast<std::int64_t>(distinct)});
  }
  return out;
}

/// Orbit representatives of the full cubic group in the shell r_lo^2 < |k|^2 <= r_hi^2
/// (squared radii as integers), enumerated directly as a >= b >= c >= 0.
inline std::vector<OrbitRep> cubic_orbits(std::int64_t lo2, std::int64_t hi2) {
  std::vector<OrbitRep> out;
  for (std::int64_t a = 0; a * a <= hi2; ++a)
    for (std::int64_t b = 0; b <= a && a * a + b * b <= hi2; ++b)
      for (std::int64_t c = 0; c <= b; ++c) {
        const std::int64_t n2 = a * a + b * b + c * c;
        if (n2 == 0 || n2 > hi2 || n2 <= lo2) continue;
        // Distinct permutations times sign choices of the nonzero entries.
        std::int64_t perms = (a == b && b == c) ? 1 : (a == b || b == c) ? 3 : 6;
        const int nonzero = (a != 0) + (b != 0) + (c != 0);
        out.push_back({IVec3{a, b, c}, perms * (std::int64_t{1} << nonzero)});
      }
  return out;
}

}  // namespace elgas
