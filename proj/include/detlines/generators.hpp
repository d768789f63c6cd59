#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "detlines/complex.hpp"
#include "detlines/holomorphic.hpp"

namespace detlines {

struct GenProfile {
  int lo = 0;                          // lowest degree
  int hi = 2;                          // highest degree
  size_t max_dim = 3;                  // per-degree bound when dims are not given
  std::map<int, size_t> dims;          // explicit dimensions (overrides max_dim)
  std::map<int, size_t> homology;      // requested homology dimensions, if any
  bool gaussian = true;
  long entry_bound = 1;                // bound for conjugating unipotent entries
  uint64_t seed = 0;
};

// Normal-form differential with the requested ranks, conjugated degreewise by
// seeded unipotent matrices. Throws DimensionError for infeasible requests.
ChainComplex gen_random_complex(const GenProfile& profile);

// Profile of an exact complex on degrees lo..hi: random ranks r_j <= max_dim/2,
// dims r_j + r_{j+1}, all homology zero.
GenProfile exact_profile(uint64_t seed, int lo, int hi, size_t max_dim, bool gaussian = true);

// Another differential on the same chains (same dims), independent seed.
ChainComplex gen_on_chains(const GradedSpace& space, uint64_t seed, bool gaussian = true);

// A random element of the solution space of the commuting-square system.
// Seed 0 is the degenerate seed and yields the zero map.
ChainMap gen_chain_map(uint64_t seed, const ChainComplex& d1, const ChainComplex& d2,
                       bool gaussian = true);

// Dimension of the space of chain maps d1 -> d2.
size_t chain_map_space_dim(const ChainComplex& d1, const ChainComplex& d2);

// Z/2-graded complex on (np, nm) with random ranks (or the given homology).
Z2Complex gen_random_z2(uint64_t seed, size_t np, size_t nm, bool gaussian = true,
                        std::optional<std::pair<size_t, size_t>> homology = std::nullopt);

// Polynomial family d_j(z) = g_{j-1}(z) N_j g_j(z)^{-1} with N the complex of
// gen_random_complex(profile) and g_j(z) = 1 + p_j(z) E_j for an elementary E_j;
// homology ranks are therefore constant in z. Entry degree <= `degree`. With
// `scaled`, each d_j is further multiplied by 1 + c_j z (c_j != 0), so the
// family varies in an essential way and degenerates at the points -1/c_j.
struct PolyFamilyData {
  HoloFamily family;
  ChainComplex normal;
  std::map<int, PolyMat> g, g_inv;
};

PolyFamilyData gen_poly_family(const GenProfile& profile, int degree, bool scaled = false);

// A(z) = h(z) (A0 + z A1) g(z)^{-1} for random chain maps A0, A1 between the
// normal forms.
PolyChainMap gen_poly_chain_map(uint64_t seed, const PolyFamilyData& src, const PolyFamilyData& dst,
                                bool gaussian = true);

}  // namespace detlines
