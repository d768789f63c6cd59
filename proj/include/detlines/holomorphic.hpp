#pragma once

#include <map>
#include <optional>
#include <vector>

#include "detlines/complex.hpp"

namespace detlines {

using PolyMat = Matrix<Polynomial>;
using RatMat = Matrix<RatFunc>;

Mat eval_matrix(const PolyMat& m, const Gaussian& z);
// Throws DivisionByZero when z is a pole of some entry.
Mat eval_matrix(const RatMat& m, const Gaussian& z);
RatMat to_ratmat(const PolyMat& m);
PolyMat to_polymat(const Mat& m);
int max_degree(const PolyMat& m);

// Z-graded complex whose differentials are polynomial in one variable z.
struct HoloFamily {
  GradedSpace space;
  std::map<int, PolyMat> diffs;  // d_j(z) : X_j -> X_{j-1}

  size_t dim(int j) const { return space.dim(j); }
  PolyMat d(int j) const;
  int max_degree() const;  // 0 for constant families
};

// d_{j-1}(z) d_j(z) = 0 coefficientwise; throws ValidationError otherwise.
void validate_family(const HoloFamily& f);
ChainComplex eval_family(const HoloFamily& f, const Gaussian& z);
HoloFamily constant_family(const ChainComplex& d);

// A polynomial chain map, component j : X_j -> Y_j.
using PolyChainMap = std::map<int, PolyMat>;
void validate_family_map(const HoloFamily& src, const HoloFamily& dst, const PolyChainMap& a);
ChainMap eval_chain_map(const PolyChainMap& a, const Gaussian& z);

// Deterministic grid of distinct gaussian points off the integer lattice.
std::vector<Gaussian> default_grid(size_t count);

// strict: a degenerate grid point is an error; exclude: it is dropped and
// reported in the result.
enum class GridPolicy { strict, exclude };

struct IdempotentFamily {
  RatMat k;                         // K(z), idempotent with image Ker A(z)
  size_t rank = 0;                  // rank of A at the basepoint
  std::vector<Gaussian> excluded;   // grid points where the formula is invalid
};

// K(z) = 1 - C (R A(z) C)^{-1} R A(z) with C a complement of Ker A(z0) and R
// selecting independent rows of A(z0) C.
IdempotentFamily kernel_idempotent_family(const PolyMat& a, const Gaussian& z0,
                                          const std::vector<Gaussian>& grid,
                                          GridPolicy policy = GridPolicy::strict);

// Trivial complex with dims n_j and maps F_j(z) : C^{n_j} -> X_{j-1} + C^{n_{j-1}}
// (rows of X first) such that the perturbed complex is exact on `grid`.
struct LocalTrivialization {
  std::map<int, size_t> n;
  std::map<int, PolyMat> f;
  std::vector<Gaussian> grid;
  std::vector<Gaussian> excluded;

  size_t n_at(int j) const;
  size_t n_plus() const;
  size_t n_minus() const;
};

struct TrivializationOptions {
  Rng* rng = nullptr;   // randomizes the chosen complements
  size_t extra = 0;     // redundant columns added per nonzero step (needs rng)
  bool gaussian = true;
  GridPolicy policy = GridPolicy::strict;
};

LocalTrivialization build_local_trivialization(const HoloFamily& f, const Gaussian& z0,
                                               const std::vector<Gaussian>& grid,
                                               const TrivializationOptions& opt = {});

// D(z) + C with zero differential on C, and the perturbed D_F(z). Chains in
// degree j are X_j + C^{n_j}.
ChainComplex augmented_complex(const HoloFamily& f, const LocalTrivialization& t,
                               const Gaussian& z);
ChainComplex perturbed_complex(const HoloFamily& f, const LocalTrivialization& t,
                               const Gaussian& z);
bool is_exact(const ChainComplex& d);

// Points of `grid` where D_F(z) fails to be exact.
std::vector<Gaussian> inexact_points(const HoloFamily& f, const LocalTrivialization& t,
                                     const std::vector<Gaussian>& grid);

// Phi_F at z: the scalar of P(D_F, D + C) i_C relative to the canonical
// homology basis of D(z). The basis of C is the standard one, ordered by
// position in the folded chains.
Gaussian trivialization_scalar(const HoloFamily& f, const LocalTrivialization& t,
                               const Gaussian& z);

struct ReconstructionBounds {
  int num = 0;
  int den = 0;
};

struct FunctionResult {
  RatFunc f;
  std::vector<Sample> samples;
  std::vector<Sample> held_out;
  std::vector<Gaussian> excluded;
};

// z -> i_G^{-1} P(Delta + G, D + C) i_C for exact families, with C = (c, c)
// and G = (g, g) appended after the folded chains.
Gaussian perturbation_value(const HoloFamily& fd, const HoloFamily& fdelta, size_t c, size_t g,
                            const Gaussian& z);

// Samples the pointwise values, reconstructs a rational function, and checks
// it on `held_out` further points. Without bounds: total dimension times the
// largest entry degree for both numerator and denominator.
FunctionResult perturbation_function(const HoloFamily& fd, const HoloFamily& fdelta, size_t c,
                                     size_t g, const std::vector<Gaussian>& grid,
                                     std::optional<ReconstructionBounds> bounds = std::nullopt,
                                     size_t held_out = 10,
                                     GridPolicy policy = GridPolicy::strict);

// Phi_{F2} Phi_{F1}^{-1} as a rational function; must not vanish on the grid.
FunctionResult transition_function(const HoloFamily& f, const LocalTrivialization& t1,
                                   const LocalTrivialization& t2,
                                   const std::vector<Gaussian>& grid,
                                   std::optional<ReconstructionBounds> bounds = std::nullopt,
                                   size_t held_out = 10);

// Mapping cone of a polynomial chain map, chains Y_j + X_{j-1}.
HoloFamily cone_family(const HoloFamily& fd, const HoloFamily& fdelta, const PolyChainMap& a);

// Simultaneous trivializations of D, Delta and the cone. The cone's trivial
// complex has degree j part Gamma_j + C_{j-1}, with maps K_j in the block
// layout rows (Y_{j-1}, X_{j-2}, Gamma_{j-1}, C_{j-2}).
struct TrivializationPair {
  LocalTrivialization f;       // for D
  LocalTrivialization g;       // for Delta
  std::map<int, PolyMat> h;    // H_j : C_j -> Y_j + Gamma_j
  LocalTrivialization k;       // for the cone
};

TrivializationPair cone_trivialization(const HoloFamily& fd, const HoloFamily& fdelta,
                                       const PolyChainMap& a, const Gaussian& z0,
                                       const std::vector<Gaussian>& grid,
                                       const TrivializationOptions& opt = {});

// (Phi_F (x) Phi_K) T(z) Phi_G^{-1} at one point.
Gaussian torsion_section_value(const HoloFamily& fd, const HoloFamily& fdelta,
                               const PolyChainMap& a, const TrivializationPair& pair,
                               const Gaussian& z);

// Common value over the grid; throws ValidationError listing the divergent
// points when the values differ.
Gaussian torsion_section_constant(const HoloFamily& fd, const HoloFamily& fdelta,
                                  const PolyChainMap& a, const TrivializationPair& pair,
                                  const std::vector<Gaussian>& grid);

// (-1)^{n- + m+ (n+ + n-)} for the trivial complexes of the pair.
int torsion_section_sign(const TrivializationPair& pair);

}  // namespace detlines
