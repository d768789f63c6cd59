#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detlines/linalg.hpp"
#include "detlines/random.hpp"

namespace detlines {

struct GradedSpace {
  std::map<int, size_t> dims;

  size_t dim(int j) const {
    auto it = dims.find(j);
    return it == dims.end() ? 0 : it->second;
  }
  bool empty() const;
  // Smallest / largest degree with a recorded entry; 0 when empty.
  int lo() const { return dims.empty() ? 0 : dims.begin()->first; }
  int hi() const { return dims.empty() ? 0 : dims.rbegin()->first; }
  size_t total() const;
  friend bool operator==(const GradedSpace& a, const GradedSpace& b) { return a.dims == b.dims; }
};

struct ChainComplex {
  GradedSpace space;
  std::map<int, Mat> diffs;  // d_j : X_j -> X_{j-1}

  size_t dim(int j) const { return space.dim(j); }
  // d_j, or the zero map of the right shape when absent.
  Mat d(int j) const;
};

struct ChainMap {
  std::map<int, Mat> comps;  // A_j : X_j -> Y_j

  Mat at(int j, size_t rows, size_t cols) const;
};

// Throws ValidationError naming the first degree j with d_{j-1} d_j != 0 (or
// a shape mismatch at j).
void validate_complex(const ChainComplex& d);
void validate_chain_map(const ChainComplex& src, const ChainComplex& dst, const ChainMap& a);

struct Z2Block {
  int degree = 0;
  size_t dim = 0;
  bool stabilizer = false;
};

// Which Z-degrees were folded into each parity, in order.
struct Z2Layout {
  std::vector<Z2Block> plus;
  std::vector<Z2Block> minus;

  // Offset of a Z-degree inside its parity block.
  size_t offset(int degree) const;
};

struct Z2Complex {
  size_t np = 0;
  size_t nm = 0;
  Mat dp;  // X+ -> X-
  Mat dm;  // X- -> X+
  Z2Layout layout;

  static Z2Complex make(Mat dplus, Mat dminus);
};

void validate_z2(const Z2Complex& d);

// Homology of one node: cycles, boundaries and a canonical representative
// basis (the complement of the boundaries inside the cycles).
struct HomologyPiece {
  Subspace<Gaussian> cycles;
  Subspace<Gaussian> boundaries;
  Mat reps;
  CoordSystem<Gaussian> frame;  // columns [reps | boundary basis]

  size_t dim() const { return reps.cols(); }
  // Coordinates of cycles relative to reps, modulo boundaries.
  Mat coords(const Mat& cycles_in) const;

  static HomologyPiece build(const Mat& outgoing, const Mat& incoming, size_t n);
  static HomologyPiece with_reps(const Mat& outgoing, const Mat& incoming, size_t n, Mat reps);
};

struct Z2Homology {
  HomologyPiece plus;
  HomologyPiece minus;
};

struct HomologyData {
  std::map<int, HomologyPiece> degrees;
};

HomologyData homology(const ChainComplex& d);
Z2Homology homology(const Z2Complex& d);

Z2Complex fold_z2(const ChainComplex& d);

// Folds a degree-shifting graded map (component j : X_j -> Y_{j+shift}).
// Returns the blocks leaving X+ and X-.
std::pair<Mat, Mat> fold_map(const std::map<int, Mat>& comps, const Z2Layout& src,
                             const Z2Layout& dst, int shift);

long index(const Z2Complex& d);
long euler_characteristic(const ChainComplex& d);

struct Cone {
  ChainComplex complex;
  ChainMap i;  // X2_j -> C_j
  ChainMap p;  // C_j -> X1_{j-1}, keyed by j
};

Cone mapping_cone(const ChainComplex& d1, const ChainComplex& d2, const ChainMap& a);

// A triangle D1 -> D2 -> C -> T D1 in folded form. p shifts parity.
struct Z2Triangle {
  Z2Complex d1, d2, cone;
  Mat a_p, a_m;
  Mat i_p, i_m;
  Mat p_p;  // C+ -> X1-
  Mat p_m;  // C- -> X1+
};

Z2Triangle fold_triangle(const ChainComplex& d1, const ChainComplex& d2, const ChainMap& a);

// Hexagon nodes in cyclic order V+1, V+2, V+, V-1, V-2, V-; maps[k] goes
// from node k to node k+1 (mod 6): d+, i+, p+, d-, i-, p-.
struct SixTermSequence {
  std::array<size_t, 6> dims{};
  std::array<Mat, 6> maps;

  static SixTermSequence make(std::array<Mat, 6> maps);
};

// Index of the first node where exactness fails, if any.
std::optional<int> first_inexact_node(const SixTermSequence& s);

SixTermSequence six_term(const Z2Triangle& t, const Z2Homology& h1, const Z2Homology& h2,
                         const Z2Homology& hc);

struct Stabilized {
  Z2Complex complex;
  Gaussian embedding;  // scalar of |D| -> |D + C| relative to canonical bases
};

Stabilized stabilize(const Z2Complex& d, size_t n_plus, size_t n_minus);

// Scalar of s+ (x) s-* -> (s+ ^ w+) (x) (s- ^ w-)* relative to the canonical
// homology bases, where the old homology of `small` sits inside `big` through
// the column embeddings and w are the given extra columns.
Gaussian embedding_scalar(const Z2Homology& small, const Z2Homology& big, const Mat& emb_p,
                          const Mat& emb_m, const Mat& extra_p, const Mat& extra_m);

struct PseudoInverseComplex {
  Mat dp_dag;  // X- -> X+
  Mat dm_dag;  // X+ -> X-
};

// Adapted decomposition; with an rng the chosen complements are moved by
// random unipotent changes inside their admissible families.
PseudoInverseComplex complex_pseudo_inverse(const Z2Complex& d, const Z2Homology& h,
                                            Rng* rng = nullptr, bool gaussian = true);
PseudoInverseComplex complex_pseudo_inverse(const Z2Complex& d);

// Empty string when all identities hold, otherwise the first failing one.
std::string check_pseudo_inverse_complex(const Z2Complex& d, const PseudoInverseComplex& p);

}  // namespace detlines
