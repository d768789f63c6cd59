#pragma once

#include <array>

#include "detlines/complex.hpp"
#include "detlines/detline.hpp"

namespace detlines {

// One complement per hexagon node, each splitting off the kernel of the
// outgoing map. The chosen top-wedge vector at a node is the wedge of the
// complement's columns, so its degree is the column count.
struct TorsionChoices {
  std::array<Mat, 6> complements;

  size_t degree(size_t node) const { return complements[node].cols(); }
};

TorsionChoices canonical_choices(const SixTermSequence& s);
// Complements moved inside their admissible family and re-based by a random
// invertible matrix.
TorsionChoices random_choices(const SixTermSequence& s, Rng& rng, bool gaussian = true);

// Sign exponent on the six degrees, nodes ordered V+1, V+2, V+, V-1, V-2, V-.
long torsion_sign_exponent(const std::array<size_t, 6>& eps);

// |V+2| (x) |V-2|* -> (|V+1| (x) |V-1|*) (x) (|V+| (x) |V-|*), relative to the
// standard bases of the six coordinate spaces. Throws ValidationError when the
// sequence is not exact.
LineIso torsion_scalar(const SixTermSequence& s);
LineIso torsion_scalar(const SixTermSequence& s, const TorsionChoices& c);

struct TriangleData {
  Z2Triangle triangle;
  Z2Homology h1, h2, hc;
  SixTermSequence hexagon;
};

TriangleData triangle_data(const ChainComplex& d1, const ChainComplex& d2, const ChainMap& a);

// |D2| -> |D1| (x) |C^A| relative to canonical homology bases.
LineIso triangle_torsion(const ChainComplex& d1, const ChainComplex& d2, const ChainMap& a);

// Hexagon of the triangle after adding trivial complexes of sizes (n+, n-)
// to D1 and (m+, m-) to D2. New basis vectors are appended after the old ones;
// at the cone nodes the order is old, then the D1 part, then the D2 part.
SixTermSequence stabilize_hexagon(const SixTermSequence& s, size_t n_plus, size_t n_minus,
                                  size_t m_plus, size_t m_minus);

// The sign relating the stabilized and original torsion scalars.
int stabilization_sign(size_t n_plus, size_t n_minus, size_t m_plus, size_t m_minus);

}  // namespace detlines
