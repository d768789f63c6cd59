#pragma once

#include <string>

#include "detlines/complex.hpp"
#include "detlines/detline.hpp"

namespace detlines {

// Which of the two triple constructions to use. The automatic choice takes the
// non-negative branch whenever the index is >= 0.
enum class Branch { automatic, nonnegative, nonpositive };

struct TripleOptions {
  Rng* rng = nullptr;  // randomizes the bases the triple is built from
  bool gaussian = true;
  Branch branch = Branch::automatic;
};

// Perturbation triple for operators A, B : V -> W with pseudo-inverse B'.
// Each map is stored by the images of the columns of the basis it is defined
// on; N vanishes on the columns of `n_zero_on`.
struct PerturbationTriple {
  bool nonnegative = true;
  Mat ker_a;        // basis of Ker A (domain of L)
  Mat coker_a;      // complement of Im A in W
  Mat ker_bdag;     // basis of Ker B' (domain of M)
  Mat coker_bdag;   // complement of Im B' in V
  Mat l_images;     // L(ker_a columns), in W
  Mat m_images;     // M(ker_bdag columns), in V
  Mat n_domain;     // basis of Ker L (nonnegative) or Ker M (nonpositive)
  Mat n_images;     // N(n_domain columns)
  Mat n_zero_on;    // chosen complement on which N is extended by zero
};

PerturbationTriple build_perturbation_triple(const Mat& a, const Mat& adag, const Mat& b,
                                             const Mat& bdag, const TripleOptions& opt = {});

// Empty when the three composite conditions hold, else the failing one.
std::string check_perturbation_triple(const PerturbationTriple& t, const Mat& a, const Mat& b,
                                      const Mat& bdag);

// Sigma for a triple, together with its determinant-class determinant.
struct PerturbationContext {
  Mat p_a, q_b;  // 1 - A'A and 1 - BB'
  Mat sigma;
  Gaussian det_sigma;
};

PerturbationContext perturbation_context(const PerturbationTriple& t, const Mat& a,
                                         const Mat& adag, const Mat& b, const Mat& bdag);

// Reference bases: kernel references are read modulo the image of the
// pseudo-inverse, cokernel references modulo the image of the operator.
struct KerCokerRefs {
  Mat ker_a, coker_a, ker_b, coker_b;
};

// Scalar of P(B,A) : |Ker A| (x) |Coker A|* -> |Ker B| (x) |Coker B|*.
LineIso operator_perturbation_scalar(const Mat& a, const Mat& adag, const Mat& b, const Mat& bdag,
                                     const KerCokerRefs& refs, const TripleOptions& opt = {});
// Canonical pseudo-inverses; kernel bases and image complements as references.
LineIso operator_perturbation_scalar(const Mat& a, const Mat& b);

struct ComplexPerturbationOptions {
  Rng* rng = nullptr;  // randomizes both pseudo-inverse complexes and the triple
  bool gaussian = true;
  Branch branch = Branch::automatic;
};

// P(Delta, D) : |D| -> |Delta| relative to the given homology bases.
LineIso complex_perturbation_scalar(const Z2Complex& d, const Z2Complex& delta,
                                    const Z2Homology& hd, const Z2Homology& hdelta,
                                    const ComplexPerturbationOptions& opt = {});
LineIso complex_perturbation_scalar(const Z2Complex& d, const Z2Complex& delta);

// Data of the explicitly solvable case: D stabilized by trivial complexes of
// sizes (n+, n-) and perturbed by F-, F+ and N+, with isomorphisms L and M on
// homology and the subspaces that certify the hypotheses.
struct SpecialInstance {
  Z2Complex base;
  size_t n_plus = 0, n_minus = 0;
  Mat f_minus;  // F^{n-} -> X+
  Mat f_plus;   // F^{n+} -> X-
  Mat n_map;    // F^{n+} -> F^{n-}
  // Subspace bases.
  Mat v_plus, w_plus, z_plus, v_minus, w_minus, q_plus, q_minus;
  Mat e_plus, e_minus, omega;  // idempotents
  // L : H+(stabilized) -> H-(stabilized), M : H-(perturbed) -> H+(perturbed)
  // in canonical homology coordinates.
  Mat l_matrix, m_matrix;

  Z2Complex stabilized() const;
  Z2Complex perturbed() const;
};

struct SpecialOptions {
  bool full = false;     // make the perturbed complex exact
  size_t max_extra = 2;  // bound on the extra stabilization beyond the minimum
  bool gaussian = true;
};

SpecialInstance make_special_instance(const Z2Complex& d, Rng& rng, const SpecialOptions& opt = {});

// Throws HypothesisError naming the first violated condition.
void validate_special_instance(const SpecialInstance& s);

// det(L) * det(M) relative to canonical homology bases of both complexes.
LineIso special_perturbation_scalar(const SpecialInstance& s);

// For an exact perturbed complex: the scalars of the source wedge
// (F- v-, v+, z+) in |H+| and of (v-, F+ v+, N+ z+) in |H-| of the
// stabilized complex, as a ratio.
Gaussian special_source_wedge(const SpecialInstance& s);

// Random A with A^2 = 0: a conjugate of [[0, X], [0, 0]] by a random invertible.
Mat random_square_zero(Rng& rng, size_t n, bool gaussian = true);

// T : V -> W injective, S : W -> V surjective, Omega invertible on V, and N
// zero on a complement of Ker S with Ker S -> W -> Coker T an isomorphism.
struct DetEquInstance {
  Mat t, s, omega, n_map;
  Mat ker_s;       // basis of Ker S (domain of N)
  Mat n_zero_on;   // complement of Ker S on which N vanishes
};

DetEquInstance make_detequ_instance(Rng& rng, size_t dim_v, size_t dim_w, bool gaussian = true);
// Throws HypothesisError naming the violated condition.
void validate_detequ_instance(const DetEquInstance& d);

struct DetEquSides {
  Gaussian det_sigma_tilde;  // det(T Omega S + N)
  Gaussian det_omega_sigma;  // det(Omega) det(T S + N)
};
DetEquSides detequ_sides(const DetEquInstance& d);

}  // namespace detlines
