#include "detlines/perturbation.hpp"

namespace detlines {

namespace {

Mat random_invertible(Rng& rng, size_t n, bool gaussian) {
  Mat g = rng.unipotent(n, gaussian);
  for (size_t j = 0; j < n; ++j) {
    const Gaussian f = rng.nonzero(gaussian);
    for (size_t i = 0; i < n; ++i) g(i, j) *= f;
  }
  return g;
}

// Coordinates relative to refs of vectors read modulo span(sub).
class QuotientFrame {
 public:
  QuotientFrame(const Mat& refs, const Mat& sub) : k_(refs.cols()) {
    Subspace<Gaussian> s = image_basis(sub);
    if (refs.cols() + s.dim() != refs.rows()) {
      throw DimensionError("reference basis has " + std::to_string(refs.cols()) +
                           " vectors, quotient has dimension " +
                           std::to_string(refs.rows() - s.dim()));
    }
    frame_ = CoordSystem<Gaussian>(hcat(refs, s.basis()));
  }
  Mat coords(const Mat& v) const { return frame_.coords(v).rows_range(0, k_); }
  Gaussian wedge(const Mat& v) const {
    if (v.cols() != k_) throw DimensionError("wedge: wrong number of vectors");
    return det(coords(v));
  }

 private:
  size_t k_;
  CoordSystem<Gaussian> frame_;
};

Mat zero_rows_kernel(const Mat& m) {
  return (m.rows() == 0 ? Subspace<Gaussian>::full(m.cols()) : kernel_basis(m)).basis();
}

// Apply a map stored by the images of the columns of `basis` to vectors in its span.
Mat apply_on(const Mat& images, const Mat& basis, const Mat& v) {
  return images * CoordSystem<Gaussian>(basis).coords(v);
}

}  // namespace

PerturbationTriple build_perturbation_triple(const Mat& a, const Mat& adag, const Mat& b,
                                             const Mat& bdag, const TripleOptions& opt) {
  (void)adag;
  (void)b;
  const size_t v = a.cols(), w = a.rows();
  Mat ka = zero_rows_kernel(a);
  Subspace<Gaussian> im_a = image_basis(a);
  Mat ra = complement(im_a).basis();
  Mat yb = zero_rows_kernel(bdag);
  Subspace<Gaussian> im_bdag = image_basis(bdag);
  Mat kb = complement(im_bdag).basis();
  if (opt.rng) {
    Rng& r = *opt.rng;
    ka = ka * random_invertible(r, ka.cols(), opt.gaussian);
    ra += im_a.basis() * r.matrix(im_a.dim(), ra.cols(), opt.gaussian);
    ra = ra * random_invertible(r, ra.cols(), opt.gaussian);
    yb = yb * random_invertible(r, yb.cols(), opt.gaussian);
    kb += im_bdag.basis() * r.matrix(im_bdag.dim(), kb.cols(), opt.gaussian);
    kb = kb * random_invertible(r, kb.cols(), opt.gaussian);
  }
  const size_t k_a = ka.cols(), c_a = ra.cols(), c_b = yb.cols(), k_b = kb.cols();
  const long idx = static_cast<long>(k_a) - static_cast<long>(c_a);
  if (static_cast<long>(k_b) - static_cast<long>(c_b) != idx) {
    throw DimensionError("operators have different indices");
  }
  PerturbationTriple t;
  switch (opt.branch) {
    case Branch::automatic: t.nonnegative = idx >= 0; break;
    case Branch::nonnegative: t.nonnegative = true; break;
    case Branch::nonpositive: t.nonnegative = false; break;
  }
  if ((t.nonnegative && idx < 0) || (!t.nonnegative && idx > 0)) {
    throw DimensionError("requested triple branch does not fit the index " + std::to_string(idx));
  }
  t.ker_a = ka;
  t.coker_a = ra;
  t.ker_bdag = yb;
  t.coker_bdag = kb;
  if (t.nonnegative) {
    t.l_images = Mat(w, k_a);
    t.l_images.set_block(0, 0, ra);
    t.m_images = kb.cols_range(0, c_b);
    t.n_domain = ka.cols_range(c_a, k_a);
    t.n_images = kb.cols_range(c_b, k_b);
    t.n_zero_on = ka.cols_range(0, c_a);
  } else {
    t.l_images = ra.cols_range(0, k_a);
    t.m_images = Mat(v, c_b);
    t.m_images.set_block(0, 0, kb);
    t.n_domain = yb.cols_range(k_b, c_b);
    t.n_images = ra.cols_range(k_a, c_a);
    t.n_zero_on = yb.cols_range(0, k_b);
  }
  return t;
}

std::string check_perturbation_triple(const PerturbationTriple& t, const Mat& a, const Mat& b,
                                      const Mat& bdag) {
  (void)b;
  const size_t v = a.cols(), w = a.rows();
  const size_t ra = rank(a), rbd = rank(bdag);
  const size_t lm = rank(hcat(t.l_images, a));
  const size_t mm = rank(hcat(t.m_images, bdag));
  if (t.nonnegative) {
    if (lm != w) return "Ker A -> W -> Coker A is not surjective";
    if (mm != t.ker_bdag.cols() + rbd) return "Ker B' -> V -> Coker B' is not injective";
    if (!apply_on(t.l_images, t.ker_a, t.n_domain).is_zero()) return "N is not defined on Ker L";
    if (t.n_domain.cols() != v - mm || rank(hcat({t.n_images, t.m_images, bdag})) != v) {
      return "Ker L -> V -> V/(Im M + Im B') is not bijective";
    }
  } else {
    if (lm != t.ker_a.cols() + ra) return "Ker A -> W -> Coker A is not injective";
    if (mm != v) return "Ker B' -> V -> Coker B' is not surjective";
    if (!apply_on(t.m_images, t.ker_bdag, t.n_domain).is_zero()) return "N is not defined on Ker M";
    if (t.n_domain.cols() != w - lm || rank(hcat({t.n_images, t.l_images, a})) != w) {
      return "Ker M -> W -> W/(Im A + Im L) is not bijective";
    }
  }
  return {};
}

PerturbationContext perturbation_context(const PerturbationTriple& t, const Mat& a,
                                         const Mat& adag, const Mat& b, const Mat& bdag) {
  PerturbationContext c;
  c.p_a = Mat::identity(a.cols()) - adag * a;
  c.q_b = Mat::identity(b.rows()) - b * bdag;
  const Mat l_pa = t.l_images * CoordSystem<Gaussian>(t.ker_a).coords(c.p_a);
  const Mat m_qb = t.m_images * CoordSystem<Gaussian>(t.ker_bdag).coords(c.q_b);
  const Mat n_full = hcat(Mat(t.n_images.rows(), t.n_zero_on.cols()), t.n_images);
  const CoordSystem<Gaussian> n_frame(hcat(t.n_zero_on, t.n_domain));
  if (t.nonnegative) {
    c.sigma = (bdag + m_qb) * (a + l_pa) + n_full * n_frame.coords(c.p_a);
  } else {
    c.sigma = (a + l_pa) * (bdag + m_qb) + n_full * n_frame.coords(c.q_b);
  }
  c.det_sigma = det_class_det(c.sigma);
  return c;
}

LineIso operator_perturbation_scalar(const Mat& a, const Mat& adag, const Mat& b, const Mat& bdag,
                                     const KerCokerRefs& refs, const TripleOptions& opt) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("perturbation: operators " + a.shape() + " and " + b.shape());
  }
  const PerturbationTriple t = build_perturbation_triple(a, adag, b, bdag, opt);
  const PerturbationContext c = perturbation_context(t, a, adag, b, bdag);
  const QuotientFrame ker_a(refs.ker_a, adag), coker_a(refs.coker_a, a);
  const QuotientFrame ker_b(refs.ker_b, bdag), coker_b(refs.coker_b, b);
  Gaussian alpha1, alpha2, gamma1, gamma2;
  if (t.nonnegative) {
    // s1 ^ s0 (x) (L s1)*  ->  (M t ^ N s0) (x) t*.  This order is forced by
    // compatibility with stabilization; the other one is off by (-1)^{ind (c_A + c_B)}.
    const Mat& s0 = t.n_domain;
    const Mat& s1 = t.n_zero_on;
    alpha1 = ker_a.wedge(hcat(s1, s0));
    alpha2 = coker_a.wedge(apply_on(t.l_images, t.ker_a, s1));
    gamma1 = ker_b.wedge(hcat(t.m_images, t.n_images));
    gamma2 = coker_b.wedge(t.ker_bdag);
  } else {
    // s (x) (L s ^ N t1)*  ->  M t0 (x) (t0 ^ t1)*
    const Mat& t0 = t.n_zero_on;
    const Mat& t1 = t.n_domain;
    alpha1 = ker_a.wedge(t.ker_a);
    alpha2 = coker_a.wedge(hcat(t.l_images, t.n_images));
    gamma1 = ker_b.wedge(apply_on(t.m_images, t.ker_bdag, t0));
    gamma2 = coker_b.wedge(hcat(t0, t1));
  }
  const Gaussian value = (gamma1 / gamma2) / (alpha1 / alpha2) / c.det_sigma;
  return {"|Ker A|(x)|Coker A|*", "|Ker B|(x)|Coker B|*", value};
}

LineIso operator_perturbation_scalar(const Mat& a, const Mat& b) {
  const Mat adag = pseudo_inverse(a), bdag = pseudo_inverse(b);
  KerCokerRefs refs{zero_rows_kernel(a), complement(image_basis(a)).basis(), zero_rows_kernel(b),
                    complement(image_basis(b)).basis()};
  return operator_perturbation_scalar(a, adag, b, bdag, refs);
}

LineIso complex_perturbation_scalar(const Z2Complex& d, const Z2Complex& delta,
                                    const Z2Homology& hd, const Z2Homology& hdelta,
                                    const ComplexPerturbationOptions& opt) {
  if (d.np != delta.np || d.nm != delta.nm) {
    throw DimensionError("perturbation: complexes live on different chains");
  }
  const PseudoInverseComplex pd = complex_pseudo_inverse(d, hd, opt.rng, opt.gaussian);
  const PseudoInverseComplex pdelta = complex_pseudo_inverse(delta, hdelta, opt.rng, opt.gaussian);
  const Mat sigma_p = d.dp + pd.dm_dag;
  const Mat sigma_m = d.dm + pd.dp_dag;
  const Mat tau_p = delta.dp + pdelta.dm_dag;
  const Mat tau_m = delta.dm + pdelta.dp_dag;
  KerCokerRefs refs{hd.plus.reps, hd.minus.reps, hdelta.plus.reps, hdelta.minus.reps};
  TripleOptions topt{opt.rng, opt.gaussian, opt.branch};
  LineIso l = operator_perturbation_scalar(sigma_p, sigma_m, tau_p, tau_m, refs, topt);
  l.source = "|D|";
  l.target = "|Delta|";
  return l;
}

LineIso complex_perturbation_scalar(const Z2Complex& d, const Z2Complex& delta) {
  return complex_perturbation_scalar(d, delta, homology(d), homology(delta));
}

// ---------------------------------------------------------------------------
// Explicitly solvable case.

Z2Complex SpecialInstance::stabilized() const { return stabilize(base, n_plus, n_minus).complex; }

Z2Complex SpecialInstance::perturbed() const {
  Z2Complex s = stabilized();
  s.dp.set_block(0, base.np, f_plus);
  s.dp.set_block(base.nm, base.np, n_map);
  s.dm.set_block(0, base.nm, f_minus);
  return s;
}

namespace {

// {x in span(domain) : m x in span(target)}
Mat preimage_in(const Mat& domain, const Mat& m, const Mat& target) {
  const Mat sys = hcat(m * domain, -target);
  const Mat k = zero_rows_kernel(sys);
  return image_basis(domain * k.rows_range(0, domain.cols())).basis();
}

Mat span_basis(const Mat& m) { return image_basis(m).basis(); }

Mat sum_basis(std::initializer_list<Mat> parts) { return span_basis(hcat(parts)); }

// Complement of span(s) inside span(inside), shifted by a random element of
// span(s) when an rng is given.
Mat complement_in(const Mat& s, const Mat& inside, Rng* rng, bool gaussian) {
  Subspace<Gaussian> in = image_basis(inside);
  Subspace<Gaussian> sub = s.rows() == 0 || s.cols() == 0 ? Subspace<Gaussian>::zero(in.ambient())
                                                           : image_basis(s);
  Mat c = complement(sub, in).basis();
  if (rng && sub.dim() > 0) c += sub.basis() * rng->matrix(sub.dim(), c.cols(), gaussian);
  return c;
}

// Idempotent with the given image whose kernel is spanned by `kernel`.
Mat projector(const Mat& image, const Mat& kernel) {
  const Mat frame = hcat(image, kernel);
  if (!frame.is_square()) throw DimensionError("projector: image and kernel do not split the space");
  const Mat target = hcat(image, Mat(image.rows(), kernel.cols()));
  return target * inverse(frame);
}

Mat stack(const Mat& top, const Mat& bottom) { return vcat(top, bottom); }

}  // namespace

SpecialInstance make_special_instance(const Z2Complex& d, Rng& rng, const SpecialOptions& opt) {
  const bool g = opt.gaussian;
  validate_z2(d);
  const Z2Homology h = homology(d);
  const long ind = static_cast<long>(h.plus.dim()) - static_cast<long>(h.minus.dim());
  SpecialInstance s;
  s.base = d;
  const Mat ker_dp = h.plus.cycles.basis();
  const Mat ker_dm = h.minus.cycles.basis();
  if (opt.full) {
    const size_t e = static_cast<size_t>(rng.uniform(0, static_cast<long>(opt.max_extra)));
    s.n_plus = h.minus.dim() + e;
    s.n_minus = h.plus.dim() + e;
    s.f_minus = hcat(h.plus.reps, h.plus.reps * rng.matrix(h.plus.dim(), e, g)) *
                random_invertible(rng, s.n_minus, g);
    s.f_plus = hcat(h.minus.reps, h.minus.reps * rng.matrix(h.minus.dim(), e, g)) *
               random_invertible(rng, s.n_plus, g);
    // N+ kills a complement of Ker F+ and maps Ker F+ onto Ker F-.
    const Mat ker_fp = zero_rows_kernel(s.f_plus);
    const Mat ker_fm = zero_rows_kernel(s.f_minus);
    const Mat keep = complement_in(ker_fp, Mat::identity(s.n_plus), &rng, g);
    const Mat frame = hcat(keep, ker_fp);
    const Mat images = hcat(Mat(s.n_minus, keep.cols()), ker_fm * random_invertible(rng, e, g));
    s.n_map = images * inverse(frame);
  } else {
    const size_t lo = static_cast<size_t>(std::max<long>(0, -ind));
    s.n_plus = lo + static_cast<size_t>(rng.uniform(0, static_cast<long>(opt.max_extra)));
    s.n_minus = static_cast<size_t>(static_cast<long>(s.n_plus) + ind);
    s.f_minus = ker_dp * rng.matrix(ker_dp.cols(), s.n_minus, g);
    s.f_plus = ker_dm * rng.matrix(ker_dm.cols(), s.n_plus, g);
    const Mat ker_fp = zero_rows_kernel(s.f_plus);
    const Mat ker_fm = zero_rows_kernel(s.f_minus);
    const Mat k0 = complement_in(ker_fp, Mat::identity(s.n_plus), &rng, g);
    const size_t extra = static_cast<size_t>(rng.uniform(0, static_cast<long>(ker_fp.cols())));
    const Mat k1 = ker_fp * rng.matrix(ker_fp.cols(), extra, g);
    const Mat kk = sum_basis({k0, k1});
    const Mat rest = complement_in(kk, Mat::identity(s.n_plus), &rng, g);
    const Mat images = hcat(Mat(s.n_minus, kk.cols()),
                            ker_fm * rng.matrix(ker_fm.cols(), rest.cols(), g));
    s.n_map = images * inverse(hcat(kk, rest));
  }
  const size_t np = d.np, nm = d.nm;
  const Mat im_dp = span_basis(d.dp), im_dm = span_basis(d.dm);

  const Mat ker_n = zero_rows_kernel(s.n_map);
  const Mat ker_fp = zero_rows_kernel(s.f_plus);
  s.w_plus = preimage_in(ker_n, s.f_plus, im_dp);
  s.v_plus = complement_in(s.w_plus, ker_n, &rng, g);
  const Mat kn_cap_kf = subspace_intersection(image_basis(ker_n), image_basis(ker_fp)).basis();
  s.z_plus = complement_in(kn_cap_kf, ker_fp, &rng, g);
  s.w_minus = preimage_in(Mat::identity(s.n_minus), s.f_minus, im_dm);
  s.v_minus = complement_in(s.w_minus, Mat::identity(s.n_minus), &rng, g);

  const Mat bnd_p = sum_basis({im_dm, s.f_minus});
  const Mat bnd_m = sum_basis({im_dp, s.f_plus});
  s.q_plus = complement_in(bnd_p, ker_dp, &rng, g);
  s.q_minus = complement_in(bnd_m, ker_dm, &rng, g);
  s.e_plus = projector(s.q_plus, hcat(bnd_p, complement_in(ker_dp, Mat::identity(np), &rng, g)));
  s.e_minus = projector(s.q_minus, hcat(bnd_m, complement_in(ker_dm, Mat::identity(nm), &rng, g)));
  const Mat im_n = span_basis(s.n_map);
  s.omega = projector(im_n, complement_in(im_n, Mat::identity(s.n_minus), &rng, g));

  // L on the part fixed by the hypothesis, then a random isomorphism between
  // the remaining pieces.
  const Z2Homology ht = homology(s.stabilized());
  auto lift_p = [&](const Mat& x, const Mat& lam) { return stack(x, lam); };
  const size_t vm = s.v_minus.cols(), vp = s.v_plus.cols(), zp = s.z_plus.cols();
  Mat src = hcat({lift_p(s.f_minus * s.v_minus, Mat(s.n_plus, vm)),
                  lift_p(Mat(np, vp), s.v_plus), lift_p(Mat(np, zp), s.z_plus)});
  Mat tgt = hcat({lift_p(Mat(nm, vm), s.v_minus), lift_p(s.f_plus * s.v_plus, Mat(s.n_minus, vp)),
                  lift_p(Mat(nm, zp), s.n_map * s.z_plus)});
  const Mat w_minus_part = span_basis((Mat::identity(s.n_minus) - s.omega) * s.w_minus);
  const Mat src_rest = hcat(lift_p(s.q_plus, Mat(s.n_plus, s.q_plus.cols())),
                            lift_p(Mat(np, s.w_plus.cols()), s.w_plus));
  const Mat tgt_rest = hcat(lift_p(s.q_minus, Mat(s.n_minus, s.q_minus.cols())),
                            lift_p(Mat(nm, w_minus_part.cols()), w_minus_part));
  if (src_rest.cols() != tgt_rest.cols()) {
    throw HypothesisError("remaining homology pieces have different dimensions");
  }
  src = hcat(src, src_rest);
  tgt = hcat(tgt, tgt_rest * random_invertible(rng, tgt_rest.cols(), g));
  const Mat src_c = ht.plus.coords(src);
  const Mat tgt_c = ht.minus.coords(tgt);
  if (!src_c.is_square() || rank(src_c) != src_c.rows()) {
    throw HypothesisError("prescribed L does not determine an isomorphism");
  }
  s.l_matrix = tgt_c * inverse(src_c);

  // M from the commuting square: phi- = L phi+ M on homology.
  const Z2Complex hat = s.perturbed();
  const Z2Homology hh = homology(hat);
  const Mat phi_p = block_diag(s.e_plus, Mat::identity(s.n_plus));
  const Mat phi_m = block_diag(s.e_minus, Mat::identity(s.n_minus) - s.omega);
  const Mat big_phi_p = ht.plus.coords(phi_p * hh.plus.reps);
  const Mat big_phi_m = ht.minus.coords(phi_m * hh.minus.reps);
  auto m = try_solve(big_phi_p, inverse(s.l_matrix) * big_phi_m);
  if (!m) throw HypothesisError("no M makes the homology square commute");
  s.m_matrix = *m;
  return s;
}

void validate_special_instance(const SpecialInstance& s) {
  const Z2Complex& d = s.base;
  auto fail = [](const std::string& what) { throw HypothesisError(what); };
  if (!(d.dp * s.f_minus).is_zero()) fail("d+ F- != 0");
  if (!(d.dm * s.f_plus).is_zero()) fail("d- F+ != 0");
  if (!(s.f_minus * s.n_map).is_zero()) fail("F- N+ != 0");
  const Mat ker_n = zero_rows_kernel(s.n_map);
  if (image_basis(s.f_plus * ker_n) != image_basis(s.f_plus)) fail("F+(Ker N+) != Im F+");
  if (static_cast<long>(s.n_minus) - static_cast<long>(s.n_plus) != index(d)) {
    fail("stabilization does not have index zero");
  }
  // (1)
  const Mat im_dp = span_basis(d.dp), im_dm = span_basis(d.dm);
  if (!(s.n_map * s.v_plus).is_zero() || !(s.n_map * s.w_plus).is_zero()) {
    fail("(1) V+ or W+ not inside Ker N+");
  }
  if (image_basis(preimage_in(ker_n, s.f_plus, im_dp)) != image_basis(s.w_plus)) {
    fail("(1) W+ is not the preimage subspace");
  }
  if (!(s.f_plus * s.z_plus).is_zero()) fail("(1) Z+ not inside Ker F+");
  const Mat vwz = hcat({s.v_plus, s.w_plus, s.z_plus});
  if (vwz.cols() != s.n_plus || rank(vwz) != s.n_plus) fail("(1) V+ + W+ + Z+ is not a direct sum decomposition");
  if (s.v_plus.cols() + s.w_plus.cols() != ker_n.cols()) fail("(1) Ker N+ != V+ + W+");
  if (image_basis(preimage_in(Mat::identity(s.n_minus), s.f_minus, im_dm)) !=
      image_basis(s.w_minus)) {
    fail("(1) W- is not the preimage subspace");
  }
  const Mat vw = hcat(s.v_minus, s.w_minus);
  if (vw.cols() != s.n_minus || rank(vw) != s.n_minus) fail("(1) V- + W- is not a direct sum decomposition");
  // (2)
  const Z2Homology h = homology(d);
  const Mat bnd_p = hcat(im_dm, s.f_minus), bnd_m = hcat(im_dp, s.f_plus);
  if (!h.plus.cycles.contains(s.q_plus) || rank(hcat(s.q_plus, bnd_p)) != h.plus.cycles.dim() ||
      rank(hcat(s.q_plus, bnd_p)) != s.q_plus.cols() + rank(bnd_p)) {
    fail("(2) Q+ does not map isomorphically onto Ker d+/(Im d- + Im F-)");
  }
  if (!h.minus.cycles.contains(s.q_minus) || rank(hcat(s.q_minus, bnd_m)) != h.minus.cycles.dim() ||
      rank(hcat(s.q_minus, bnd_m)) != s.q_minus.cols() + rank(bnd_m)) {
    fail("(2) Q- does not map isomorphically onto Ker d-/(Im d+ + Im F+)");
  }
  if (s.e_plus * s.e_plus != s.e_plus || !(s.e_plus * bnd_p).is_zero() ||
      image_basis(s.e_plus) != image_basis(s.q_plus)) {
    fail("E+ is not an admissible idempotent");
  }
  if (s.e_minus * s.e_minus != s.e_minus || !(s.e_minus * bnd_m).is_zero() ||
      image_basis(s.e_minus) != image_basis(s.q_minus)) {
    fail("E- is not an admissible idempotent");
  }
  if (s.omega * s.omega != s.omega ||
      image_basis(s.omega) != image_basis(s.n_map)) {
    fail("Omega- is not an idempotent onto Im N+");
  }
  // (3)
  const Z2Homology ht = homology(s.stabilized());
  const size_t np = d.np, nm = d.nm;
  const Mat src = hcat({stack(s.f_minus * s.v_minus, Mat(s.n_plus, s.v_minus.cols())),
                        stack(Mat(np, s.v_plus.cols()), s.v_plus),
                        stack(Mat(np, s.z_plus.cols()), s.z_plus)});
  const Mat tgt = hcat({stack(Mat(nm, s.v_minus.cols()), s.v_minus),
                        stack(s.f_plus * s.v_plus, Mat(s.n_minus, s.v_plus.cols())),
                        stack(Mat(nm, s.z_plus.cols()), s.n_map * s.z_plus)});
  if (!s.l_matrix.is_square() || rank(s.l_matrix) != s.l_matrix.rows() ||
      s.l_matrix.rows() != ht.minus.dim() || s.l_matrix.cols() != ht.plus.dim()) {
    fail("L is not an isomorphism H+ -> H- of the stabilized complex");
  }
  if (s.l_matrix * ht.plus.coords(src) != ht.minus.coords(tgt)) fail("(3) L does not satisfy the prescribed values");
  // (4)
  const Z2Homology hh = homology(s.perturbed());
  if (!s.m_matrix.is_square() || rank(s.m_matrix) != s.m_matrix.rows() ||
      s.m_matrix.rows() != hh.plus.dim() || s.m_matrix.cols() != hh.minus.dim()) {
    fail("M is not an isomorphism H- -> H+ of the perturbed complex");
  }
  const Mat phi_p = block_diag(s.e_plus, Mat::identity(s.n_plus));
  const Mat phi_m = block_diag(s.e_minus, Mat::identity(s.n_minus) - s.omega);
  const Mat big_phi_p = ht.plus.coords(phi_p * hh.plus.reps);
  const Mat big_phi_m = ht.minus.coords(phi_m * hh.minus.reps);
  if (s.l_matrix * big_phi_p * s.m_matrix != big_phi_m) fail("(4) the homology square does not commute");
}

LineIso special_perturbation_scalar(const SpecialInstance& s) {
  validate_special_instance(s);
  return {"|D~|", "|D^|", det(s.l_matrix) * det(s.m_matrix)};
}

Gaussian special_source_wedge(const SpecialInstance& s) {
  const Z2Homology ht = homology(s.stabilized());
  const size_t np = s.base.np, nm = s.base.nm;
  const Mat plus = hcat({stack(s.f_minus * s.v_minus, Mat(s.n_plus, s.v_minus.cols())),
                         stack(Mat(np, s.v_plus.cols()), s.v_plus),
                         stack(Mat(np, s.z_plus.cols()), s.z_plus)});
  const Mat minus = hcat({stack(Mat(nm, s.v_minus.cols()), s.v_minus),
                          stack(s.f_plus * s.v_plus, Mat(s.n_minus, s.v_plus.cols())),
                          stack(Mat(nm, s.z_plus.cols()), s.n_map * s.z_plus)});
  return det(ht.plus.coords(plus)) / det(ht.minus.coords(minus));
}

Mat random_square_zero(Rng& rng, size_t n, bool gaussian) {
  if (n == 0) return Mat();
  const size_t k = static_cast<size_t>(rng.uniform(0, static_cast<long>(n / 2)));
  Mat core(n, n);
  core.set_block(0, n - k, rng.matrix(k, k, gaussian));
  const Mat p = random_invertible(rng, n, gaussian);
  return p * core * inverse(p);
}

DetEquInstance make_detequ_instance(Rng& rng, size_t dim_v, size_t dim_w, bool gaussian) {
  if (dim_v > dim_w) throw DimensionError("detequ instance: dim V > dim W");
  DetEquInstance d;
  const size_t c = dim_w - dim_v;
  // T = G_w [I; 0] G_v and S = G_v' [I | 0] G_w' for random invertibles.
  Mat inj(dim_w, dim_v), surj(dim_v, dim_w);
  inj.set_block(0, 0, Mat::identity(dim_v));
  surj.set_block(0, 0, Mat::identity(dim_v));
  d.t = random_invertible(rng, dim_w, gaussian) * inj * random_invertible(rng, dim_v, gaussian);
  d.s = random_invertible(rng, dim_v, gaussian) * surj * random_invertible(rng, dim_w, gaussian);
  d.omega = random_invertible(rng, dim_v, gaussian);
  d.ker_s = zero_rows_kernel(d.s);
  d.n_zero_on = complement(Subspace<Gaussian>::span(d.ker_s)).basis();
  d.n_zero_on += d.ker_s * rng.matrix(c, d.n_zero_on.cols(), gaussian);
  const Subspace<Gaussian> im_t = Subspace<Gaussian>::span(d.t);
  Mat images = complement(im_t).basis() * random_invertible(rng, c, gaussian);
  images += im_t.basis() * rng.matrix(im_t.dim(), c, gaussian);
  d.n_map = apply_on(hcat(images, Mat(dim_w, d.n_zero_on.cols())), hcat(d.ker_s, d.n_zero_on),
                     Mat::identity(dim_w));
  return d;
}

void validate_detequ_instance(const DetEquInstance& d) {
  const size_t v = d.t.cols(), w = d.t.rows();
  if (d.s.rows() != v || d.s.cols() != w || d.omega.rows() != v || !d.omega.is_square() ||
      d.n_map.rows() != w || !d.n_map.is_square()) {
    throw HypothesisError("detequ instance: shapes do not match");
  }
  if (rank(d.t) != v) throw HypothesisError("T is not injective");
  if (rank(d.s) != v) throw HypothesisError("S is not surjective");
  if (rank(d.omega) != v) throw HypothesisError("Omega is not invertible");
  if (!(d.n_map * d.n_zero_on).is_zero()) throw HypothesisError("N does not vanish on the complement");
  if (rank(hcat(d.ker_s, d.n_zero_on)) != w || !(d.s * d.ker_s).is_zero() ||
      d.ker_s.cols() != w - v) {
    throw HypothesisError("Ker S and its complement do not split W");
  }
  if (rank(hcat(d.t, d.n_map * d.ker_s)) != w) {
    throw HypothesisError("Ker S -> Coker T is not an isomorphism");
  }
}

DetEquSides detequ_sides(const DetEquInstance& d) {
  const Mat sigma = d.t * d.s + d.n_map;
  const Mat sigma_tilde = d.t * d.omega * d.s + d.n_map;
  return {det_class_det(sigma_tilde), det_class_det(d.omega) * det_class_det(sigma)};
}

}  // namespace detlines
