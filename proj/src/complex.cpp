#include "detlines/complex.hpp"

#include <set>

namespace detlines {

namespace {

bool is_even(int j) { return (j % 2) == 0; }

size_t parity_total(const std::vector<Z2Block>& blocks) {
  size_t n = 0;
  for (const auto& b : blocks) n += b.dim;
  return n;
}

}  // namespace

bool GradedSpace::empty() const { return total() == 0; }

size_t GradedSpace::total() const {
  size_t n = 0;
  for (const auto& [j, k] : dims) n += k;
  return n;
}

Mat ChainComplex::d(int j) const {
  auto it = diffs.find(j);
  if (it != diffs.end()) return it->second;
  return Mat(dim(j - 1), dim(j));
}

Mat ChainMap::at(int j, size_t rows, size_t cols) const {
  auto it = comps.find(j);
  if (it != comps.end()) return it->second;
  return Mat(rows, cols);
}

namespace {

std::set<int> relevant_degrees(const ChainComplex& d) {
  std::set<int> js;
  for (const auto& [j, n] : d.space.dims) {
    js.insert(j);
    js.insert(j + 1);
  }
  for (const auto& [j, m] : d.diffs) js.insert(j);
  return js;
}

}  // namespace

void validate_complex(const ChainComplex& d) {
  for (const auto& [j, m] : d.diffs) {
    if (m.rows() != d.dim(j - 1) || m.cols() != d.dim(j)) {
      throw ValidationError("differential " + std::to_string(j) + " has shape " + m.shape(), j);
    }
  }
  for (int j : relevant_degrees(d)) {
    if (d.dim(j) == 0 || d.dim(j - 1) == 0 || d.dim(j - 2) == 0) continue;
    if (!(d.d(j - 1) * d.d(j)).is_zero()) {
      throw ValidationError("d*d != 0 at degree " + std::to_string(j), j);
    }
  }
}

void validate_chain_map(const ChainComplex& src, const ChainComplex& dst, const ChainMap& a) {
  std::set<int> js = relevant_degrees(src);
  for (int j : relevant_degrees(dst)) js.insert(j);
  for (const auto& [j, m] : a.comps) {
    if (m.rows() != dst.dim(j) || m.cols() != src.dim(j)) {
      throw ValidationError("chain map component " + std::to_string(j) + " has shape " +
                                m.shape(),
                            j);
    }
    js.insert(j);
  }
  for (int j : js) {
    Mat lhs = dst.d(j) * a.at(j, dst.dim(j), src.dim(j));
    Mat rhs = a.at(j - 1, dst.dim(j - 1), src.dim(j - 1)) * src.d(j);
    if (lhs != rhs) {
      throw ValidationError("chain map square fails at degree " + std::to_string(j), j);
    }
  }
}

size_t Z2Layout::offset(int degree) const {
  const auto& blocks = is_even(degree) ? plus : minus;
  size_t at = 0;
  for (const auto& b : blocks) {
    if (!b.stabilizer && b.degree == degree) return at;
    at += b.dim;
  }
  throw DimensionError("degree " + std::to_string(degree) + " not in layout");
}

Z2Complex Z2Complex::make(Mat dplus, Mat dminus) {
  Z2Complex z;
  z.np = dplus.cols();
  z.nm = dplus.rows();
  if (dminus.rows() != z.np || dminus.cols() != z.nm) {
    throw DimensionError("Z2 complex differentials have incompatible shapes");
  }
  z.dp = std::move(dplus);
  z.dm = std::move(dminus);
  z.layout.plus.push_back({0, z.np, false});
  z.layout.minus.push_back({-1, z.nm, false});
  return z;
}

void validate_z2(const Z2Complex& d) {
  if (d.dp.rows() != d.nm || d.dp.cols() != d.np || d.dm.rows() != d.np || d.dm.cols() != d.nm) {
    throw ValidationError("Z2 differentials have wrong shapes");
  }
  if (!(d.dm * d.dp).is_zero()) throw ValidationError("d- d+ != 0", 0);
  if (!(d.dp * d.dm).is_zero()) throw ValidationError("d+ d- != 0", 1);
}

Mat HomologyPiece::coords(const Mat& cycles_in) const {
  return frame.coords(cycles_in).rows_range(0, reps.cols());
}

HomologyPiece HomologyPiece::build(const Mat& outgoing, const Mat& incoming, size_t n) {
  Subspace<Gaussian> cyc = outgoing.rows() == 0 ? Subspace<Gaussian>::full(n) : kernel_basis(outgoing);
  Subspace<Gaussian> bnd = incoming.cols() == 0 ? Subspace<Gaussian>::zero(n) : image_basis(incoming);
  Mat reps = complement(bnd, cyc).basis();
  return with_reps(outgoing, incoming, n, std::move(reps));
}

HomologyPiece HomologyPiece::with_reps(const Mat& outgoing, const Mat& incoming, size_t n,
                                       Mat reps) {
  HomologyPiece h;
  h.cycles = outgoing.rows() == 0 ? Subspace<Gaussian>::full(n) : kernel_basis(outgoing);
  h.boundaries = incoming.cols() == 0 ? Subspace<Gaussian>::zero(n) : image_basis(incoming);
  if (reps.rows() != n || reps.cols() + h.boundaries.dim() != h.cycles.dim()) {
    throw DimensionError("homology representatives have the wrong size");
  }
  if (!h.cycles.contains(reps)) throw ContainmentError("homology representatives are not cycles");
  h.reps = std::move(reps);
  h.frame = CoordSystem<Gaussian>(hcat(h.reps, h.boundaries.basis()));
  return h;
}

HomologyData homology(const ChainComplex& d) {
  HomologyData out;
  for (const auto& [j, n] : d.space.dims) {
    out.degrees.emplace(j, HomologyPiece::build(d.d(j), d.d(j + 1), n));
  }
  return out;
}

Z2Homology homology(const Z2Complex& d) {
  return {HomologyPiece::build(d.dp, d.dm, d.np), HomologyPiece::build(d.dm, d.dp, d.nm)};
}

Z2Complex fold_z2(const ChainComplex& d) {
  Z2Complex z;
  for (const auto& [j, n] : d.space.dims) {
    (is_even(j) ? z.layout.plus : z.layout.minus).push_back({j, n, false});
  }
  z.np = parity_total(z.layout.plus);
  z.nm = parity_total(z.layout.minus);
  z.dp = Mat(z.nm, z.np);
  z.dm = Mat(z.np, z.nm);
  for (const auto& [j, m] : d.diffs) {
    if (m.rows() == 0 || m.cols() == 0) continue;
    if (is_even(j)) {
      z.dp.set_block(z.layout.offset(j - 1), z.layout.offset(j), m);
    } else {
      z.dm.set_block(z.layout.offset(j - 1), z.layout.offset(j), m);
    }
  }
  return z;
}

std::pair<Mat, Mat> fold_map(const std::map<int, Mat>& comps, const Z2Layout& src,
                             const Z2Layout& dst, int shift) {
  const bool flip = !is_even(shift);
  const size_t sp = parity_total(src.plus), sm = parity_total(src.minus);
  const size_t dp = parity_total(dst.plus), dm = parity_total(dst.minus);
  Mat from_plus(flip ? dm : dp, sp);
  Mat from_minus(flip ? dp : dm, sm);
  for (const auto& [j, m] : comps) {
    if (m.rows() == 0 || m.cols() == 0) continue;
    Mat& target = is_even(j) ? from_plus : from_minus;
    target.set_block(dst.offset(j + shift), src.offset(j), m);
  }
  return {from_plus, from_minus};
}

long index(const Z2Complex& d) {
  const long rp = static_cast<long>(rank(d.dp));
  const long rm = static_cast<long>(rank(d.dm));
  const long hp = static_cast<long>(d.np) - rp - rm;
  const long hm = static_cast<long>(d.nm) - rm - rp;
  return hp - hm;
}

long euler_characteristic(const ChainComplex& d) {
  long chi = 0;
  for (const auto& [j, n] : d.space.dims) chi += is_even(j) ? static_cast<long>(n) : -static_cast<long>(n);
  return chi;
}

Cone mapping_cone(const ChainComplex& d1, const ChainComplex& d2, const ChainMap& a) {
  validate_chain_map(d1, d2, a);
  Cone out;
  std::set<int> js;
  for (const auto& [j, n] : d2.space.dims) js.insert(j);
  for (const auto& [j, n] : d1.space.dims) js.insert(j + 1);
  for (int j : js) out.complex.space.dims[j] = d2.dim(j) + d1.dim(j - 1);
  for (int j : js) {
    const size_t n2 = d2.dim(j), n1 = d1.dim(j - 1);
    const size_t r2 = d2.dim(j - 1), r1 = d1.dim(j - 2);
    Mat dj(r2 + r1, n2 + n1);
    dj.set_block(0, 0, d2.d(j));
    dj.set_block(0, n2, a.at(j - 1, r2, n1));
    dj.set_block(r2, n2, -d1.d(j - 1));
    if (dj.rows() > 0 && dj.cols() > 0) out.complex.diffs[j] = std::move(dj);
    Mat ij(n2 + n1, n2);
    ij.set_block(0, 0, Mat::identity(n2));
    out.i.comps[j] = std::move(ij);
    Mat pj(n1, n2 + n1);
    pj.set_block(0, n2, Mat::identity(n1));
    out.p.comps[j] = std::move(pj);
  }
  return out;
}

Z2Triangle fold_triangle(const ChainComplex& d1, const ChainComplex& d2, const ChainMap& a) {
  Cone c = mapping_cone(d1, d2, a);
  Z2Triangle t;
  t.d1 = fold_z2(d1);
  t.d2 = fold_z2(d2);
  t.cone = fold_z2(c.complex);
  std::map<int, Mat> acomps;
  for (const auto& [j, n] : d1.space.dims) acomps[j] = a.at(j, d2.dim(j), n);
  std::tie(t.a_p, t.a_m) = fold_map(acomps, t.d1.layout, t.d2.layout, 0);
  std::tie(t.i_p, t.i_m) = fold_map(c.i.comps, t.d2.layout, t.cone.layout, 0);
  std::tie(t.p_p, t.p_m) = fold_map(c.p.comps, t.cone.layout, t.d1.layout, -1);
  return t;
}

SixTermSequence SixTermSequence::make(std::array<Mat, 6> maps) {
  SixTermSequence s;
  for (size_t k = 0; k < 6; ++k) s.dims[k] = maps[k].cols();
  for (size_t k = 0; k < 6; ++k) {
    if (maps[k].rows() != s.dims[(k + 1) % 6]) {
      throw DimensionError("hexagon map " + std::to_string(k) + " has shape " + maps[k].shape());
    }
  }
  s.maps = std::move(maps);
  return s;
}

std::optional<int> first_inexact_node(const SixTermSequence& s) {
  for (int k = 0; k < 6; ++k) {
    const Mat& in = s.maps[static_cast<size_t>((k + 5) % 6)];
    const Mat& out = s.maps[static_cast<size_t>(k)];
    const size_t n = s.dims[static_cast<size_t>(k)];
    Subspace<Gaussian> im = in.cols() == 0 ? Subspace<Gaussian>::zero(n) : image_basis(in);
    Subspace<Gaussian> ker = out.rows() == 0 ? Subspace<Gaussian>::full(n) : kernel_basis(out);
    if (im != ker) return k;
  }
  return std::nullopt;
}

SixTermSequence six_term(const Z2Triangle& t, const Z2Homology& h1, const Z2Homology& h2,
                         const Z2Homology& hc) {
  SixTermSequence s = SixTermSequence::make({
      h2.plus.coords(t.a_p * h1.plus.reps),
      hc.plus.coords(t.i_p * h2.plus.reps),
      h1.minus.coords(t.p_p * hc.plus.reps),
      h2.minus.coords(t.a_m * h1.minus.reps),
      hc.minus.coords(t.i_m * h2.minus.reps),
      h1.plus.coords(t.p_m * hc.minus.reps),
  });
  if (auto bad = first_inexact_node(s)) {
    throw ValidationError("internal consistency: hexagon not exact at node " + std::to_string(*bad));
  }
  return s;
}

Gaussian embedding_scalar(const Z2Homology& small, const Z2Homology& big, const Mat& emb_p,
                          const Mat& emb_m, const Mat& extra_p, const Mat& extra_m) {
  Gaussian plus = det(big.plus.coords(hcat(emb_p * small.plus.reps, extra_p)));
  Gaussian minus = det(big.minus.coords(hcat(emb_m * small.minus.reps, extra_m)));
  return plus / minus;
}

Stabilized stabilize(const Z2Complex& d, size_t n_plus, size_t n_minus) {
  Stabilized out;
  Z2Complex& s = out.complex;
  s.np = d.np + n_plus;
  s.nm = d.nm + n_minus;
  s.dp = block_diag(d.dp, Mat(n_minus, n_plus));
  s.dm = block_diag(d.dm, Mat(n_plus, n_minus));
  s.layout = d.layout;
  if (n_plus) s.layout.plus.push_back({0, n_plus, true});
  if (n_minus) s.layout.minus.push_back({0, n_minus, true});
  Mat emb_p = vcat(Mat::identity(d.np), Mat(n_plus, d.np));
  Mat emb_m = vcat(Mat::identity(d.nm), Mat(n_minus, d.nm));
  Mat extra_p = vcat(Mat(d.np, n_plus), Mat::identity(n_plus));
  Mat extra_m = vcat(Mat(d.nm, n_minus), Mat::identity(n_minus));
  out.embedding = embedding_scalar(homology(d), homology(s), emb_p, emb_m, extra_p, extra_m);
  return out;
}

PseudoInverseComplex complex_pseudo_inverse(const Z2Complex& d, const Z2Homology& h, Rng* rng,
                                            bool gaussian) {
  Mat hp = h.plus.reps, hm = h.minus.reps;
  Mat cp = complement(h.plus.cycles).basis();
  Mat cm = complement(h.minus.cycles).basis();
  if (rng) {
    const Mat& bp = h.plus.boundaries.basis();
    const Mat& bm = h.minus.boundaries.basis();
    hp += bp * rng->matrix(bp.cols(), hp.cols(), gaussian);
    hm += bm * rng->matrix(bm.cols(), hm.cols(), gaussian);
    cp += h.plus.cycles.basis() * rng->matrix(h.plus.cycles.dim(), cp.cols(), gaussian);
    cm += h.minus.cycles.basis() * rng->matrix(h.minus.cycles.dim(), cm.cols(), gaussian);
  }
  PseudoInverseComplex p;
  p.dp_dag = pseudo_inverse_with(d.dp, cp, hcat(hm, cm));
  p.dm_dag = pseudo_inverse_with(d.dm, cm, hcat(hp, cp));
  return p;
}

PseudoInverseComplex complex_pseudo_inverse(const Z2Complex& d) {
  return complex_pseudo_inverse(d, homology(d));
}

std::string check_pseudo_inverse_complex(const Z2Complex& d, const PseudoInverseComplex& p) {
  if (d.dp * p.dp_dag * d.dp != d.dp) return "d+ d+' d+ != d+";
  if (d.dm * p.dm_dag * d.dm != d.dm) return "d- d-' d- != d-";
  if (!(p.dp_dag * p.dm_dag).is_zero()) return "d+' d-' != 0";
  if (!(p.dm_dag * p.dp_dag).is_zero()) return "d-' d+' != 0";
  const Mat sp = d.dp + p.dm_dag;  // X+ -> X-
  const Mat sm = d.dm + p.dp_dag;  // X- -> X+
  const Mat pp = Mat::identity(d.np) - sm * sp;
  const Mat pm = Mat::identity(d.nm) - sp * sm;
  if (pp * pp != pp) return "P+ not idempotent";
  if (pm * pm != pm) return "P- not idempotent";
  Z2Homology h = homology(d);
  // Im P+ consists of cycles and meets the boundaries trivially with the right dimension.
  if (!h.plus.cycles.contains(pp)) return "Im P+ not inside Ker d+";
  if (rank(hcat(pp, h.plus.boundaries.basis())) != h.plus.cycles.dim() ||
      rank(pp) != h.plus.dim()) {
    return "Im P+ does not map onto H+";
  }
  if (!h.minus.cycles.contains(pm)) return "Im P- not inside Ker d-";
  if (rank(hcat(pm, h.minus.boundaries.basis())) != h.minus.cycles.dim() ||
      rank(pm) != h.minus.dim()) {
    return "Im P- does not map onto H-";
  }
  return {};
}

}  // namespace detlines
