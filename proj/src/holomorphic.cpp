#include "detlines/holomorphic.hpp"

#include <algorithm>
#include <set>

#include "detlines/perturbation.hpp"
#include "detlines/torsion.hpp"

namespace detlines {

Mat eval_matrix(const PolyMat& m, const Gaussian& z) {
  Mat out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval(z);
  }
  return out;
}

Mat eval_matrix(const RatMat& m, const Gaussian& z) {
  Mat out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval(z);
  }
  return out;
}

RatMat to_ratmat(const PolyMat& m) {
  RatMat out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = RatFunc(m(i, j));
  }
  return out;
}

PolyMat to_polymat(const Mat& m) {
  PolyMat out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = Polynomial(m(i, j));
  }
  return out;
}

int max_degree(const PolyMat& m) {
  int d = 0;
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) d = std::max(d, m(i, j).degree());
  }
  return d;
}

PolyMat HoloFamily::d(int j) const {
  auto it = diffs.find(j);
  if (it != diffs.end()) return it->second;
  return PolyMat(dim(j - 1), dim(j));
}

int HoloFamily::max_degree() const {
  int d = 0;
  for (const auto& [j, m] : diffs) d = std::max(d, detlines::max_degree(m));
  return d;
}

namespace {

std::set<int> degrees_of(const GradedSpace& s) {
  std::set<int> out;
  for (const auto& [j, n] : s.dims) out.insert(j);
  return out;
}

std::vector<std::string> point_names(const std::vector<Gaussian>& pts) {
  std::vector<std::string> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.str());
  return out;
}

bool contains_point(const std::vector<Gaussian>& pts, const Gaussian& z) {
  return std::find(pts.begin(), pts.end(), z) != pts.end();
}

void add_point(std::vector<Gaussian>& pts, const Gaussian& z) {
  if (!contains_point(pts, z)) pts.push_back(z);
}

PolyMat poly_block_rows(const PolyMat& m, size_t from, size_t count) {
  return m.rows_range(from, from + count);
}

// Clears denominators column by column and removes the polynomial content,
// so the column spans the same line wherever the content does not vanish.
PolyMat clear_denominators(const RatMat& m) {
  PolyMat out(m.rows(), m.cols());
  for (size_t j = 0; j < m.cols(); ++j) {
    Polynomial l(1);
    for (size_t i = 0; i < m.rows(); ++i) {
      const Polynomial& q = m(i, j).den();
      l = Polynomial::divmod(l * q, Polynomial::gcd(l, q)).first;
    }
    Polynomial content;
    for (size_t i = 0; i < m.rows(); ++i) {
      out(i, j) = m(i, j).num() * Polynomial::divmod(l, m(i, j).den()).first;
      content = Polynomial::gcd(content, out(i, j));
    }
    if (!content.is_zero() && content.degree() > 0) {
      for (size_t i = 0; i < m.rows(); ++i) {
        out(i, j) = Polynomial::divmod(out(i, j), content).first;
      }
    }
  }
  return out;
}

Subspace<Gaussian> kernel_of(const Mat& m) {
  return m.rows() == 0 ? Subspace<Gaussian>::full(m.cols()) : kernel_basis(m);
}

Subspace<Gaussian> image_of(const Mat& m) {
  return m.cols() == 0 ? Subspace<Gaussian>::zero(m.rows()) : image_basis(m);
}

}  // namespace

void validate_family(const HoloFamily& f) {
  for (const auto& [j, m] : f.diffs) {
    if (m.rows() != f.dim(j - 1) || m.cols() != f.dim(j)) {
      throw ValidationError("family differential at degree " + std::to_string(j) + " has shape " +
                                m.shape(),
                            j);
    }
  }
  for (const auto& [j, m] : f.diffs) {
    if (!(f.d(j - 1) * m).is_zero()) {
      throw ValidationError("family: d d != 0 at degree " + std::to_string(j), j);
    }
  }
}

ChainComplex eval_family(const HoloFamily& f, const Gaussian& z) {
  ChainComplex c;
  c.space = f.space;
  for (const auto& [j, m] : f.diffs) {
    if (m.rows() && m.cols()) c.diffs[j] = eval_matrix(m, z);
  }
  return c;
}

HoloFamily constant_family(const ChainComplex& d) {
  HoloFamily f;
  f.space = d.space;
  for (const auto& [j, m] : d.diffs) f.diffs[j] = to_polymat(m);
  return f;
}

void validate_family_map(const HoloFamily& src, const HoloFamily& dst, const PolyChainMap& a) {
  auto comp = [&](int j) {
    auto it = a.find(j);
    if (it != a.end()) return it->second;
    return PolyMat(dst.dim(j), src.dim(j));
  };
  for (const auto& [j, m] : a) {
    if (m.rows() != dst.dim(j) || m.cols() != src.dim(j)) {
      throw ValidationError("family chain map at degree " + std::to_string(j) + " has shape " +
                                m.shape(),
                            j);
    }
  }
  std::set<int> js = degrees_of(src.space);
  for (int j : degrees_of(dst.space)) js.insert(j);
  for (int j : js) {
    if (!(dst.d(j) * comp(j) - comp(j - 1) * src.d(j)).is_zero()) {
      throw ValidationError("family chain map does not commute at degree " + std::to_string(j), j);
    }
  }
}

ChainMap eval_chain_map(const PolyChainMap& a, const Gaussian& z) {
  ChainMap out;
  for (const auto& [j, m] : a) out.comps[j] = eval_matrix(m, z);
  return out;
}

std::vector<Gaussian> default_grid(size_t count) {
  std::vector<Gaussian> out;
  for (long r = 0; out.size() < count; ++r) {
    for (long a = -r; a <= r && out.size() < count; ++a) {
      for (long b = -r; b <= r && out.size() < count; ++b) {
        if (std::max(std::labs(a), std::labs(b)) != r) continue;
        out.emplace_back(Rational(3 * a + 1, 3), Rational(7 * b + 1, 7));
      }
    }
  }
  return out;
}

IdempotentFamily kernel_idempotent_family(const PolyMat& a, const Gaussian& z0,
                                          const std::vector<Gaussian>& grid, GridPolicy policy) {
  IdempotentFamily out;
  const size_t n = a.cols();
  const Mat a0 = eval_matrix(a, z0);
  const Mat c = complement(kernel_of(a0)).basis();
  const size_t r = c.cols();
  out.rank = r;
  std::vector<Gaussian> bad;
  if (r == 0) {
    out.k = RatMat::identity(n);
    for (const auto& z : grid) {
      if (!eval_matrix(a, z).is_zero()) bad.push_back(z);
    }
  } else {
    const std::vector<size_t> rows = rref((a0 * c).transpose(), false).pivots;
    PolyMat sel(r, a.rows());
    for (size_t k = 0; k < r; ++k) sel(k, rows[k]) = Polynomial(1);
    const PolyMat ra = sel * a;
    const RatMat b = to_ratmat(ra * to_polymat(c));
    const RatFunc det_b = det(b);
    out.k = RatMat::identity(n) - to_ratmat(to_polymat(c)) * inverse(b) * to_ratmat(ra);
    for (const auto& z : grid) {
      if (det_b.eval(z).is_zero() || rank(eval_matrix(a, z)) != r) bad.push_back(z);
    }
  }
  if (!bad.empty() && policy == GridPolicy::strict) {
    throw RankDegeneracyError("kernel idempotent family: rank condition fails", point_names(bad));
  }
  out.excluded = std::move(bad);
  return out;
}

size_t LocalTrivialization::n_at(int j) const {
  auto it = n.find(j);
  return it == n.end() ? 0 : it->second;
}

size_t LocalTrivialization::n_plus() const {
  size_t s = 0;
  for (const auto& [j, k] : n) {
    if (j % 2 == 0) s += k;
  }
  return s;
}

size_t LocalTrivialization::n_minus() const {
  size_t s = 0;
  for (const auto& [j, k] : n) {
    if (j % 2 != 0) s += k;
  }
  return s;
}

bool is_exact(const ChainComplex& d) {
  for (const auto& [j, n] : d.space.dims) {
    if (n == 0) continue;
    const Mat out = d.d(j), in = d.d(j + 1);
    const size_t r_out = out.rows() && out.cols() ? rank(out) : 0;
    const size_t r_in = in.rows() && in.cols() ? rank(in) : 0;
    if (r_out + r_in != n) return false;
  }
  return true;
}

namespace {

GradedSpace augmented_space(const GradedSpace& x, const LocalTrivialization& t) {
  GradedSpace s = x;
  for (const auto& [j, k] : t.n) s.dims[j] = x.dim(j) + k;
  return s;
}

PolyMat padded_diff(const HoloFamily& f, const LocalTrivialization& t, int j) {
  const PolyMat d = f.d(j);
  PolyMat out(f.dim(j - 1) + t.n_at(j - 1), f.dim(j) + t.n_at(j));
  out.set_block(0, 0, d);
  return out;
}

HoloFamily perturbed_family(const HoloFamily& f, const LocalTrivialization& t) {
  HoloFamily p;
  p.space = augmented_space(f.space, t);
  for (const auto& [j, n] : p.space.dims) {
    PolyMat m = padded_diff(f, t, j);
    auto it = t.f.find(j);
    if (it != t.f.end()) m.set_block(0, f.dim(j), it->second);
    if (m.rows() && m.cols()) p.diffs[j] = std::move(m);
  }
  return p;
}

}  // namespace

ChainComplex augmented_complex(const HoloFamily& f, const LocalTrivialization& t,
                               const Gaussian& z) {
  ChainComplex c;
  c.space = augmented_space(f.space, t);
  for (const auto& [j, n] : c.space.dims) {
    Mat m(c.space.dim(j - 1), n);
    auto it = f.diffs.find(j);
    if (it != f.diffs.end()) m.set_block(0, 0, eval_matrix(it->second, z));
    if (m.rows() && m.cols()) c.diffs[j] = std::move(m);
  }
  return c;
}

ChainComplex perturbed_complex(const HoloFamily& f, const LocalTrivialization& t,
                               const Gaussian& z) {
  return eval_family(perturbed_family(f, t), z);
}

std::vector<Gaussian> inexact_points(const HoloFamily& f, const LocalTrivialization& t,
                                     const std::vector<Gaussian>& grid) {
  const HoloFamily p = perturbed_family(f, t);
  std::vector<Gaussian> bad;
  for (const auto& z : grid) {
    if (!is_exact(eval_family(p, z))) bad.push_back(z);
  }
  return bad;
}

LocalTrivialization build_local_trivialization(const HoloFamily& f, const Gaussian& z0,
                                               const std::vector<Gaussian>& grid,
                                               const TrivializationOptions& opt) {
  validate_family(f);
  LocalTrivialization t;
  std::vector<Gaussian> bad;
  if (!f.space.empty()) {
    const int top = f.space.hi();
    // Kill homology degree by degree from the bottom; each step may create
    // new chains one degree up, so the loop runs until nothing is added.
    for (int k = f.space.lo(); k <= std::max(top, t.n.empty() ? top : t.n.rbegin()->first); ++k) {
      const HoloFamily cur = perturbed_family(f, t);
      const size_t nk = cur.dim(k);
      if (nk == 0) continue;
      const PolyMat a = cur.d(k);
      const IdempotentFamily idem = kernel_idempotent_family(a, z0, grid, GridPolicy::exclude);
      for (const auto& z : idem.excluded) add_point(bad, z);
      const Subspace<Gaussian> ker0 = kernel_of(eval_matrix(a, z0));
      const Subspace<Gaussian> im0 = image_of(eval_matrix(cur.d(k + 1), z0));
      Mat f0 = complement(im0, ker0).basis();
      if (opt.rng) {
        if (f0.cols() && im0.dim()) f0 += im0.basis() * opt.rng->matrix(im0.dim(), f0.cols(), opt.gaussian);
        Mat g = opt.rng->unipotent(f0.cols(), opt.gaussian);
        for (size_t j = 0; j < g.cols(); ++j) {
          const Gaussian s = opt.rng->nonzero(opt.gaussian);
          for (size_t i = 0; i < g.rows(); ++i) g(i, j) *= s;
        }
        f0 = f0 * g;
        if (opt.extra && k < top && ker0.dim()) {
          f0 = hcat(f0, ker0.basis() * opt.rng->matrix(ker0.dim(), opt.extra, opt.gaussian));
        }
      }
      if (f0.cols() == 0) continue;
      t.n[k + 1] = f0.cols();
      t.f[k + 1] = clear_denominators(idem.k * to_ratmat(to_polymat(f0)));
    }
  }
  std::vector<Gaussian> good;
  for (const auto& z : grid) {
    if (!contains_point(bad, z)) good.push_back(z);
  }
  for (const auto& z : inexact_points(f, t, good)) add_point(bad, z);
  if (!bad.empty() && opt.policy == GridPolicy::strict) {
    throw RankDegeneracyError("local trivialization: perturbed complex not exact", point_names(bad));
  }
  for (const auto& z : grid) {
    if (!contains_point(bad, z)) t.grid.push_back(z);
  }
  t.excluded = std::move(bad);
  return t;
}

namespace {

// Column embedding of the folded X inside the folded X + C, and the standard
// columns of C in position order.
struct FoldedAugmentation {
  Mat emb_p, emb_m, omega_p, omega_m;
};

FoldedAugmentation fold_augmentation(const GradedSpace& x, const LocalTrivialization& t,
                                     const Z2Layout& small, const Z2Layout& big, size_t np,
                                     size_t nm, size_t big_np, size_t big_nm) {
  FoldedAugmentation a{Mat(big_np, np), Mat(big_nm, nm), Mat(big_np, t.n_plus()),
                       Mat(big_nm, t.n_minus())};
  GradedSpace all = augmented_space(x, t);
  size_t wp = 0, wm = 0;
  for (const auto& [j, n] : all.dims) {
    const bool even = j % 2 == 0;
    Mat& emb = even ? a.emb_p : a.emb_m;
    Mat& om = even ? a.omega_p : a.omega_m;
    size_t& w = even ? wp : wm;
    const size_t xj = x.dim(j);
    const size_t base = big.offset(j);
    if (xj) {
      const size_t s = small.offset(j);
      for (size_t i = 0; i < xj; ++i) emb(base + i, s + i) = Gaussian(1);
    }
    for (size_t i = 0; i < t.n_at(j); ++i) om(base + xj + i, w++) = Gaussian(1);
  }
  return a;
}

}  // namespace

Gaussian trivialization_scalar(const HoloFamily& f, const LocalTrivialization& t,
                               const Gaussian& z) {
  const ChainComplex d = eval_family(f, z);
  const Z2Complex zd = fold_z2(d);
  const Z2Complex zbig = fold_z2(augmented_complex(f, t, z));
  const Z2Complex zpert = fold_z2(perturbed_complex(f, t, z));
  const Z2Homology hd = homology(zd), hbig = homology(zbig), hpert = homology(zpert);
  const FoldedAugmentation a =
      fold_augmentation(f.space, t, zd.layout, zbig.layout, zd.np, zd.nm, zbig.np, zbig.nm);
  const Gaussian ic = embedding_scalar(hd, hbig, a.emb_p, a.emb_m, a.omega_p, a.omega_m);
  return complex_perturbation_scalar(zbig, zpert, hbig, hpert).scalar * ic;
}

namespace {

bool family_exact_at(const HoloFamily& f, const Gaussian& z) { return is_exact(eval_family(f, z)); }

// Samples `value` over admissible points, reconstructs and checks held-out points.
template <class Admissible, class Value>
FunctionResult sample_and_reconstruct(const std::vector<Gaussian>& grid, ReconstructionBounds b,
                                      size_t held_out, GridPolicy policy, const char* what,
                                      Admissible admissible, Value value) {
  FunctionResult out;
  std::vector<Gaussian> good;
  for (const auto& z : grid) {
    if (admissible(z)) {
      good.push_back(z);
    } else {
      out.excluded.push_back(z);
    }
  }
  if (!out.excluded.empty() && policy == GridPolicy::strict) {
    throw RankDegeneracyError(std::string(what) + ": degenerate grid points",
                              point_names(out.excluded));
  }
  const size_t need = static_cast<size_t>(b.num + b.den + 2);
  if (good.size() < need + held_out) {
    throw ReconstructionError(std::string(what) + ": grid has " + std::to_string(good.size()) +
                              " admissible points, need " + std::to_string(need + held_out));
  }
  for (size_t k = 0; k < need; ++k) out.samples.push_back({good[k], value(good[k])});
  for (size_t k = need; k < need + held_out; ++k) out.held_out.push_back({good[k], value(good[k])});
  out.f = rational_reconstruct(out.samples, b.num, b.den);
  for (const auto& s : out.held_out) {
    const Gaussian q = out.f.den().eval(s.point);
    if (q.is_zero() || out.f.num().eval(s.point) != s.value * q) {
      throw ReconstructionError(std::string(what) + ": reconstruction disagrees at held-out point " +
                                s.point.str());
    }
  }
  return out;
}

int triv_degree(const LocalTrivialization& t) {
  int d = 0;
  for (const auto& [j, m] : t.f) d = std::max(d, max_degree(m));
  return d;
}

}  // namespace

Gaussian perturbation_value(const HoloFamily& fd, const HoloFamily& fdelta, size_t c, size_t g,
                            const Gaussian& z) {
  const Stabilized sd = stabilize(fold_z2(eval_family(fd, z)), c, c);
  const Stabilized sdelta = stabilize(fold_z2(eval_family(fdelta, z)), g, g);
  if (sd.complex.np != sdelta.complex.np || sd.complex.nm != sdelta.complex.nm) {
    throw DimensionError("perturbation function: stabilized chains differ in dimension");
  }
  const Gaussian p = complex_perturbation_scalar(sd.complex, sdelta.complex, homology(sd.complex),
                                                 homology(sdelta.complex))
                         .scalar;
  return p * sd.embedding / sdelta.embedding;
}

FunctionResult perturbation_function(const HoloFamily& fd, const HoloFamily& fdelta, size_t c,
                                     size_t g, const std::vector<Gaussian>& grid,
                                     std::optional<ReconstructionBounds> bounds, size_t held_out,
                                     GridPolicy policy) {
  validate_family(fd);
  validate_family(fdelta);
  if (!bounds) {
    const int n = static_cast<int>(fd.space.total() + 2 * c);
    const int deg = std::max(fd.max_degree(), fdelta.max_degree());
    bounds = ReconstructionBounds{n * deg, n * deg};
  }
  return sample_and_reconstruct(
      grid, *bounds, held_out, policy, "perturbation function",
      [&](const Gaussian& z) { return family_exact_at(fd, z) && family_exact_at(fdelta, z); },
      [&](const Gaussian& z) { return perturbation_value(fd, fdelta, c, g, z); });
}

FunctionResult transition_function(const HoloFamily& f, const LocalTrivialization& t1,
                                   const LocalTrivialization& t2,
                                   const std::vector<Gaussian>& grid,
                                   std::optional<ReconstructionBounds> bounds, size_t held_out) {
  validate_family(f);
  if (!bounds) {
    const int n = static_cast<int>(f.space.total() + t1.n_plus() + t1.n_minus() +
                                   t2.n_plus() + t2.n_minus());
    const int deg = std::max({f.max_degree(), triv_degree(t1), triv_degree(t2)});
    bounds = ReconstructionBounds{n * deg, n * deg};
  }
  const HoloFamily p1 = perturbed_family(f, t1), p2 = perturbed_family(f, t2);
  FunctionResult out = sample_and_reconstruct(
      grid, *bounds, held_out, GridPolicy::exclude, "transition function",
      [&](const Gaussian& z) { return family_exact_at(p1, z) && family_exact_at(p2, z); },
      [&](const Gaussian& z) {
        return trivialization_scalar(f, t2, z) / trivialization_scalar(f, t1, z);
      });
  std::vector<Gaussian> zeros;
  for (const auto& z : grid) {
    if (contains_point(out.excluded, z)) continue;
    if (out.f.num().eval(z).is_zero()) zeros.push_back(z);
  }
  if (!zeros.empty()) {
    throw ReconstructionError("transition function vanishes at grid point " + zeros.front().str());
  }
  return out;
}

HoloFamily cone_family(const HoloFamily& fd, const HoloFamily& fdelta, const PolyChainMap& a) {
  HoloFamily c;
  std::set<int> js = degrees_of(fdelta.space);
  for (int j : degrees_of(fd.space)) js.insert(j + 1);
  for (int j : js) c.space.dims[j] = fdelta.dim(j) + fd.dim(j - 1);
  auto comp = [&](int j) {
    auto it = a.find(j);
    if (it != a.end()) return it->second;
    return PolyMat(fdelta.dim(j), fd.dim(j));
  };
  for (int j : js) {
    PolyMat m(c.dim(j - 1), c.dim(j));
    if (m.rows() == 0 || m.cols() == 0) continue;
    // [[delta_j, A_{j-1}], [0, -d_{j-1}]]
    m.set_block(0, 0, fdelta.d(j));
    m.set_block(0, fdelta.dim(j), comp(j - 1));
    m.set_block(fdelta.dim(j - 1), fdelta.dim(j), -fd.d(j - 1));
    c.diffs[j] = std::move(m);
  }
  return c;
}

TrivializationPair cone_trivialization(const HoloFamily& fd, const HoloFamily& fdelta,
                                       const PolyChainMap& a, const Gaussian& z0,
                                       const std::vector<Gaussian>& grid,
                                       const TrivializationOptions& opt) {
  validate_family(fd);
  validate_family(fdelta);
  validate_family_map(fd, fdelta, a);
  TrivializationOptions inner = opt;
  inner.policy = GridPolicy::exclude;
  TrivializationPair out;
  out.g = build_local_trivialization(fdelta, z0, grid, inner);

  // The cone of A with Delta replaced by Delta_G: chains Y_j + X_{j-1} + Gamma_j.
  const HoloFamily cone = cone_family(fd, fdelta, a);
  // G_j has rows Y_{j-1} + Gamma_{j-1}; spread them over Y_{j-1} + X_{j-2} + Gamma_{j-1}.
  LocalTrivialization spread;
  spread.n = out.g.n;
  for (const auto& [j, gj] : out.g.f) {
    const size_t y = fdelta.dim(j - 1), x = fd.dim(j - 2), m = out.g.n_at(j - 1);
    PolyMat s(y + x + m, gj.cols());
    s.set_block(0, 0, poly_block_rows(gj, 0, y));
    s.set_block(y + x, 0, poly_block_rows(gj, y, m));
    spread.f[j] = std::move(s);
  }
  const HoloFamily e = perturbed_family(cone, spread);
  const LocalTrivialization l = build_local_trivialization(e, z0, out.g.grid, inner);

  // L_j : C_{j-1} -> Y_{j-1} + X_{j-2} + Gamma_{j-1} + C_{j-2}, read as (H^1, -F^1, H^2, -F^2).
  for (const auto& [j, lj] : l.f) {
    const size_t y = fdelta.dim(j - 1), x = fd.dim(j - 2), m = out.g.n_at(j - 1);
    const size_t cprev = l.n_at(j - 1);
    out.f.n[j - 1] = lj.cols();
    out.f.f[j - 1] = -vcat(poly_block_rows(lj, y, x), poly_block_rows(lj, y + x + m, cprev));
    out.h[j - 1] = vcat(poly_block_rows(lj, 0, y), poly_block_rows(lj, y + x, m));
  }
  // K_j = [[G^1_j, H^1_{j-1}], [0, -F^1_{j-1}], [G^2_j, H^2_{j-1}], [0, -F^2_{j-1}]].
  std::set<int> kj;
  for (const auto& [j, n] : out.g.n) kj.insert(j);
  for (const auto& [j, n] : l.n) kj.insert(j);
  for (int j : kj) {
    const size_t gam = out.g.n_at(j), cj = l.n_at(j);
    out.k.n[j] = gam + cj;
    const size_t y = fdelta.dim(j - 1), x = fd.dim(j - 2), m = out.g.n_at(j - 1);
    const size_t cprev = l.n_at(j - 1);
    PolyMat kmat(y + x + m + cprev, gam + cj);
    auto git = out.g.f.find(j);
    if (git != out.g.f.end()) {
      kmat.set_block(0, 0, poly_block_rows(git->second, 0, y));
      kmat.set_block(y + x, 0, poly_block_rows(git->second, y, m));
    }
    auto lit = l.f.find(j);
    if (lit != l.f.end()) kmat.set_block(0, gam, lit->second);
    out.k.f[j] = std::move(kmat);
  }

  std::vector<Gaussian> bad = out.g.excluded;
  for (const auto& z : l.excluded) add_point(bad, z);
  std::vector<Gaussian> good;
  for (const auto& z : grid) {
    if (!contains_point(bad, z)) good.push_back(z);
  }
  for (const auto& z : inexact_points(fd, out.f, good)) add_point(bad, z);
  for (const auto& z : inexact_points(cone, out.k, good)) add_point(bad, z);
  if (!bad.empty() && opt.policy == GridPolicy::strict) {
    throw RankDegeneracyError("cone trivialization: rank condition fails", point_names(bad));
  }
  std::vector<Gaussian> final_grid;
  for (const auto& z : grid) {
    if (!contains_point(bad, z)) final_grid.push_back(z);
  }
  for (LocalTrivialization* t : {&out.f, &out.g, &out.k}) {
    t->grid = final_grid;
    t->excluded = bad;
  }
  return out;
}

Gaussian torsion_section_value(const HoloFamily& fd, const HoloFamily& fdelta,
                               const PolyChainMap& a, const TrivializationPair& pair,
                               const Gaussian& z) {
  const Gaussian t =
      triangle_torsion(eval_family(fd, z), eval_family(fdelta, z), eval_chain_map(a, z)).scalar;
  const Gaussian phi_f = trivialization_scalar(fd, pair.f, z);
  const Gaussian phi_g = trivialization_scalar(fdelta, pair.g, z);
  const Gaussian phi_k = trivialization_scalar(cone_family(fd, fdelta, a), pair.k, z);
  return t * phi_f * phi_k / phi_g;
}

Gaussian torsion_section_constant(const HoloFamily& fd, const HoloFamily& fdelta,
                                  const PolyChainMap& a, const TrivializationPair& pair,
                                  const std::vector<Gaussian>& grid) {
  if (grid.empty()) throw DimensionError("torsion section: empty grid");
  const Gaussian first = torsion_section_value(fd, fdelta, a, pair, grid.front());
  std::vector<Gaussian> divergent;
  for (size_t k = 1; k < grid.size(); ++k) {
    if (torsion_section_value(fd, fdelta, a, pair, grid[k]) != first) divergent.push_back(grid[k]);
  }
  if (!divergent.empty()) {
    std::string pts;
    for (const auto& p : divergent) pts += " " + p.str();
    throw ValidationError("torsion section is not constant; differs from " + first.str() + " at" +
                          pts);
  }
  return first;
}

int torsion_section_sign(const TrivializationPair& pair) {
  const size_t np = pair.f.n_plus(), nm = pair.f.n_minus(), mp = pair.g.n_plus();
  return ((nm + mp * (np + nm)) % 2 == 0) ? 1 : -1;
}

}  // namespace detlines
