#include "detlines/generators.hpp"

#include <set>

namespace detlines {

namespace {

Mat unipotent_inverse_pair(Rng& rng, size_t n, bool gaussian, long bound, Mat* inv) {
  Mat u = rng.unipotent(n, gaussian, bound);
  *inv = inverse(u);
  return u;
}

}  // namespace

ChainComplex gen_random_complex(const GenProfile& p) {
  if (p.hi < p.lo) throw DimensionError("profile: hi < lo");
  Rng rng(derive_seed(p.seed, 1));
  std::map<int, size_t> dims = p.dims;
  if (dims.empty()) {
    for (int j = p.lo; j <= p.hi; ++j) dims[j] = static_cast<size_t>(rng.uniform(0, static_cast<long>(p.max_dim)));
  }
  int lo = p.lo, hi = p.hi;
  if (!dims.empty()) {
    lo = std::min(lo, dims.begin()->first);
    hi = std::max(hi, dims.rbegin()->first);
  }
  auto dim = [&](int j) -> size_t {
    auto it = dims.find(j);
    return it == dims.end() ? 0 : it->second;
  };
  // r[j] = rank of d_j; n_j = r[j+1] + h_j + r[j].
  std::map<int, size_t> r;
  r[lo] = 0;
  for (int j = lo; j <= hi; ++j) {
    const size_t n = dim(j);
    if (r[j] > n) throw DimensionError("profile: infeasible ranks at degree " + std::to_string(j));
    const size_t room = n - r[j];
    size_t next;
    if (!p.homology.empty()) {
      auto it = p.homology.find(j);
      const size_t h = it == p.homology.end() ? 0 : it->second;
      if (h > room) {
        throw DimensionError("profile: requested homology too large at degree " + std::to_string(j));
      }
      next = room - h;
    } else if (j == hi) {
      next = 0;
    } else {
      next = static_cast<size_t>(rng.uniform(0, static_cast<long>(std::min(room, dim(j + 1)))));
    }
    if (next > dim(j + 1)) {
      throw DimensionError("profile: requested homology is infeasible at degree " + std::to_string(j));
    }
    r[j + 1] = next;
  }
  if (r[hi + 1] != 0) throw DimensionError("profile: requested homology is infeasible at the top degree");

  ChainComplex c;
  for (int j = lo; j <= hi; ++j) {
    if (dims.count(j)) c.space.dims[j] = dim(j);
  }
  std::map<int, Mat> g, ginv;
  for (int j = lo; j <= hi; ++j) {
    Mat inv;
    g[j] = unipotent_inverse_pair(rng, dim(j), p.gaussian, p.entry_bound, &inv);
    ginv[j] = inv;
  }
  for (int j = lo + 1; j <= hi; ++j) {
    const size_t n = dim(j), m = dim(j - 1);
    if (n == 0 || m == 0) continue;
    // S_j (the last r_j coordinates of X_j) maps onto B_{j-1} (the first r_j of X_{j-1}).
    Mat d(m, n);
    const size_t rj = r[j];
    for (size_t k = 0; k < rj; ++k) d(k, n - rj + k) = Gaussian(1);
    c.diffs[j] = g[j - 1] * d * ginv[j];
  }
  validate_complex(c);
  return c;
}

GenProfile exact_profile(uint64_t seed, int lo, int hi, size_t max_dim, bool gaussian) {
  Rng rng(derive_seed(seed, 7));
  std::map<int, size_t> r;
  for (int j = lo + 1; j <= hi; ++j) r[j] = static_cast<size_t>(rng.uniform(0, static_cast<long>(max_dim / 2)));
  GenProfile p;
  p.lo = lo;
  p.hi = hi;
  p.gaussian = gaussian;
  p.seed = seed;
  for (int j = lo; j <= hi; ++j) {
    p.dims[j] = (r.count(j) ? r[j] : 0) + (r.count(j + 1) ? r[j + 1] : 0);
    p.homology[j] = 0;
  }
  return p;
}

ChainComplex gen_on_chains(const GradedSpace& space, uint64_t seed, bool gaussian) {
  GenProfile p;
  p.dims = space.dims;
  p.lo = space.lo();
  p.hi = space.hi();
  p.gaussian = gaussian;
  p.seed = seed;
  return gen_random_complex(p);
}

namespace {

struct MapUnknowns {
  std::map<int, size_t> offset;
  size_t total = 0;
};

MapUnknowns layout_unknowns(const ChainComplex& d1, const ChainComplex& d2) {
  MapUnknowns u;
  for (const auto& [j, n] : d1.space.dims) {
    u.offset[j] = u.total;
    u.total += d2.dim(j) * n;
  }
  return u;
}

Mat commuting_system(const ChainComplex& d1, const ChainComplex& d2, const MapUnknowns& u) {
  std::set<int> js;
  for (const auto& [j, n] : d1.space.dims) {
    js.insert(j);
    js.insert(j + 1);
  }
  std::vector<std::vector<std::pair<size_t, Gaussian>>> rows;
  for (int j : js) {
    // (delta_j A_j - A_{j-1} d_j)(r, c) = 0, of size dim2(j-1) x dim1(j).
    const size_t rows_out = d2.dim(j - 1), cols_out = d1.dim(j);
    if (rows_out == 0 || cols_out == 0) continue;
    const Mat delta = d2.d(j), dj = d1.d(j);
    const size_t n2j = d2.dim(j), n1jm = d1.dim(j - 1);
    for (size_t r = 0; r < rows_out; ++r) {
      for (size_t c = 0; c < cols_out; ++c) {
        std::vector<std::pair<size_t, Gaussian>> eq;
        if (u.offset.count(j)) {
          for (size_t k = 0; k < n2j; ++k) {
            if (!delta(r, k).is_zero()) eq.emplace_back(u.offset.at(j) + k * cols_out + c, delta(r, k));
          }
        }
        if (u.offset.count(j - 1)) {
          for (size_t k = 0; k < n1jm; ++k) {
            if (!dj(k, c).is_zero()) eq.emplace_back(u.offset.at(j - 1) + r * n1jm + k, -dj(k, c));
          }
        }
        rows.push_back(std::move(eq));
      }
    }
  }
  Mat sys(rows.size(), u.total);
  for (size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [col, v] : rows[i]) sys(i, col) += v;
  }
  return sys;
}

}  // namespace

size_t chain_map_space_dim(const ChainComplex& d1, const ChainComplex& d2) {
  const MapUnknowns u = layout_unknowns(d1, d2);
  const Mat sys = commuting_system(d1, d2, u);
  return u.total - rank(sys);
}

ChainMap gen_chain_map(uint64_t seed, const ChainComplex& d1, const ChainComplex& d2, bool gaussian) {
  const MapUnknowns u = layout_unknowns(d1, d2);
  Mat x(u.total, 1);
  if (seed != 0 && u.total > 0) {
    const Mat sys = commuting_system(d1, d2, u);
    const Mat k = sys.rows() == 0 ? Mat::identity(u.total) : kernel_basis(sys).basis();
    Rng rng(derive_seed(seed, 2));
    x = k * rng.matrix(k.cols(), 1, gaussian);
  }
  ChainMap a;
  for (const auto& [j, n] : d1.space.dims) {
    const size_t m = d2.dim(j);
    Mat aj(m, n);
    for (size_t r = 0; r < m; ++r) {
      for (size_t c = 0; c < n; ++c) aj(r, c) = x(u.offset.at(j) + r * n + c, 0);
    }
    a.comps[j] = std::move(aj);
  }
  validate_chain_map(d1, d2, a);
  return a;
}

Z2Complex gen_random_z2(uint64_t seed, size_t np, size_t nm, bool gaussian,
                        std::optional<std::pair<size_t, size_t>> homology) {
  Rng rng(derive_seed(seed, 3));
  size_t total;
  if (homology) {
    if (homology->first > np || homology->second > nm ||
        np - homology->first != nm - homology->second) {
      throw DimensionError("Z2 profile: requested homology is infeasible");
    }
    total = np - homology->first;
  } else {
    total = static_cast<size_t>(rng.uniform(0, static_cast<long>(std::min(np, nm))));
  }
  const size_t rp = static_cast<size_t>(rng.uniform(0, static_cast<long>(total)));
  const size_t rm = total - rp;
  // X+ = [B+ (rm) | H+ | S+ (rp)],  X- = [B- (rp) | H- | S- (rm)]
  Mat dp(nm, np), dm(np, nm);
  for (size_t k = 0; k < rp; ++k) dp(k, np - rp + k) = Gaussian(1);
  for (size_t k = 0; k < rm; ++k) dm(k, nm - rm + k) = Gaussian(1);
  Mat gp_inv, gm_inv;
  const Mat gp = unipotent_inverse_pair(rng, np, gaussian, 1, &gp_inv);
  const Mat gm = unipotent_inverse_pair(rng, nm, gaussian, 1, &gm_inv);
  Z2Complex z = Z2Complex::make(gm * dp * gp_inv, gp * dm * gm_inv);
  validate_z2(z);
  return z;
}

namespace {

Polynomial random_poly(Rng& rng, int degree, bool gaussian) {
  std::vector<Gaussian> c;
  for (int k = 0; k < degree; ++k) c.push_back(rng.small(gaussian, 1));
  c.push_back(rng.nonzero(gaussian, 1));
  return Polynomial(std::move(c));
}

}  // namespace

PolyFamilyData gen_poly_family(const GenProfile& profile, int degree, bool scaled) {
  PolyFamilyData out;
  out.normal = gen_random_complex(profile);
  Rng rng(derive_seed(profile.seed, 4));
  const int budget = scaled && degree > 0 ? degree - 1 : degree;
  for (const auto& [j, n] : out.normal.space.dims) {
    PolyMat g = PolyMat::identity(n), gi = PolyMat::identity(n);
    const int dj = (j % 2 == 0) ? (budget + 1) / 2 : budget / 2;
    if (n >= 2 && dj > 0) {
      const size_t a = static_cast<size_t>(rng.uniform(0, static_cast<long>(n) - 1));
      size_t b = static_cast<size_t>(rng.uniform(0, static_cast<long>(n) - 2));
      if (b >= a) ++b;
      // Vanishes at 0, so every g_j(0) = 1.
      const Polynomial p = random_poly(rng, dj - 1, profile.gaussian) * Polynomial::z();
      g(a, b) = p;
      gi(a, b) = -p;
    }
    out.g[j] = std::move(g);
    out.g_inv[j] = std::move(gi);
  }
  out.family.space = out.normal.space;
  for (const auto& [j, m] : out.normal.diffs) {
    PolyMat dj = out.g.at(j - 1) * to_polymat(m) * out.g_inv.at(j);
    if (scaled && degree > 0) {
      const Polynomial s(std::vector<Gaussian>{Gaussian(1), rng.nonzero(profile.gaussian, 1)});
      dj = dj.scaled(s);
    }
    out.family.diffs[j] = std::move(dj);
  }
  validate_family(out.family);
  return out;
}

PolyChainMap gen_poly_chain_map(uint64_t seed, const PolyFamilyData& src, const PolyFamilyData& dst,
                                bool gaussian) {
  const ChainMap a0 = gen_chain_map(derive_seed(seed, 5), src.normal, dst.normal, gaussian);
  const ChainMap a1 = gen_chain_map(derive_seed(seed, 6), src.normal, dst.normal, gaussian);
  PolyChainMap out;
  for (const auto& [j, n] : src.normal.space.dims) {
    const size_t m = dst.normal.dim(j);
    if (m == 0 || n == 0) continue;
    const PolyMat mid = to_polymat(a0.at(j, m, n)) + to_polymat(a1.at(j, m, n)) *
                                                         PolyMat::identity(n).scaled(Polynomial::z());
    out[j] = dst.g.at(j) * mid * src.g_inv.at(j);
  }
  validate_family_map(src.family, dst.family, out);
  return out;
}

}  // namespace detlines
