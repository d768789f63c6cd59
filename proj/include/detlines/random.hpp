#pragma once

#include <cstdint>
#include <random>

#include "detlines/matrix.hpp"

namespace detlines {

// SplitMix64 finalizer; used to derive independent per-trial seeds.
inline uint64_t mix_seed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  return mix_seed(seed ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

// Small exact random values. Only the engine's raw output is consumed so the
// streams are reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // Uniform in [lo, hi].
  long uniform(long lo, long hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(eng_() % span);
  }
  bool coin() { return (eng_() & 1U) != 0; }

  Gaussian small(bool gaussian, long bound = 2) {
    Rational re(uniform(-bound, bound));
    if (!gaussian) return Gaussian(re);
    return {re, Rational(uniform(-bound, bound))};
  }
  Gaussian nonzero(bool gaussian, long bound = 2) {
    for (;;) {
      Gaussian g = small(gaussian, bound);
      if (!g.is_zero()) return g;
    }
  }
  Mat matrix(size_t r, size_t c, bool gaussian, long bound = 2) {
    Mat m(r, c);
    for (size_t i = 0; i < r; ++i) {
      for (size_t j = 0; j < c; ++j) m(i, j) = small(gaussian, bound);
    }
    return m;
  }
  // Product of a random unit upper and unit lower triangular matrix.
  Mat unipotent(size_t n, bool gaussian, long bound = 1) {
    Mat u = Mat::identity(n);
    Mat l = Mat::identity(n);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        u(i, j) = small(gaussian, bound);
        l(j, i) = small(gaussian, bound);
      }
    }
    return u * l;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace detlines
