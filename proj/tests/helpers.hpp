#ifndef LIPBOUND_TESTS_HELPERS_HPP
#define LIPBOUND_TESTS_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lipbound/types.hpp"

namespace lipbound::testing {

/// Uniform double in [0,1) from raw mt19937_64 output; identical sequences
/// on every standard library.
inline double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit(rng);
}

inline Vec<double> random_point(std::mt19937_64& rng,
                                const BoxDomain<double>& box) {
  Vec<double> x(box.dim());
  for (Eigen::Index i = 0; i < box.dim(); ++i)
    x(i) = uniform(rng, box.lower()(i), box.upper()(i));
  return x;
}

/// Random interval vector pair with lo <= hi entrywise, entries in [-s, s].
inline std::pair<Vec<double>, Vec<double>> random_interval_vec(
    std::mt19937_64& rng, Eigen::Index n, double s) {
  Vec<double> lo(n);
  Vec<double> hi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = uniform(rng, -s, s);
    const double v = uniform(rng, -s, s);
    lo(i) = std::min(u, v);
    hi(i) = std::max(u, v);
  }
  return {lo, hi};
}

/// Random symmetric interval matrix pair with lo <= hi entrywise.
inline std::pair<Mat<double>, Mat<double>> random_interval_mat(
    std::mt19937_64& rng, Eigen::Index n, double s) {
  Mat<double> lo(n, n);
  Mat<double> hi(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double u = uniform(rng, -s, s);
      const double v = uniform(rng, -s, s);
      lo(i, j) = lo(j, i) = std::min(u, v);
      hi(i, j) = hi(j, i) = std::max(u, v);
    }
  }
  return {lo, hi};
}

/// Visits the g-per-axis tensor grid of `box`, faces included.
template <typename Fn>
void for_each_grid_point(const BoxDomain<double>& box, Eigen::Index g,
                         Fn&& fn) {
  const Eigen::Index n = box.dim();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n), 0);
  Vec<double> x(n);
  for (;;) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = g == 1 ? 0.5
                              : static_cast<double>(idx[static_cast<std::size_t>(i)]) /
                                    static_cast<double>(g - 1);
      x(i) = box.lower()(i) + t * (box.upper()(i) - box.lower()(i));
    }
    fn(x);
    Eigen::Index k = 0;
    for (; k < n; ++k) {
      if (++idx[static_cast<std::size_t>(k)] < g) break;
      idx[static_cast<std::size_t>(k)] = 0;
    }
    if (k == n) break;
  }
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(b));
}

}  // namespace lipbound::testing

#endif  // LIPBOUND_TESTS_HELPERS_HPP
