// Dense-grid scan of every corpus entry: recomputes derivative extremes and
// the global minimum from scratch and compares them with the frozen oracle
// intervals and known minima. The frozen constants in src/corpus.cpp were
// produced and are re-verified with this tool.

#include <cinttypes>
#include <cstdio>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "lipbound/corpus.hpp"

namespace {

using lipbound::BoxDomain;
using lipbound::CorpusEntry;
using lipbound::Mat;
using lipbound::Vec;

Eigen::Index grid_points(Eigen::Index dim) {
  switch (dim) {
    case 1: return 1000001;
    case 2: return 1025;
    case 3: return 101;
    default: return 17;
  }
}

template <typename Fn>
void walk_grid(const BoxDomain<double>& box, Eigen::Index g, Fn&& fn) {
  const Eigen::Index n = box.dim();
  const Vec<double>& lo = box.lower();
  const Vec<double> w = box.width();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n), 0);
  Vec<double> x = lo;
  for (;;) {
    fn(x);
    Eigen::Index axis = 0;
    while (axis < n) {
      auto& k = idx[static_cast<std::size_t>(axis)];
      ++k;
      if (k < g) {
        x(axis) = lo(axis) + static_cast<double>(k) * w(axis) /
                                 static_cast<double>(g - 1);
        break;
      }
      k = 0;
      x(axis) = lo(axis);
      ++axis;
    }
    if (axis == n) return;
  }
}

Vec<double> clamp_into(const Vec<double>& x, const BoxDomain<double>& box) {
  return x.cwiseMax(box.lower()).cwiseMin(box.upper());
}

/// Projected Newton descent from the best grid point; falls back to damped
/// gradient steps whenever the Newton step fails to decrease f.
std::pair<double, Vec<double>> refine_min(const CorpusEntry& e, Vec<double> x,
                                          double fx) {
  for (int it = 0; it < 100; ++it) {
    const Vec<double> g = e.model.grad(x);
    const Mat<double> h = e.model.hess(x);
    Vec<double> step = h.ldlt().solve(g);
    if (!step.allFinite()) step = g;
    bool improved = false;
    double scale = 1.0;
    for (int back = 0; back < 40; ++back) {
      const Vec<double> cand = clamp_into(x - scale * step, e.box);
      const double fc = e.model(cand);
      if (fc < fx) {
        x = cand;
        fx = fc;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) break;
  }
  return {fx, x};
}

bool report_interval(const char* label, double sample_lo, double sample_hi,
                     double oracle_lo, double oracle_hi) {
  const bool contained =
      sample_lo >= oracle_lo - 1e-12 * (1.0 + std::abs(oracle_lo)) &&
      sample_hi <= oracle_hi + 1e-12 * (1.0 + std::abs(oracle_hi));
  std::printf("  %-8s sampled [%.17g, %.17g]\n           oracle  [%.17g, %.17g]  %s\n",
              label, sample_lo, sample_hi, oracle_lo, oracle_hi,
              contained ? "contained" : "ESCAPED");
  return contained;
}

std::string point_str(const Vec<double>& x) {
  std::string s;
  char buf[64];
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.17g", i ? ", " : "", x(i));
    s += buf;
  }
  return s;
}

}  // namespace

int main() {
  bool all_ok = true;
  for (const CorpusEntry& e : lipbound::corpus_list()) {
    const Eigen::Index n = e.box.dim();
    const Eigen::Index g = grid_points(n);
    double total = 1;
    for (Eigen::Index i = 0; i < n; ++i) total *= static_cast<double>(g);
    std::printf("== %s (n=%td, %td points per axis, %.0f total)\n",
                e.name.c_str(), static_cast<std::ptrdiff_t>(n),
                static_cast<std::ptrdiff_t>(g), total);

    const double inf = std::numeric_limits<double>::infinity();
    double f_min = inf;
    Vec<double> arg_min = e.box.center();
    Vec<double> g_lo = Vec<double>::Constant(n, inf);
    Vec<double> g_hi = Vec<double>::Constant(n, -inf);
    Mat<double> h_lo = Mat<double>::Constant(n, n, inf);
    Mat<double> h_hi = Mat<double>::Constant(n, n, -inf);

    walk_grid(e.box, g, [&](const Vec<double>& x) {
      const double f = e.model(x);
      if (f < f_min) {
        f_min = f;
        arg_min = x;
      }
      const Vec<double> gr = e.model.grad(x);
      g_lo = g_lo.cwiseMin(gr);
      g_hi = g_hi.cwiseMax(gr);
      const Mat<double> h = e.model.hess(x);
      h_lo = h_lo.cwiseMin(h);
      h_hi = h_hi.cwiseMax(h);
    });

    char label[64];
    for (Eigen::Index i = 0; i < n; ++i) {
      std::snprintf(label, sizeof label, "k[%td]", static_cast<std::ptrdiff_t>(i));
      all_ok &= report_interval(label, g_lo(i), g_hi(i), e.kappa_oracle.lo()(i),
                                e.kappa_oracle.hi()(i));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        std::snprintf(label, sizeof label, "M[%td,%td]",
                      static_cast<std::ptrdiff_t>(i),
                      static_cast<std::ptrdiff_t>(j));
        all_ok &= report_interval(label, h_lo(i, j), h_hi(i, j),
                                  e.m_oracle.lo()(i, j), e.m_oracle.hi()(i, j));
      }
    }

    const auto [f_ref, x_ref] = refine_min(e, arg_min, f_min);
    std::printf("  min      grid    %.17g at (%s)\n", f_min,
                point_str(arg_min).c_str());
    std::printf("           refined %.17g at (%s)\n", f_ref,
                point_str(x_ref).c_str());
    if (e.known_min) {
      const double drift = std::abs(f_ref - e.known_min->value);
      const bool ok = drift <= 1e-6;
      std::printf("           frozen  %.17g at (%s)  |refined-frozen| = %.3g  %s\n",
                  e.known_min->value, point_str(e.known_min->point).c_str(),
                  drift, ok ? "confirmed" : "DISAGREES");
      all_ok &= ok;
    }
  }
  std::printf("%s\n", all_ok ? "all oracles confirmed" : "ORACLE MISMATCH");
  return all_ok ? 0 : 1;
}
