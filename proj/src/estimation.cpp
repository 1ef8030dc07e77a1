#include "lipbound/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace lipbound {
namespace {

void check_cfg(const EstimationConfig& cfg) {
  detail::require(cfg.grid_points_per_axis >= 2,
                  "EstimationConfig: grid_points_per_axis must be >= 2");
  detail::require(cfg.segment_samples >= 2,
                  "EstimationConfig: segment_samples must be >= 2");
  detail::require(std::isfinite(cfg.fd_step) && cfg.fd_step > 0.0,
                  "EstimationConfig: fd_step must be positive");
  detail::require(std::isfinite(cfg.inflation) && cfg.inflation >= 0.0,
                  "EstimationConfig: inflation must be >= 0");
}

void check_box_in_domain(const FunctionModel& model,
                         const BoxDomain<double>& box) {
  detail::require(box.dim() == model.dim,
                  "estimation: box dimension does not match the model");
  for (Eigen::Index i = 0; i < box.dim(); ++i) {
    if (box.lower()(i) < model.domain.lower()(i) ||
        box.upper()(i) > model.domain.upper()(i))
      throw std::domain_error(
          "estimation: box is not contained in the model domain");
  }
}

void check_segment_in_domain(const FunctionModel& model,
                             const Segment<double>& seg) {
  detail::require(seg.dim() == model.dim,
                  "estimation: segment dimension does not match the model");
  if (!model.domain.contains(seg.a()) || !model.domain.contains(seg.b()))
    throw std::domain_error(
        "estimation: segment is not contained in the model domain");
}

double stencil_width(double step, double x) {
  return step * (1.0 + std::abs(x));
}

/// Stencil center and half-width on one axis, shifted inward so that
/// [center - half, center + half] stays within [lo, hi].
struct AxisStencil {
  double center;
  double half;
};

AxisStencil shifted_stencil(double x, double half, double lo, double hi) {
  if (hi - lo < 2.0 * half) return {0.5 * (lo + hi), 0.5 * (hi - lo)};
  return {std::clamp(x, lo + half, hi - half), half};
}

Vec<double> analytic_gradient(const FunctionModel& model,
                              const Vec<double>& x) {
  Vec<double> g = model.grad(x);
  if (g.size() != model.dim || !detail::admissible(g))
    throw EvaluationError("model gradient returned a non-finite value", x);
  return g;
}

Mat<double> analytic_hessian(const FunctionModel& model, const Vec<double>& x) {
  Mat<double> h = model.hess(x);
  if (h.rows() != model.dim || h.cols() != model.dim || !detail::admissible(h))
    throw EvaluationError("model Hessian returned a non-finite value", x);
  return Mat<double>((h + h.transpose()) / 2.0);
}

Mat<double> fd_hessian_shifted(const FunctionModel& model, const Vec<double>& x,
                               double step) {
  const Eigen::Index n = x.size();
  const auto& lo = model.domain.lower();
  const auto& hi = model.domain.upper();
  std::vector<AxisStencil> st(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    st[static_cast<std::size_t>(i)] =
        shifted_stencil(x(i), stencil_width(step, x(i)), lo(i), hi(i));

  Mat<double> h(n, n);
  Vec<double> p = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const AxisStencil si = st[static_cast<std::size_t>(i)];
    if (si.half == 0.0) {
      h.row(i).setZero();
      h.col(i).setZero();
      continue;
    }
    p(i) = si.center - si.half;
    const double fm = model(p);
    p(i) = si.center;
    const double fc = model(p);
    p(i) = si.center + si.half;
    const double fp = model(p);
    p(i) = x(i);
    h(i, i) = (fp - 2.0 * fc + fm) / (si.half * si.half);

    for (Eigen::Index j = i + 1; j < n; ++j) {
      const AxisStencil sj = st[static_cast<std::size_t>(j)];
      if (sj.half == 0.0) {
        h(i, j) = 0.0;
        h(j, i) = 0.0;
        continue;
      }
      double quad = 0.0;
      for (int a : {1, -1}) {
        for (int b : {1, -1}) {
          p(i) = si.center + a * si.half;
          p(j) = sj.center + b * sj.half;
          quad += a * b * model(p);
        }
      }
      p(i) = x(i);
      p(j) = x(j);
      const double v = quad / (4.0 * si.half * sj.half);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  if (!detail::admissible(h))
    throw EvaluationError("finite-difference Hessian is non-finite", x);
  return h;
}

/// Calls fn(x) for every sample point of the box grid: the full tensor grid
/// up to four dimensions, seeded Latin-hypercube-style sampling capped at
/// 1e6 points above that.
template <typename Fn>
void for_each_grid_point(const BoxDomain<double>& box,
                         const EstimationConfig& cfg, Fn&& fn) {
  const Eigen::Index n = box.dim();
  const Eigen::Index g = cfg.grid_points_per_axis;
  const Vec<double>& lo = box.lower();
  const Vec<double> w = box.width();

  if (n <= 4) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n), 0);
    Vec<double> x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = lo(i);
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

  const double requested = std::pow(static_cast<double>(g),
                                    static_cast<double>(n));
  const std::uint64_t count =
      requested > 1e6 ? 1000000u : static_cast<std::uint64_t>(requested);

  std::uint64_t state = cfg.sample_seed;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };

  std::vector<std::vector<std::uint32_t>> perm(static_cast<std::size_t>(n));
  for (auto& p : perm) {
    p.resize(count);
    for (std::uint64_t k = 0; k < count; ++k)
      p[k] = static_cast<std::uint32_t>(k);
    for (std::uint64_t k = count - 1; k > 0; --k)
      std::swap(p[k], p[next() % (k + 1)]);
  }

  Vec<double> x(n);
  for (std::uint64_t k = 0; k < count; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double stratum = perm[static_cast<std::size_t>(i)][k] + 0.5;
      x(i) = lo(i) + stratum * w(i) / static_cast<double>(count);
    }
    fn(x);
  }
}

template <typename Fn>
void for_each_segment_point(const Segment<double>& seg,
                            const EstimationConfig& cfg, Fn&& fn) {
  const Eigen::Index s = cfg.segment_samples;
  for (Eigen::Index k = 0; k < s; ++k) {
    const double gamma =
        static_cast<double>(k) / static_cast<double>(s - 1);
    fn(point_at(seg, gamma));
  }
}

Vec<double> inflate_lo(const Vec<double>& v, double inflation) {
  return (v.array() - inflation * (1.0 + v.array().abs())).matrix();
}

Vec<double> inflate_hi(const Vec<double>& v, double inflation) {
  return (v.array() + inflation * (1.0 + v.array().abs())).matrix();
}

Mat<double> inflate_lo(const Mat<double>& v, double inflation) {
  return (v.array() - inflation * (1.0 + v.array().abs())).matrix();
}

Mat<double> inflate_hi(const Mat<double>& v, double inflation) {
  return (v.array() + inflation * (1.0 + v.array().abs())).matrix();
}

template <typename PointRange>
LipschitzBox<double> kappa_from_samples(const FunctionModel& model,
                                        const EstimationConfig& cfg,
                                        PointRange&& for_each) {
  const double inf = std::numeric_limits<double>::infinity();
  Vec<double> lo = Vec<double>::Constant(model.dim, inf);
  Vec<double> hi = Vec<double>::Constant(model.dim, -inf);
  for_each([&](const Vec<double>& x) {
    const Vec<double> g = detail::sample_gradient(model, x, cfg.fd_step);
    lo = lo.cwiseMin(g);
    hi = hi.cwiseMax(g);
  });
  return LipschitzBox<double>(inflate_lo(lo, cfg.inflation),
                              inflate_hi(hi, cfg.inflation),
                              cfg.inflation > 0.0);
}

template <typename PointRange>
CurvatureBox<double> m_from_samples(const FunctionModel& model,
                                    const EstimationConfig& cfg,
                                    PointRange&& for_each) {
  const double inf = std::numeric_limits<double>::infinity();
  Mat<double> lo = Mat<double>::Constant(model.dim, model.dim, inf);
  Mat<double> hi = Mat<double>::Constant(model.dim, model.dim, -inf);
  for_each([&](const Vec<double>& x) {
    const Mat<double> h = detail::sample_hessian(model, x, cfg.fd_step);
    lo = lo.cwiseMin(h);
    hi = hi.cwiseMax(h);
  });
  return CurvatureBox<double>(inflate_lo(lo, cfg.inflation),
                              inflate_hi(hi, cfg.inflation),
                              cfg.inflation > 0.0);
}

}  // namespace

namespace detail {

Vec<double> sample_gradient(const FunctionModel& model, const Vec<double>& x,
                            double step) {
  if (model.has_grad()) return analytic_gradient(model, x);
  const Eigen::Index n = x.size();
  const auto& lo = model.domain.lower();
  const auto& hi = model.domain.upper();
  Vec<double> g(n);
  Vec<double> p = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = stencil_width(step, x(i));
    const double up = std::min(x(i) + h, hi(i));
    const double dn = std::max(x(i) - h, lo(i));
    if (up == dn) {
      g(i) = 0.0;
      continue;
    }
    p(i) = up;
    const double fp = model(p);
    p(i) = dn;
    const double fm = model(p);
    p(i) = x(i);
    g(i) = (fp - fm) / (up - dn);
  }
  if (!admissible(g))
    throw EvaluationError("finite-difference gradient is non-finite", x);
  return g;
}

Mat<double> sample_hessian(const FunctionModel& model, const Vec<double>& x,
                           double step) {
  if (model.has_hess()) return analytic_hessian(model, x);
  return fd_hessian_shifted(model, x, step);
}

}  // namespace detail

LipschitzBox<double> estimate_kappa(const FunctionModel& model,
                                    const BoxDomain<double>& box,
                                    const EstimationConfig& cfg) {
  check_cfg(cfg);
  check_box_in_domain(model, box);
  return kappa_from_samples(model, cfg, [&](auto&& fn) {
    for_each_grid_point(box, cfg, fn);
  });
}

CurvatureBox<double> estimate_M(const FunctionModel& model,
                                const BoxDomain<double>& box,
                                const EstimationConfig& cfg) {
  check_cfg(cfg);
  check_box_in_domain(model, box);
  return m_from_samples(model, cfg, [&](auto&& fn) {
    for_each_grid_point(box, cfg, fn);
  });
}

LipschitzBox<double> estimate_segment_kappa(const FunctionModel& model,
                                            const Segment<double>& seg,
                                            const EstimationConfig& cfg) {
  check_cfg(cfg);
  check_segment_in_domain(model, seg);
  return kappa_from_samples(model, cfg, [&](auto&& fn) {
    for_each_segment_point(seg, cfg, fn);
  });
}

CurvatureBox<double> estimate_segment_M(const FunctionModel& model,
                                        const Segment<double>& seg,
                                        const EstimationConfig& cfg) {
  check_cfg(cfg);
  check_segment_in_domain(model, seg);
  return m_from_samples(model, cfg, [&](auto&& fn) {
    for_each_segment_point(seg, cfg, fn);
  });
}

Vec<double> fd_gradient(const FunctionModel& model, const Vec<double>& x,
                        double step) {
  detail::require(x.size() == model.dim,
                  "fd_gradient: point dimension does not match the model");
  detail::require(std::isfinite(step) && step > 0.0,
                  "fd_gradient: step must be positive");
  const Eigen::Index n = x.size();
  const auto& lo = model.domain.lower();
  const auto& hi = model.domain.upper();
  Vec<double> g(n);
  Vec<double> p = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = stencil_width(step, x(i));
    if (x(i) - h < lo(i) || x(i) + h > hi(i))
      throw std::domain_error("fd_gradient: stencil leaves the model domain");
    p(i) = x(i) + h;
    const double fp = model(p);
    p(i) = x(i) - h;
    const double fm = model(p);
    p(i) = x(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  if (!detail::admissible(g))
    throw EvaluationError("finite-difference gradient is non-finite", x);
  return g;
}

Mat<double> fd_hessian(const FunctionModel& model, const Vec<double>& x,
                       double step) {
  detail::require(x.size() == model.dim,
                  "fd_hessian: point dimension does not match the model");
  detail::require(std::isfinite(step) && step > 0.0,
                  "fd_hessian: step must be positive");
  const auto& lo = model.domain.lower();
  const auto& hi = model.domain.upper();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = stencil_width(step, x(i));
    if (x(i) - h < lo(i) || x(i) + h > hi(i))
      throw std::domain_error("fd_hessian: stencil leaves the model domain");
  }
  return fd_hessian_shifted(model, x, step);
}

}  // namespace lipbound
