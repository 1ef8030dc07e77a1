#ifndef LIPBOUND_ESTIMATION_HPP
#define LIPBOUND_ESTIMATION_HPP

#include <cstdint>

#include "lipbound/types.hpp"

namespace lipbound {

/// Sampling and finite-difference settings for constant estimation.
/// Estimated constants are empirical, not certified: they bound the
/// derivatives seen on a finite sample, widened by `inflation`.
struct EstimationConfig {
  /// Grid resolution per axis, at least 2.
  Eigen::Index grid_points_per_axis = 33;
  /// Relative step; the stencil half-width on axis i is fd_step * (1 + |x_i|).
  double fd_step = 1e-5;
  /// Relative margin: each endpoint e is widened by inflation * (1 + |e|).
  double inflation = 1e-3;
  /// Samples along a segment, at least 2, endpoints included.
  Eigen::Index segment_samples = 257;
  /// Seed for the stratified sampler used above four dimensions.
  std::uint64_t sample_seed = 2024;
};

/// Per-axis extremes of the gradient over `box`, widened by cfg.inflation.
/// Uses the full tensor grid up to four dimensions and seeded
/// Latin-hypercube-style sampling capped at 1e6 points above that.
LipschitzBox<double> estimate_kappa(const FunctionModel& model,
                                    const BoxDomain<double>& box,
                                    const EstimationConfig& cfg = {});

/// Entrywise extremes of the Hessian over `box`, widened by cfg.inflation.
/// Each sampled Hessian is symmetrized by averaging before the extremes.
CurvatureBox<double> estimate_M(const FunctionModel& model,
                                const BoxDomain<double>& box,
                                const EstimationConfig& cfg = {});

/// Gradient extremes over cfg.segment_samples points x(k/(S-1)) on `seg`.
LipschitzBox<double> estimate_segment_kappa(const FunctionModel& model,
                                            const Segment<double>& seg,
                                            const EstimationConfig& cfg = {});

/// Hessian extremes over cfg.segment_samples points on `seg`.
CurvatureBox<double> estimate_segment_M(const FunctionModel& model,
                                        const Segment<double>& seg,
                                        const EstimationConfig& cfg = {});

/// Central-difference gradient with half-width step * (1 + |x_i|) per axis.
/// The whole stencil must lie inside model.domain.
Vec<double> fd_gradient(const FunctionModel& model, const Vec<double>& x,
                        double step);

/// Central-difference Hessian, exactly symmetric by construction.
/// The whole stencil must lie inside model.domain.
Mat<double> fd_hessian(const FunctionModel& model, const Vec<double>& x,
                       double step);

namespace detail {

/// model.grad when present, otherwise central differences with the stencil
/// shifted inward so it never leaves model.domain.
Vec<double> sample_gradient(const FunctionModel& model, const Vec<double>& x,
                            double step);

/// model.hess (symmetrized) when present, otherwise shifted-stencil central
/// differences; always exactly symmetric.
Mat<double> sample_hessian(const FunctionModel& model, const Vec<double>& x,
                           double step);

}  // namespace detail

}  // namespace lipbound

#endif  // LIPBOUND_ESTIMATION_HPP
