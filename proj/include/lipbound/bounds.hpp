#ifndef LIPBOUND_BOUNDS_HPP
#define LIPBOUND_BOUNDS_HPP

#include <algorithm>
#include <cmath>

#include "lipbound/types.hpp"

// Certified bounds on f(x_b) - f(x_a) for C^2 functions, stated in terms of
// interval bounds on the first or second partial derivatives along the
// segment. Each term is the min (or max) of the two products of a derivative
// bound with the displacement, which covers both displacement signs in a
// single code path. The same four general forms serve as the segment-local
// variants; locality is purely a property of where the supplied constants are
// valid.

namespace lipbound {

namespace detail {

template <typename Scalar>
void check_dim(const Segment<Scalar>& seg, Eigen::Index n, const char* op) {
  require(seg.dim() == n, std::string(op) + ": dimension mismatch");
}

template <typename Derived>
void check_nonnegative(const Eigen::MatrixBase<Derived>& m, const char* op) {
  require(m.size() > 0 && (m.array() >= typename Derived::Scalar(0)).all(),
          std::string(op) + ": constants must be nonnegative");
  require(admissible(m), std::string(op) + ": constants must be finite and below magnitude cap");
}

template <typename Derived>
void check_symmetric(const Eigen::MatrixBase<Derived>& m, const char* op) {
  require(m.rows() == m.cols() && m.derived() == m.derived().transpose(),
          std::string(op) + ": matrix must be symmetric");
}

}  // namespace detail

/// Lower bound on f(b) - f(a): sum_i min(lo_i d_i, hi_i d_i), d = b - a.
template <typename Scalar>
Scalar linear_lower(const Segment<Scalar>& seg, const LipschitzBox<Scalar>& k) {
  detail::check_dim(seg, k.dim(), "linear_lower");
  Scalar acc = 0;
  for (Eigen::Index i = 0; i < seg.dim(); ++i) {
    const Scalar d = seg.b()[i] - seg.a()[i];
    acc += std::min(k.lo()[i] * d, k.hi()[i] * d);
  }
  return acc;
}

/// Upper bound on f(b) - f(a): sum_i max(lo_i d_i, hi_i d_i).
template <typename Scalar>
Scalar linear_upper(const Segment<Scalar>& seg, const LipschitzBox<Scalar>& k) {
  detail::check_dim(seg, k.dim(), "linear_upper");
  Scalar acc = 0;
  for (Eigen::Index i = 0; i < seg.dim(); ++i) {
    const Scalar d = seg.b()[i] - seg.a()[i];
    acc += std::max(k.lo()[i] * d, k.hi()[i] * d);
  }
  return acc;
}

/// Lower bound on f(b) - f(a) using the gradient at a and curvature
/// intervals: grad_a . d + 1/2 sum_ij min(lo_ij d_i d_j, hi_ij d_i d_j).
/// The gradient is an explicit argument so measured or estimated gradients
/// can be used in place of an analytic one.
template <typename Scalar, typename Derived>
Scalar quadratic_lower(const Segment<Scalar>& seg,
                       const Eigen::MatrixBase<Derived>& grad_a,
                       const CurvatureBox<Scalar>& m) {
  detail::check_dim(seg, m.dim(), "quadratic_lower");
  detail::require(grad_a.size() == seg.dim() && detail::admissible(grad_a),
                  "quadratic_lower: bad gradient");
  const Eigen::Index n = seg.dim();
  Scalar lin = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    lin += grad_a[i] * (seg.b()[i] - seg.a()[i]);
  Scalar quad = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar di = seg.b()[i] - seg.a()[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      const Scalar p = di * (seg.b()[j] - seg.a()[j]);
      quad += std::min(m.lo()(i, j) * p, m.hi()(i, j) * p);
    }
  }
  return lin + Scalar(0.5) * quad;
}

/// Mirror of quadratic_lower with max in place of min.
template <typename Scalar, typename Derived>
Scalar quadratic_upper(const Segment<Scalar>& seg,
                       const Eigen::MatrixBase<Derived>& grad_a,
                       const CurvatureBox<Scalar>& m) {
  detail::check_dim(seg, m.dim(), "quadratic_upper");
  detail::require(grad_a.size() == seg.dim() && detail::admissible(grad_a),
                  "quadratic_upper: bad gradient");
  const Eigen::Index n = seg.dim();
  Scalar lin = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    lin += grad_a[i] * (seg.b()[i] - seg.a()[i]);
  Scalar quad = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar di = seg.b()[i] - seg.a()[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      const Scalar p = di * (seg.b()[j] - seg.a()[j]);
      quad += std::max(m.lo()(i, j) * p, m.hi()(i, j) * p);
    }
  }
  return lin + Scalar(0.5) * quad;
}

/// -sum_i kappa_i |d_i| with kappa_i >= 0.
template <typename Scalar, typename Derived>
Scalar symmetric_linear_lower(const Segment<Scalar>& seg,
                              const Eigen::MatrixBase<Derived>& k_sym) {
  detail::check_dim(seg, k_sym.size(), "symmetric_linear_lower");
  detail::check_nonnegative(k_sym, "symmetric_linear_lower");
  Scalar acc = 0;
  for (Eigen::Index i = 0; i < seg.dim(); ++i)
    acc += k_sym[i] * std::abs(seg.b()[i] - seg.a()[i]);
  return -acc;
}

/// +sum_i kappa_i |d_i|.
template <typename Scalar, typename Derived>
Scalar symmetric_linear_upper(const Segment<Scalar>& seg,
                              const Eigen::MatrixBase<Derived>& k_sym) {
  detail::check_dim(seg, k_sym.size(), "symmetric_linear_upper");
  detail::check_nonnegative(k_sym, "symmetric_linear_upper");
  Scalar acc = 0;
  for (Eigen::Index i = 0; i < seg.dim(); ++i)
    acc += k_sym[i] * std::abs(seg.b()[i] - seg.a()[i]);
  return acc;
}

/// grad_a . d - 1/2 sum_ij M_ij |d_i d_j| with M symmetric, M_ij >= 0.
template <typename Scalar, typename DerivedG, typename DerivedM>
Scalar symmetric_quadratic_lower(const Segment<Scalar>& seg,
                                 const Eigen::MatrixBase<DerivedG>& grad_a,
                                 const Eigen::MatrixBase<DerivedM>& m_sym) {
  detail::check_dim(seg, m_sym.rows(), "symmetric_quadratic_lower");
  detail::check_symmetric(m_sym, "symmetric_quadratic_lower");
  detail::check_nonnegative(m_sym, "symmetric_quadratic_lower");
  detail::require(grad_a.size() == seg.dim() && detail::admissible(grad_a),
                  "symmetric_quadratic_lower: bad gradient");
  const Eigen::Index n = seg.dim();
  Scalar lin = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    lin += grad_a[i] * (seg.b()[i] - seg.a()[i]);
  Scalar quad = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar di = seg.b()[i] - seg.a()[i];
    for (Eigen::Index j = 0; j < n; ++j)
      quad += m_sym(i, j) * std::abs(di * (seg.b()[j] - seg.a()[j]));
  }
  return lin - Scalar(0.5) * quad;
}

/// grad_a . d + 1/2 sum_ij M_ij |d_i d_j|.
template <typename Scalar, typename DerivedG, typename DerivedM>
Scalar symmetric_quadratic_upper(const Segment<Scalar>& seg,
                                 const Eigen::MatrixBase<DerivedG>& grad_a,
                                 const Eigen::MatrixBase<DerivedM>& m_sym) {
  detail::check_dim(seg, m_sym.rows(), "symmetric_quadratic_upper");
  detail::check_symmetric(m_sym, "symmetric_quadratic_upper");
  detail::check_nonnegative(m_sym, "symmetric_quadratic_upper");
  detail::require(grad_a.size() == seg.dim() && detail::admissible(grad_a),
                  "symmetric_quadratic_upper: bad gradient");
  const Eigen::Index n = seg.dim();
  Scalar lin = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    lin += grad_a[i] * (seg.b()[i] - seg.a()[i]);
  Scalar quad = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar di = seg.b()[i] - seg.a()[i];
    for (Eigen::Index j = 0; j < n; ++j)
      quad += m_sym(i, j) * std::abs(di * (seg.b()[j] - seg.a()[j]));
  }
  return lin + Scalar(0.5) * quad;
}

/// kappa = max_i kappa_i, the single constant for the 1-norm bounds.
template <typename Derived>
typename Derived::Scalar kappa_norm(const Eigen::MatrixBase<Derived>& k_sym) {
  detail::check_nonnegative(k_sym, "kappa_norm");
  return k_sym.maxCoeff();
}

/// M = max_i sum_j M_ij, the single constant for the 2-norm bounds.
template <typename Derived>
typename Derived::Scalar m_norm(const Eigen::MatrixBase<Derived>& m_sym) {
  detail::check_symmetric(m_sym, "m_norm");
  detail::check_nonnegative(m_sym, "m_norm");
  return m_sym.rowwise().sum().maxCoeff();
}

/// -kappa ||d||_1.
template <typename Scalar>
Scalar norm_linear_lower(const Segment<Scalar>& seg, Scalar kappa) {
  detail::require(
      kappa >= Scalar(0) && kappa <= Scalar(kMagnitudeCap),
      "norm_linear_lower: kappa must be nonnegative and below the cap");
  return -(kappa * (seg.b() - seg.a()).template lpNorm<1>());
}

/// +kappa ||d||_1.
template <typename Scalar>
Scalar norm_linear_upper(const Segment<Scalar>& seg, Scalar kappa) {
  detail::require(
      kappa >= Scalar(0) && kappa <= Scalar(kMagnitudeCap),
      "norm_linear_upper: kappa must be nonnegative and below the cap");
  return kappa * (seg.b() - seg.a()).template lpNorm<1>();
}

/// grad_a . d - 1/2 M ||d||_2^2.
template <typename Scalar, typename Derived>
Scalar norm_quadratic_lower(const Segment<Scalar>& seg,
                            const Eigen::MatrixBase<Derived>& grad_a,
                            Scalar big_m) {
  detail::require(
      big_m >= Scalar(0) && big_m <= Scalar(kMagnitudeCap),
      "norm_quadratic_lower: M must be nonnegative and below the cap");
  detail::require(grad_a.size() == seg.dim() && detail::admissible(grad_a),
                  "norm_quadratic_lower: bad gradient");
  Scalar lin = 0;
  for (Eigen::Index i = 0; i < seg.dim(); ++i)
    lin += grad_a[i] * (seg.b()[i] - seg.a()[i]);
  return lin - Scalar(0.5) * big_m * (seg.b() - seg.a()).squaredNorm();
}

/// grad_a . d + 1/2 M ||d||_2^2.
template <typename Scalar, typename Derived>
Scalar norm_quadratic_upper(const Segment<Scalar>& seg,
                            const Eigen::MatrixBase<Derived>& grad_a,
                            Scalar big_m) {
  detail::require(
      big_m >= Scalar(0) && big_m <= Scalar(kMagnitudeCap),
      "norm_quadratic_upper: M must be nonnegative and below the cap");
  detail::require(grad_a.size() == seg.dim() && detail::admissible(grad_a),
                  "norm_quadratic_upper: bad gradient");
  Scalar lin = 0;
  for (Eigen::Index i = 0; i < seg.dim(); ++i)
    lin += grad_a[i] * (seg.b()[i] - seg.a()[i]);
  return lin + Scalar(0.5) * big_m * (seg.b() - seg.a()).squaredNorm();
}

}  // namespace lipbound

#endif  // LIPBOUND_BOUNDS_HPP
