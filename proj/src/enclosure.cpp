#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lipbound/solver.hpp"

namespace lipbound {
namespace {

void check_anchor(const Vec<double>& anchor, const BoxDomain<double>& box,
                  double f_at_anchor) {
  detail::require(anchor.size() == box.dim(),
                  "enclosure: anchor dimension does not match the box");
  detail::require(std::isfinite(f_at_anchor) &&
                      std::abs(f_at_anchor) <= kMagnitudeCap,
                  "enclosure: f_at_anchor must be finite");
  if (!box.contains(anchor))
    throw std::domain_error("enclosure: anchor lies outside the box");
}

double lo_term(double c_lo, double c_hi, double p_lo, double p_hi) {
  return std::min(std::min(c_lo * p_lo, c_hi * p_lo),
                  std::min(c_lo * p_hi, c_hi * p_hi));
}

double hi_term(double c_lo, double c_hi, double p_lo, double p_hi) {
  return std::max(std::max(c_lo * p_lo, c_hi * p_lo),
                  std::max(c_lo * p_hi, c_hi * p_hi));
}

}  // namespace

Enclosure enclose_linear(double f_at_anchor, const Vec<double>& anchor,
                         const BoxDomain<double>& box,
                         const LipschitzBox<double>& k) {
  check_anchor(anchor, box, f_at_anchor);
  detail::require(k.dim() == box.dim(),
                  "enclose_linear: constants dimension does not match the box");
  double lo = 0.0;
  double hi = 0.0;
  Vec<double> witness = anchor;
  for (Eigen::Index i = 0; i < box.dim(); ++i) {
    const double d_lo = box.lower()(i) - anchor(i);
    const double d_hi = box.upper()(i) - anchor(i);
    const double at_lo = std::min(k.lo()(i) * d_lo, k.hi()(i) * d_lo);
    const double at_hi = std::min(k.lo()(i) * d_hi, k.hi()(i) * d_hi);
    lo += std::min(at_lo, at_hi);
    hi += hi_term(k.lo()(i), k.hi()(i), d_lo, d_hi);
    witness(i) = at_lo <= at_hi ? box.lower()(i) : box.upper()(i);
  }
  return Enclosure{f_at_anchor + lo, f_at_anchor + hi, std::move(witness),
                   anchor};
}

Enclosure enclose_quadratic(double f_at_anchor,
                            const Vec<double>& grad_at_anchor,
                            const Vec<double>& anchor,
                            const BoxDomain<double>& box,
                            const CurvatureBox<double>& m) {
  check_anchor(anchor, box, f_at_anchor);
  detail::require(m.dim() == box.dim(),
                  "enclose_quadratic: constants dimension does not match the box");
  detail::require(grad_at_anchor.size() == box.dim(),
                  "enclose_quadratic: gradient dimension does not match the box");
  detail::require(detail::admissible(grad_at_anchor),
                  "enclose_quadratic: gradient must be finite");

  const Eigen::Index n = box.dim();
  double lo = 0.0;
  double hi = 0.0;
  Vec<double> witness = anchor;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d_lo = box.lower()(i) - anchor(i);
    const double d_hi = box.upper()(i) - anchor(i);
    const double g = grad_at_anchor(i);
    lo += std::min(g * d_lo, g * d_hi);
    hi += std::max(g * d_lo, g * d_hi);
    witness(i) = g * d_lo <= g * d_hi ? box.lower()(i) : box.upper()(i);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const double di_lo = box.lower()(i) - anchor(i);
    const double di_hi = box.upper()(i) - anchor(i);
    for (Eigen::Index j = 0; j < n; ++j) {
      double p_lo;
      double p_hi;
      if (i == j) {
        p_lo = 0.0;
        p_hi = std::max(di_lo * di_lo, di_hi * di_hi);
      } else {
        const double dj_lo = box.lower()(j) - anchor(j);
        const double dj_hi = box.upper()(j) - anchor(j);
        p_lo = lo_term(di_lo, di_hi, dj_lo, dj_hi);
        p_hi = hi_term(di_lo, di_hi, dj_lo, dj_hi);
      }
      lo += 0.5 * lo_term(m.lo()(i, j), m.hi()(i, j), p_lo, p_hi);
      hi += 0.5 * hi_term(m.lo()(i, j), m.hi()(i, j), p_lo, p_hi);
    }
  }
  return Enclosure{f_at_anchor + lo, f_at_anchor + hi, std::move(witness),
                   anchor};
}

}  // namespace lipbound
