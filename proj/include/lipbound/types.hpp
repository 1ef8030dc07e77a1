#ifndef LIPBOUND_TYPES_HPP
#define LIPBOUND_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace lipbound {

template <typename Scalar>
using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Largest admissible magnitude for coordinates and derivative constants.
/// Anything larger could push the bound products outside double range.
inline constexpr double kMagnitudeCap = 1e150;

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

template <typename Derived>
bool admissible(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return true;
  return m.allFinite() &&
         m.derived().cwiseAbs().maxCoeff() <=
             static_cast<typename Derived::Scalar>(kMagnitudeCap);
}

}  // namespace detail

/// Thrown when a model evaluation produces a non-finite value; carries the
/// offending point.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(std::string what, Vec<double> point)
      : std::runtime_error(std::move(what)), point_(std::move(point)) {}

  const Vec<double>& point() const noexcept { return point_; }

 private:
  Vec<double> point_;
};

/// Axis-aligned box, the concrete compact set the bounds are stated over.
template <typename Scalar>
class BoxDomain {
 public:
  BoxDomain(Vec<Scalar> lower, Vec<Scalar> upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {
    detail::require(lower_.size() >= 1, "BoxDomain: dimension must be >= 1");
    detail::require(lower_.size() == upper_.size(),
                    "BoxDomain: lower/upper dimension mismatch");
    detail::require(detail::admissible(lower_) && detail::admissible(upper_),
                    "BoxDomain: bounds must be finite and below magnitude cap");
    detail::require((lower_.array() <= upper_.array()).all(),
                    "BoxDomain: requires lower_i <= upper_i");
  }

  Eigen::Index dim() const noexcept { return lower_.size(); }
  const Vec<Scalar>& lower() const noexcept { return lower_; }
  const Vec<Scalar>& upper() const noexcept { return upper_; }

  Vec<Scalar> width() const { return upper_ - lower_; }
  Vec<Scalar> center() const { return (lower_ + upper_) / Scalar(2); }

  bool contains(const Vec<Scalar>& x, Scalar tol = Scalar(0)) const {
    if (x.size() != dim()) return false;
    return (x.array() >= lower_.array() - tol).all() &&
           (x.array() <= upper_.array() + tol).all();
  }

 private:
  Vec<Scalar> lower_;
  Vec<Scalar> upper_;
};

/// Ordered pair of points with the line parameterization
/// x(gamma) = a + gamma (b - a), gamma in [0, 1].
template <typename Scalar>
class Segment {
 public:
  Segment(Vec<Scalar> a, Vec<Scalar> b) : a_(std::move(a)), b_(std::move(b)) {
    detail::require(a_.size() >= 1, "Segment: dimension must be >= 1");
    detail::require(a_.size() == b_.size(), "Segment: endpoint dimension mismatch");
    detail::require(detail::admissible(a_) && detail::admissible(b_),
                    "Segment: endpoints must be finite and below magnitude cap");
  }

  Eigen::Index dim() const noexcept { return a_.size(); }
  const Vec<Scalar>& a() const noexcept { return a_; }
  const Vec<Scalar>& b() const noexcept { return b_; }

  /// Displacement b - a.
  Vec<Scalar> delta() const { return b_ - a_; }

 private:
  Vec<Scalar> a_;
  Vec<Scalar> b_;
};

/// x(gamma) = a + gamma (b - a). gamma outside [0, 1] is a domain error.
template <typename Scalar>
Vec<Scalar> point_at(const Segment<Scalar>& seg, Scalar gamma) {
  if (!(gamma >= Scalar(0) && gamma <= Scalar(1)))
    throw std::domain_error("point_at: gamma must lie in [0, 1]");
  return seg.a() + gamma * (seg.b() - seg.a());
}

/// Per-coordinate interval bounds on the first partial derivatives over a
/// region. `strict` records whether the underlying inequalities are strict
/// (open intervals); exact suprema are the natural input, so closed intervals
/// with strict=false are the default.
template <typename Scalar>
class LipschitzBox {
 public:
  LipschitzBox(Vec<Scalar> lo, Vec<Scalar> hi, bool strict = false)
      : lo_(std::move(lo)), hi_(std::move(hi)), strict_(strict) {
    detail::require(lo_.size() >= 1, "LipschitzBox: dimension must be >= 1");
    detail::require(lo_.size() == hi_.size(),
                    "LipschitzBox: lo/hi dimension mismatch");
    detail::require(detail::admissible(lo_) && detail::admissible(hi_),
                    "LipschitzBox: entries must be finite and below magnitude cap");
    detail::require((lo_.array() <= hi_.array()).all(),
                    "LipschitzBox: requires lo_i <= hi_i");
  }

  Eigen::Index dim() const noexcept { return lo_.size(); }
  const Vec<Scalar>& lo() const noexcept { return lo_; }
  const Vec<Scalar>& hi() const noexcept { return hi_; }
  bool strict() const noexcept { return strict_; }

  /// Widens every endpoint outward by `margin`. A positive margin turns
  /// exact extremes into strict bounds, so the result is marked strict.
  LipschitzBox inflated(Scalar margin) const {
    detail::require(std::isfinite(margin) && margin >= Scalar(0),
                    "LipschitzBox: margin must be nonnegative and finite");
    return LipschitzBox((lo_.array() - margin).matrix(),
                        (hi_.array() + margin).matrix(),
                        strict_ || margin > Scalar(0));
  }

 private:
  Vec<Scalar> lo_;
  Vec<Scalar> hi_;
  bool strict_;
};

/// Per-pair interval bounds on the second partial derivatives. Mixed partials
/// of a C^2 function are equal, so asymmetric input is rejected rather than
/// repaired.
template <typename Scalar>
class CurvatureBox {
 public:
  CurvatureBox(Mat<Scalar> lo, Mat<Scalar> hi, bool strict = false)
      : lo_(std::move(lo)), hi_(std::move(hi)), strict_(strict) {
    detail::require(lo_.rows() >= 1, "CurvatureBox: dimension must be >= 1");
    detail::require(lo_.rows() == lo_.cols() && hi_.rows() == hi_.cols() &&
                        lo_.rows() == hi_.rows(),
                    "CurvatureBox: lo/hi must be square and of equal size");
    detail::require(detail::admissible(lo_) && detail::admissible(hi_),
                    "CurvatureBox: entries must be finite and below magnitude cap");
    detail::require(lo_ == lo_.transpose() && hi_ == hi_.transpose(),
                    "CurvatureBox: entries must be symmetric in (i, j)");
    detail::require((lo_.array() <= hi_.array()).all(),
                    "CurvatureBox: requires lo_ij <= hi_ij");
  }

  Eigen::Index dim() const noexcept { return lo_.rows(); }
  const Mat<Scalar>& lo() const noexcept { return lo_; }
  const Mat<Scalar>& hi() const noexcept { return hi_; }
  bool strict() const noexcept { return strict_; }

  CurvatureBox inflated(Scalar margin) const {
    detail::require(std::isfinite(margin) && margin >= Scalar(0),
                    "CurvatureBox: margin must be nonnegative and finite");
    return CurvatureBox((lo_.array() - margin).matrix(),
                        (hi_.array() + margin).matrix(),
                        strict_ || margin > Scalar(0));
  }

 private:
  Mat<Scalar> lo_;
  Mat<Scalar> hi_;
  bool strict_;
};

/// kappa_i = max(|lo_i|, |hi_i|): the smallest symmetric constants implied by
/// a two-sided box, so that -kappa_i <= lo_i <= hi_i <= kappa_i.
template <typename Scalar>
Vec<Scalar> symmetric_kappa(const LipschitzBox<Scalar>& k) {
  return k.lo().cwiseAbs().cwiseMax(k.hi().cwiseAbs());
}

/// M_ij = max(|lo_ij|, |hi_ij|), the symmetric view of a CurvatureBox.
template <typename Scalar>
Mat<Scalar> symmetric_curvature(const CurvatureBox<Scalar>& m) {
  return m.lo().cwiseAbs().cwiseMax(m.hi().cwiseAbs());
}

/// A function together with what is known about it: an evaluator, optional
/// analytic gradient and Hessian, and the box the bounds are taken over.
/// Evaluators must be deterministic and reentrant.
struct FunctionModel {
  using EvalFn = std::function<double(const Vec<double>&)>;
  using GradFn = std::function<Vec<double>(const Vec<double>&)>;
  using HessFn = std::function<Mat<double>(const Vec<double>&)>;

  FunctionModel(Eigen::Index dim_, EvalFn eval_, BoxDomain<double> domain_,
                GradFn grad_ = nullptr, HessFn hess_ = nullptr)
      : dim(dim_),
        eval(std::move(eval_)),
        grad(std::move(grad_)),
        hess(std::move(hess_)),
        domain(std::move(domain_)) {
    detail::require(dim >= 1, "FunctionModel: dimension must be >= 1");
    detail::require(domain.dim() == dim, "FunctionModel: domain dimension mismatch");
    detail::require(static_cast<bool>(eval), "FunctionModel: eval is required");
  }

  bool has_grad() const noexcept { return static_cast<bool>(grad); }
  bool has_hess() const noexcept { return static_cast<bool>(hess); }

  /// Evaluates f and rejects non-finite results.
  double operator()(const Vec<double>& x) const {
    detail::require(x.size() == dim, "FunctionModel: point dimension mismatch");
    const double v = eval(x);
    if (!std::isfinite(v))
      throw EvaluationError("model evaluation returned a non-finite value", x);
    return v;
  }

  Eigen::Index dim;
  EvalFn eval;
  GradFn grad;
  HessFn hess;
  BoxDomain<double> domain;
};

}  // namespace lipbound

#endif  // LIPBOUND_TYPES_HPP
